#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sdmbc_core::channel::{Alphabets, SdmbcSpec};
use sdmbc_core::estimation::{DistortionMatrix, DistortionMeasure};
use sdmbc_core::prob::{Kernel, Pmf};

/// A random point of the probability simplex; some draws have exact zeros.
pub fn random_probs(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n)
        .map(|_| {
            if rng.random_bool(0.15) {
                0.0
            } else {
                rng.random::<f64>()
            }
        })
        .collect();
    if w.iter().all(|&v| v == 0.0) {
        w[rng.random_range(0..n)] = 1.0;
    }
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= total);
    w
}

pub fn random_pmf(rng: &mut impl Rng, n: usize) -> Pmf {
    Pmf::new(random_probs(rng, n)).unwrap()
}

/// A random channel with every alphabet of size at most `max`, random
/// kernel rows and random distortion matrices in `[0, 1)`.
pub fn random_spec(seed: u64, max: usize) -> SdmbcSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = |rng: &mut ChaCha8Rng| rng.random_range(1..=max);
    let a = Alphabets {
        x: size(&mut rng),
        y1: size(&mut rng),
        y2: size(&mut rng),
        z: size(&mut rng),
        s1: size(&mut rng),
        s2: size(&mut rng),
        shat1: size(&mut rng),
        shat2: size(&mut rng),
    };
    let state_law = random_pmf(&mut rng, a.s1 * a.s2);
    let width = a.y1 * a.y2 * a.z;
    let table: Vec<f64> = (0..a.s1 * a.s2 * a.x)
        .flat_map(|_| random_probs(&mut rng, width))
        .collect();
    let transition = Kernel::new(vec![a.s1, a.s2, a.x], vec![a.y1, a.y2, a.z], table).unwrap();
    let mut matrix = |states: usize, recon: usize| {
        let values = (0..states * recon).map(|_| rng.random::<f64>()).collect();
        DistortionMatrix::new(states, recon, values).unwrap()
    };
    let d = DistortionMeasure::new(matrix(a.s1, a.shat1), matrix(a.s2, a.shat2));
    SdmbcSpec::new(a, state_law, transition, d).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
