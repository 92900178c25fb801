//! Independent oracles for the acceptance suite: random channel generation,
//! a hand-derived case table for Dueck's BC, and membership in the multiplicative
//! BC region.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sdmbc_core::channel::{Alphabets, Receiver, SdmbcSpec};
use sdmbc_core::estimation::{DistortionMatrix, DistortionMeasure};
use sdmbc_core::prob::{Kernel, Pmf};
use sdmbc_core::regions::RegionPoint;

/// A random point of the probability simplex; about 15% of the cells are
/// exact zeros so that unreachable pairs and ties occur.
pub fn random_probs(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
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
    w.iter().map(|v| v / total).collect()
}

/// A random channel with every alphabet of size at most `max_size` and
/// random distortion matrices with entries in `[0, 1)`.
pub fn random_spec(rng: &mut ChaCha8Rng, max_size: usize) -> SdmbcSpec {
    let mut size = || rng.random_range(1..=max_size);
    let a = Alphabets {
        x: size(),
        y1: size(),
        y2: size(),
        z: size(),
        s1: size(),
        s2: size(),
        shat1: size(),
        shat2: size(),
    };
    let state_law = Pmf::new(random_probs(rng, a.s1 * a.s2)).expect("normalized");
    let width = a.y1 * a.y2 * a.z;
    let table: Vec<f64> = (0..a.s1 * a.s2 * a.x)
        .flat_map(|_| random_probs(rng, width))
        .collect();
    let transition =
        Kernel::new(vec![a.s1, a.s2, a.x], vec![a.y1, a.y2, a.z], table).expect("normalized rows");
    let mut matrix = |states: usize, recon: usize| {
        let values = (0..states * recon).map(|_| rng.random::<f64>()).collect();
        DistortionMatrix::new(states, recon, values).expect("finite entries")
    };
    let d = DistortionMeasure::new(matrix(a.s1, a.shat1), matrix(a.s2, a.shat2));
    SdmbcSpec::new(a, state_law, transition, d).expect("consistent shapes")
}

/// Seeded stream for reproducible suites.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Conditional distortion `d'_k((x1, x2), z)` on Dueck's BC from the
/// hand-derived case table, for feedback bits `z = (y'1, y'2)` and
/// `P_S(1) = p1` strictly between 0 and 1.
pub fn dueck_case_distortion(p1: f64, k: Receiver, x1: usize, x2: usize, z: (usize, usize)) -> f64 {
    let p0 = 1.0 - p1;
    let equal = x1 == x2;
    match z {
        (1, 1) => 0.0,
        (1, 0) => match k {
            Receiver::First => 0.0,
            Receiver::Second => p0.min(p1) * f64::from(u8::from(!equal)),
        },
        (0, 1) => match k {
            Receiver::First => p0.min(p1) * f64::from(u8::from(!equal)),
            Receiver::Second => 0.0,
        },
        _ if equal => 0.5 * (p0 * (1.0 + p0)).min(p1) / ((1.0 + p0 * p0) / 2.0),
        _ => 0.5 * p0 * (1.0 + p0).min(p1) / p0,
    }
}

/// `P(Y'1 = 0, Y'2 = 0 | x1, x2)` on Dueck's BC.
pub fn dueck_silent_feedback(p1: f64, x1: usize, x2: usize) -> f64 {
    let p0 = 1.0 - p1;
    if x1 == x2 {
        (1.0 + p0 * p0) / 2.0
    } else {
        p0
    }
}

/// Whether a point lies in the union of the multiplicative-BC regions.
///
/// Meeting both distortions needs `P(X = 1) >= p_min`; the rates then obey
/// `R1 / q + R2 / (gamma q) <= max_{p >= p_min} Hb(p)`.
pub fn inside_multiplicative_region(f: &RegionPoint, q: f64, gamma: f64, tol: f64) -> bool {
    let p_min = (1.0 - f.d1 / q.min(1.0 - q)).max(1.0 - f.d2 / (gamma * q).min(1.0 - gamma * q));
    let p = p_min.clamp(0.5, 1.0);
    let h = if p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    };
    f.r1 / q + f.r2 / (gamma * q) <= h + tol
}

/// Max-coordinate distance between two region points.
pub fn distance(a: &RegionPoint, b: &RegionPoint) -> f64 {
    (a.r1 - b.r1)
        .abs()
        .max((a.r2 - b.r2).abs())
        .max((a.d1 - b.d1).abs())
        .max((a.d2 - b.d2).abs())
}

/// `a` beats `b` in every coordinate up to `tol` and by more than `margin`
/// in at least one.
pub fn strictly_dominates(a: &RegionPoint, b: &RegionPoint, tol: f64, margin: f64) -> bool {
    let weak = a.r1 >= b.r1 - tol && a.r2 >= b.r2 - tol && a.d1 <= b.d1 + tol && a.d2 <= b.d2 + tol;
    let strict = a.r1 > b.r1 + margin
        || a.r2 > b.r2 + margin
        || a.d1 < b.d1 - margin
        || a.d2 < b.d2 - margin;
    weak && strict
}
