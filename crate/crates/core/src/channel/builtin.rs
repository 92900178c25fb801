//! The example channels: multiplicative and flipping binary BCs with output
//! feedback, the erasure BC with noisy feedback, and Dueck's BC with states.

use super::{Alphabets, SdmbcSpec};
use crate::error::{check_unit, Error, Result};
use crate::estimation::{DistortionMatrix, DistortionMeasure};
use crate::prob::{Kernel, Pmf};

/// `P(s1, s2)` of the binary examples, row-major over `(s1, s2)`:
/// `(0,0) -> 1-q`, `(0,1) -> 0`, `(1,0) -> q(1-gamma)`, `(1,1) -> q gamma`.
pub fn binary_state_law(q: f64, gamma: f64) -> Result<Pmf> {
    let q = check_unit("q", q)?;
    let gamma = check_unit("gamma", gamma)?;
    Pmf::new(vec![1.0 - q, 0.0, q * (1.0 - gamma), q * gamma])
}

fn binary_output_feedback(
    name: &str,
    q: f64,
    gamma: f64,
    outputs: impl Fn(usize, usize, usize) -> (usize, usize),
) -> Result<SdmbcSpec> {
    let state_law = binary_state_law(q, gamma)?;
    let transition = Kernel::deterministic(vec![2, 2, 2], vec![2, 2, 4], |i| {
        let (y1, y2) = outputs(i[0], i[1], i[2]);
        vec![y1, y2, 2 * y1 + y2]
    })?;
    let alphabets = Alphabets {
        x: 2,
        y1: 2,
        y2: 2,
        z: 4,
        s1: 2,
        s2: 2,
        shat1: 2,
        shat2: 2,
    };
    Ok(SdmbcSpec::new(
        alphabets,
        state_law,
        transition,
        DistortionMeasure::hamming(2, 2),
    )?
    .with_name(name)
    .with_labels("z", ["00", "01", "10", "11"].map(String::from).to_vec()))
}

/// `Y_k = X S_k` with output feedback `Z = (Y1, Y2)`.
pub fn multiplicative_bc(q: f64, gamma: f64) -> Result<SdmbcSpec> {
    binary_output_feedback("multiplicative", q, gamma, |s1, s2, x| (x * s1, x * s2))
}

/// `Y1 = X S1`, `Y2 = (1 - X) S2` with output feedback `Z = (Y1, Y2)`.
pub fn flipping_bc(q: f64, gamma: f64) -> Result<SdmbcSpec> {
    binary_output_feedback("flipping", q, gamma, |s1, s2, x| (x * s1, (1 - x) * s2))
}

/// Symbol layout of the erasure BC.
///
/// The per-receiver state is the pair `(S_k, E_k)` with index `2 s + e`.
/// Outputs and feedback components use `0`, `1` and [`ERASED`](erasure::ERASED)
/// for the erasure symbol; `Z = (Z1, Z2)` has index `3 z1 + z2`.
pub mod erasure {
    pub const ERASED: usize = 2;

    pub fn state_index(s: usize, e: usize) -> usize {
        2 * s + e
    }

    pub fn feedback_index(z1: usize, z2: usize) -> usize {
        3 * z1 + z2
    }

    pub fn feedback_components(z: usize) -> (usize, usize) {
        (z / 3, z % 3)
    }

    /// `psi_k(z) = 1{z_k erased}`.
    pub fn indicator(z: usize, k: usize) -> usize {
        let (z1, z2) = feedback_components(z);
        let c = if k == 1 { z1 } else { z2 };
        usize::from(c == ERASED)
    }

    /// Law over `(s1, s2, e1, e2)` with all four bits independent.
    pub fn independent_law(s1: f64, s2: f64, e1: f64, e2: f64) -> crate::Result<crate::prob::Pmf> {
        let bern = |p: f64, v: usize| if v == 1 { p } else { 1.0 - p };
        let mut probs = Vec::with_capacity(16);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        probs.push(bern(s1, a) * bern(s2, b) * bern(e1, c) * bern(e2, d));
                    }
                }
            }
        }
        crate::prob::Pmf::new(probs)
    }
}

/// Erasure BC: `Y_k = X` if `S_k = 0` else erased; feedback `Z_k = Y_k` if
/// `E_k = 0` else erased. `joint_se` is row-major over `(s1, s2, e1, e2)`.
///
/// Distortion is Hamming on the `S_k` component of the pair state.
pub fn erasure_bc(joint_se: &Pmf) -> Result<SdmbcSpec> {
    use erasure::*;
    if joint_se.len() != 16 {
        return Err(Error::Shape(format!(
            "erasure law must have 16 entries over (s1, s2, e1, e2), got {}",
            joint_se.len()
        )));
    }
    let mut states = vec![0.0; 16];
    for s1 in 0..2 {
        for s2 in 0..2 {
            for e1 in 0..2 {
                for e2 in 0..2 {
                    let p = joint_se.probs()[((s1 * 2 + s2) * 2 + e1) * 2 + e2];
                    states[state_index(s1, e1) * 4 + state_index(s2, e2)] = p;
                }
            }
        }
    }
    let state_law = Pmf::new(states)?;
    let transition = Kernel::deterministic(vec![4, 4, 2], vec![3, 3, 9], |i| {
        let (s1, e1) = (i[0] / 2, i[0] % 2);
        let (s2, e2) = (i[1] / 2, i[1] % 2);
        let x = i[2];
        let y = |s: usize| if s == 0 { x } else { ERASED };
        let (y1, y2) = (y(s1), y(s2));
        let z = |yk: usize, e: usize| if e == 0 { yk } else { ERASED };
        vec![y1, y2, feedback_index(z(y1, e1), z(y2, e2))]
    })?;
    let alphabets = Alphabets {
        x: 2,
        y1: 3,
        y2: 3,
        z: 9,
        s1: 4,
        s2: 4,
        shat1: 2,
        shat2: 2,
    };
    let projected = DistortionMatrix::from_fn(4, 2, |se, shat| f64::from(u8::from(se / 2 != shat)));
    let distortion = DistortionMeasure::new(projected.clone(), projected);
    let sym = |v: usize| {
        if v == ERASED {
            "?".to_string()
        } else {
            v.to_string()
        }
    };
    let z_labels = (0..9)
        .map(|z| {
            let (a, b) = feedback_components(z);
            format!("{}{}", sym(a), sym(b))
        })
        .collect();
    let state_labels: Vec<String> = (0..4).map(|i| format!("s{}e{}", i / 2, i % 2)).collect();
    Ok(
        SdmbcSpec::new(alphabets, state_law, transition, distortion)?
            .with_name("erasure")
            .with_labels("y1", (0..3).map(sym).collect())
            .with_labels("y2", (0..3).map(sym).collect())
            .with_labels("z", z_labels)
            .with_labels("s1", state_labels.clone())
            .with_labels("s2", state_labels),
    )
}

/// Symbol layout of Dueck's BC with states.
///
/// `X = (X0, X1, X2)` has index `4 x0 + 2 x1 + x2`; `Y_k = (X0, Y'_k, S1, S2)`
/// has index `8 x0 + 4 y' + 2 s1 + s2`; `Z = (Y'_1, Y'_2)` has index `2 y1' + y2'`.
pub mod dueck {
    pub fn input_index(x0: usize, x1: usize, x2: usize) -> usize {
        4 * x0 + 2 * x1 + x2
    }

    /// `(x0, x1, x2)`.
    pub fn input_bits(x: usize) -> (usize, usize, usize) {
        (x / 4, (x / 2) % 2, x % 2)
    }

    pub fn output_index(x0: usize, y: usize, s1: usize, s2: usize) -> usize {
        8 * x0 + 4 * y + 2 * s1 + s2
    }

    pub fn feedback_index(y1: usize, y2: usize) -> usize {
        2 * y1 + y2
    }

    /// `(y1', y2')`.
    pub fn feedback_bits(z: usize) -> (usize, usize) {
        (z / 2, z % 2)
    }

    /// Input law with `X0 ~ Bern(1/2)` independent of `(X1, X2)`, and
    /// `P(X1 != X2) = beta` split evenly over the two patterns of each case.
    pub fn coupled_input(beta: f64) -> crate::Result<crate::prob::Pmf> {
        let beta = crate::error::check_unit("beta", beta)?;
        let mut probs = vec![0.0; 8];
        for (x, p) in probs.iter_mut().enumerate() {
            let (_, x1, x2) = input_bits(x);
            *p = 0.5
                * if x1 == x2 {
                    (1.0 - beta) / 2.0
                } else {
                    beta / 2.0
                };
        }
        crate::prob::Pmf::new(probs)
    }
}

/// Dueck's BC with i.i.d. binary states: `Y'_k = S_k (X_k xor N)` with
/// `N ~ Bern(1/2)` marginalized, outputs `Y_k = (X0, Y'_k, S1, S2)` and
/// feedback `Z = (Y'_1, Y'_2)`.
pub fn dueck_bc(p_s: &Pmf) -> Result<SdmbcSpec> {
    use dueck::*;
    if p_s.len() != 2 {
        return Err(Error::Shape(format!(
            "Dueck state law must be binary, got {} symbols",
            p_s.len()
        )));
    }
    let ps = p_s.probs();
    let state_law = Pmf::new(vec![
        ps[0] * ps[0],
        ps[0] * ps[1],
        ps[1] * ps[0],
        ps[1] * ps[1],
    ])?;
    let transition = Kernel::from_fn(vec![2, 2, 8], vec![16, 16, 4], |i| {
        let (s1, s2, x) = (i[0], i[1], i[2]);
        let (x0, x1, x2) = input_bits(x);
        let mut row = vec![0.0; 16 * 16 * 4];
        for n in 0..2 {
            let y1 = s1 * (x1 ^ n);
            let y2 = s2 * (x2 ^ n);
            let idx = (output_index(x0, y1, s1, s2) * 16 + output_index(x0, y2, s1, s2)) * 4
                + feedback_index(y1, y2);
            row[idx] += 0.5;
        }
        row
    })?;
    let alphabets = Alphabets {
        x: 8,
        y1: 16,
        y2: 16,
        z: 4,
        s1: 2,
        s2: 2,
        shat1: 2,
        shat2: 2,
    };
    let x_labels = (0..8)
        .map(|x| {
            let (a, b, c) = input_bits(x);
            format!("{a}{b}{c}")
        })
        .collect();
    Ok(SdmbcSpec::new(
        alphabets,
        state_law,
        transition,
        DistortionMeasure::hamming(2, 2),
    )?
    .with_name("dueck")
    .with_labels("x", x_labels)
    .with_labels("z", ["00", "01", "10", "11"].map(String::from).to_vec()))
}
