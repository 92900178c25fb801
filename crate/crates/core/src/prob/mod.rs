//! Finite-alphabet probability and information primitives.
//!
//! Everything is in bits, with the convention `0 log 0 = 0`.

mod index;
pub mod info;
mod joint;
mod kernel;
mod pmf;

pub use index::{flat_index, for_each_coord, shape_len, unflatten};
pub use info::{
    cond_mutual_information, cond_mutual_information_with, conditional_entropy, entropy,
    mutual_information,
};
pub use joint::LabeledJoint;
pub use kernel::Kernel;
pub use pmf::Pmf;

use crate::error::{Error, Result};

/// Absolute tolerance on the mass of every pmf and kernel row.
pub const NORMALIZATION_TOL: f64 = 1e-9;
/// Conditional mutual information below `-CMI_CLAMP_TOL` is treated as a bug.
pub const CMI_CLAMP_TOL: f64 = 1e-9;
/// Slack allowed on the argument of [`binary_entropy`].
pub const BINARY_ENTROPY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub normalization: f64,
    pub cmi_clamp: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            normalization: NORMALIZATION_TOL,
            cmi_clamp: CMI_CLAMP_TOL,
        }
    }
}

/// Canonical variable names used for channel joints.
pub mod var {
    pub const X: &str = "X";
    pub const S1: &str = "S1";
    pub const S2: &str = "S2";
    pub const Y1: &str = "Y1";
    pub const Y2: &str = "Y2";
    pub const Z: &str = "Z";
}

/// `-sum p log2 p` over a mass vector.
pub fn entropy_of(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Binary entropy `H_b(p)` in bits.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !p.is_finite() || !(-BINARY_ENTROPY_SLACK..=1.0 + BINARY_ENTROPY_SLACK).contains(&p) {
        return Err(Error::Domain {
            what: "binary entropy argument",
            value: p,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(hb(p.clamp(0.0, 1.0)))
}

/// Unchecked binary entropy; arguments are clamped into `[0, 1]`.
pub(crate) fn hb(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    entropy_of(&[p, 1.0 - p])
}

/// Joint law of `(aux.., X, S1, S2, Y1, Y2, Z)` for inputs drawn independently
/// of the states: `P(aux, X) P(S1, S2) P(Y1, Y2, Z | S1, S2, X)`.
///
/// `state_law` is flattened row-major over `(s1, s2)`; the channel kernel has
/// input shape `[|S1|, |S2|, |X|]` and output shape `[|Y1|, |Y2|, |Z|]`.
pub fn compose_joint(
    input_law: &LabeledJoint,
    state_law: &Pmf,
    channel: &Kernel,
) -> Result<LabeledJoint> {
    let (ins, outs) = (channel.input_shape(), channel.output_shape());
    if ins.len() != 3 || outs.len() != 3 {
        return Err(Error::Shape(
            "channel kernel must map (S1, S2, X) to (Y1, Y2, Z)".into(),
        ));
    }
    let x_size = input_law.size_of(var::X)?;
    if x_size != ins[2] {
        return Err(Error::Shape(format!(
            "input law has |X| = {x_size}, channel expects {}",
            ins[2]
        )));
    }
    if state_law.len() != ins[0] * ins[1] {
        return Err(Error::Shape(format!(
            "state law has {} entries, channel expects {} x {}",
            state_law.len(),
            ins[0],
            ins[1]
        )));
    }
    let states = LabeledJoint::from_dense(&[var::S1, var::S2], &ins[..2], state_law.probs())?;
    input_law.product(&states)?.attach(
        &[var::S1, var::S2, var::X],
        channel,
        &[(var::Y1, outs[0]), (var::Y2, outs[1]), (var::Z, outs[2])],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert!(binary_entropy(1.0 + 1e-13).is_ok());
        assert!(binary_entropy(1.01).is_err());
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(f64::NAN).is_err());
    }

    #[test]
    fn binary_entropy_at_048() {
        // -0.48 log2 0.48 - 0.52 log2 0.52, evaluated to 20 digits with mpmath
        let expected = 0.998_845_535_995_201_8;
        assert!((binary_entropy(0.48).unwrap() - expected).abs() < 1e-15);
    }
}
