//! Entropy and (conditional) mutual information of labeled joints, in bits.

use super::{entropy_of, LabeledJoint, Tolerances};
use crate::error::{Error, Result};

/// `H(vars)`. The empty set has zero entropy.
pub fn entropy(joint: &LabeledJoint, vars: &[&str]) -> Result<f64> {
    let idx = joint.var_indices(vars)?;
    let mut idx_unique = idx.clone();
    idx_unique.sort_unstable();
    idx_unique.dedup();
    let masses: Vec<f64> = joint
        .project(&idx_unique)?
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    Ok(entropy_of(&masses))
}

/// `H(a | c)`.
pub fn conditional_entropy(joint: &LabeledJoint, a: &[&str], c: &[&str]) -> Result<f64> {
    let ac: Vec<&str> = a.iter().chain(c).copied().collect();
    Ok(entropy(joint, &ac)? - entropy(joint, c)?)
}

pub fn mutual_information(joint: &LabeledJoint, a: &[&str], b: &[&str]) -> Result<f64> {
    cond_mutual_information(joint, a, b, &[])
}

/// `I(a; b | c)` with the default clamp tolerance.
pub fn cond_mutual_information(
    joint: &LabeledJoint,
    a: &[&str],
    b: &[&str],
    c: &[&str],
) -> Result<f64> {
    cond_mutual_information_with(joint, a, b, c, &Tolerances::default())
}

/// `I(a; b | c) = H(a,c) + H(b,c) - H(a,b,c) - H(c)`, clamped at zero.
///
/// Negative values beyond `tol.cmi_clamp` indicate an inconsistent joint
/// and trip a debug assertion.
pub fn cond_mutual_information_with(
    joint: &LabeledJoint,
    a: &[&str],
    b: &[&str],
    c: &[&str],
    tol: &Tolerances,
) -> Result<f64> {
    for (x, y) in [(a, b), (a, c), (b, c)] {
        if let Some(v) = x.iter().find(|v| y.contains(v)) {
            return Err(Error::Overlap(v.to_string()));
        }
    }
    let ac: Vec<&str> = a.iter().chain(c).copied().collect();
    let bc: Vec<&str> = b.iter().chain(c).copied().collect();
    let abc: Vec<&str> = a.iter().chain(b).chain(c).copied().collect();
    let value =
        entropy(joint, &ac)? + entropy(joint, &bc)? - entropy(joint, &abc)? - entropy(joint, c)?;
    debug_assert!(value >= -tol.cmi_clamp, "negative CMI {value}");
    Ok(value.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::Pmf;

    #[test]
    fn uniform_bit_has_one_bit() {
        let j = LabeledJoint::from_pmf("A", &Pmf::uniform(2).unwrap()).unwrap();
        assert!((entropy(&j, &["A"]).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn deterministic_variable_has_zero_entropy() {
        let j = LabeledJoint::from_pmf("A", &Pmf::point_mass(3, 2).unwrap()).unwrap();
        assert_eq!(entropy(&j, &["A"]).unwrap(), 0.0);
    }

    #[test]
    fn bernoulli_point_six() {
        let j = LabeledJoint::from_pmf("A", &Pmf::bernoulli(0.6).unwrap()).unwrap();
        assert!((entropy(&j, &["A"]).unwrap() - 0.970_950_594_454_668_6).abs() < 1e-12);
    }

    #[test]
    fn independent_and_copy() {
        let ind = LabeledJoint::from_dense(&["A", "B"], &[2, 2], &[0.25; 4]).unwrap();
        assert_eq!(mutual_information(&ind, &["A"], &["B"]).unwrap(), 0.0);
        let copy = LabeledJoint::from_dense(&["A", "B"], &[2, 2], &[0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!((mutual_information(&copy, &["A"], &["B"]).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn overlapping_sets_rejected() {
        let ind = LabeledJoint::from_dense(&["A", "B"], &[2, 2], &[0.25; 4]).unwrap();
        assert_eq!(
            cond_mutual_information(&ind, &["A"], &["A"], &[]),
            Err(Error::Overlap("A".into()))
        );
        assert!(cond_mutual_information(&ind, &["A"], &["B"], &["B"]).is_err());
    }
}
