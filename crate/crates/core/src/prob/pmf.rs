use serde::{Deserialize, Serialize};

use super::NORMALIZATION_TOL;
use crate::error::{check_unit, Error, Result};

/// A probability vector over a finite alphabet `{0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Pmf {
    probs: Vec<f64>,
}

impl Pmf {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        validate_row("pmf", &probs)?;
        Ok(Self { probs })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Shape("empty alphabet".into()));
        }
        Ok(Self {
            probs: vec![1.0 / n as f64; n],
        })
    }

    pub fn point_mass(n: usize, at: usize) -> Result<Self> {
        if at >= n {
            return Err(Error::Shape(format!(
                "point {at} outside alphabet of size {n}"
            )));
        }
        let mut probs = vec![0.0; n];
        probs[at] = 1.0;
        Ok(Self { probs })
    }

    /// `[1 - p, p]`.
    pub fn bernoulli(p: f64) -> Result<Self> {
        let p = check_unit("bernoulli parameter", p)?;
        Ok(Self {
            probs: vec![1.0 - p, p],
        })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn get(&self, i: usize) -> f64 {
        self.probs.get(i).copied().unwrap_or(0.0)
    }

    /// Shannon entropy in bits.
    pub fn entropy(&self) -> f64 {
        super::entropy_of(&self.probs)
    }
}

impl TryFrom<Vec<f64>> for Pmf {
    type Error = Error;

    fn try_from(value: Vec<f64>) -> Result<Self> {
        Pmf::new(value)
    }
}

impl From<Pmf> for Vec<f64> {
    fn from(value: Pmf) -> Self {
        value.probs
    }
}

pub(crate) fn validate_row(what: &str, row: &[f64]) -> Result<()> {
    if row.is_empty() {
        return Err(Error::Shape(format!("{what} is empty")));
    }
    if let Some(&bad) = row.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(Error::InvalidEntry {
            what: what.to_string(),
            value: bad,
        });
    }
    let mass: f64 = row.iter().sum();
    if (mass - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized {
            what: what.to_string(),
            mass,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_rows() {
        assert!(matches!(
            Pmf::new(vec![0.5, 0.4]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            Pmf::new(vec![1.5, -0.5]),
            Err(Error::InvalidEntry { .. })
        ));
        assert!(Pmf::new(vec![]).is_err());
        assert!(Pmf::new(vec![0.5, 0.5 + 1e-12]).is_ok());
    }

    #[test]
    fn serde_round_trip_validates() {
        let p = Pmf::bernoulli(0.25).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[0.75,0.25]");
        let back: Pmf = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Pmf>("[0.2,0.2]").is_err());
    }
}
