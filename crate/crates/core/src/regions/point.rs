use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rate-distortion tuple `(R1, R2, D1, D2)`; rates in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionPoint {
    #[serde(rename = "R1")]
    pub r1: f64,
    #[serde(rename = "R2")]
    pub r2: f64,
    #[serde(rename = "D1")]
    pub d1: f64,
    #[serde(rename = "D2")]
    pub d2: f64,
}

impl RegionPoint {
    pub fn new(r1: f64, r2: f64, d1: f64, d2: f64) -> Result<Self> {
        for (what, v) in [("R1", r1), ("R2", r2), ("D1", d1), ("D2", d2)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidEntry {
                    what: what.into(),
                    value: v,
                });
            }
        }
        Ok(Self { r1, r2, d1, d2 })
    }

    /// A point of the symmetric sum-rate view: `R1 = R2 = sum / 2`,
    /// `D1 = D2 = d`.
    pub fn symmetric(sum_rate: f64, d: f64) -> Result<Self> {
        Self::new(sum_rate / 2.0, sum_rate / 2.0, d, d)
    }

    pub fn sum_rate(&self) -> f64 {
        self.r1 + self.r2
    }

    /// Higher or equal rates and lower or equal distortions, with at least
    /// one strict inequality.
    pub fn dominates(&self, other: &RegionPoint) -> bool {
        let weakly = self.r1 >= other.r1
            && self.r2 >= other.r2
            && self.d1 <= other.d1
            && self.d2 <= other.d2;
        weakly && self != other
    }

    /// Coordinate-wise `lambda * self + (1 - lambda) * other`.
    pub fn mix(&self, other: &RegionPoint, lambda: f64) -> RegionPoint {
        let m = |a: f64, b: f64| lambda * a + (1.0 - lambda) * b;
        RegionPoint {
            r1: m(self.r1, other.r1),
            r2: m(self.r2, other.r2),
            d1: m(self.d1, other.d1),
            d2: m(self.d2, other.d2),
        }
    }

    fn order_key(&self) -> [f64; 4] {
        [-self.r1, -self.r2, self.d1, self.d2]
    }
}

/// Mutually non-dominated points, ordered lexicographically by
/// `(-R1, -R2, D1, D2)`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ParetoSet {
    points: Vec<RegionPoint>,
}

impl ParetoSet {
    pub fn points(&self) -> &[RegionPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, RegionPoint> {
        self.points.iter()
    }

    pub fn into_points(self) -> Vec<RegionPoint> {
        self.points
    }
}

impl<'a> IntoIterator for &'a ParetoSet {
    type Item = &'a RegionPoint;
    type IntoIter = std::slice::Iter<'a, RegionPoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Removes dominated points and exact duplicates.
///
/// After sorting by `(-R1, -R2, D1, D2)` every dominator precedes the points
/// it dominates, so one pass against the survivors suffices.
pub fn pareto_frontier(points: impl IntoIterator<Item = RegionPoint>) -> ParetoSet {
    let mut sorted: Vec<RegionPoint> = points.into_iter().collect();
    sorted.sort_by(|a, b| {
        a.order_key()
            .iter()
            .zip(b.order_key().iter())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut kept: Vec<RegionPoint> = Vec::new();
    for p in sorted {
        if kept.iter().any(|k| *k == p || k.dominates(&p)) {
            continue;
        }
        kept.push(p);
    }
    ParetoSet { points: kept }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(r1: f64, r2: f64, d1: f64, d2: f64) -> RegionPoint {
        RegionPoint::new(r1, r2, d1, d2).unwrap()
    }

    #[test]
    fn single_point_survives() {
        let p = pt(0.3, 0.1, 0.2, 0.2);
        assert_eq!(pareto_frontier([p]).points(), &[p]);
    }

    #[test]
    fn strict_dominance_removes_the_weaker_point() {
        let a = pt(1.0, 0.0, 0.1, 0.1);
        let b = pt(0.5, 0.0, 0.2, 0.2);
        assert_eq!(pareto_frontier([b, a]).points(), &[a]);
    }

    #[test]
    fn duplicates_collapse_and_order_is_fixed() {
        let a = pt(0.2, 0.5, 0.1, 0.1);
        let b = pt(0.5, 0.2, 0.1, 0.1);
        let set = pareto_frontier([a, b, a]);
        assert_eq!(set.points(), &[b, a]);
    }

    #[test]
    fn negative_or_nan_coordinates_are_rejected() {
        assert!(RegionPoint::new(-0.1, 0.0, 0.0, 0.0).is_err());
        assert!(RegionPoint::new(0.0, f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn mix_is_a_convex_combination() {
        let a = pt(0.0, 0.0, 0.0, 0.0);
        let b = pt(0.6, 0.0, 0.4, 0.3);
        let m = a.mix(&b, 0.5);
        assert_eq!(m, pt(0.3, 0.0, 0.2, 0.15));
    }
}
