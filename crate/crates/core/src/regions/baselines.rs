//! Baseline schemes: resource splitting between a pure sensing mode and a
//! pure communication mode, and time sharing between operating points.

use super::closed_form::{dueck_inner_sum_rate, dueck_min_distortion, DueckRegime};
use super::point::RegionPoint;
use crate::error::{check_unit, Error, Result};
use crate::prob::{Pmf, NORMALIZATION_TOL};

/// Coordinate-wise convex combination `sum_i w_i p_i`.
pub fn time_sharing(points: &[RegionPoint], weights: &[f64]) -> Result<RegionPoint> {
    if points.is_empty() || points.len() != weights.len() {
        return Err(Error::Shape(format!(
            "{} points with {} weights",
            points.len(),
            weights.len()
        )));
    }
    if let Some(&w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
        return Err(Error::InvalidEntry {
            what: "time-sharing weight".into(),
            value: w,
        });
    }
    let mass: f64 = weights.iter().sum();
    if (mass - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized {
            what: "time-sharing weights".into(),
            mass,
        });
    }
    let mut acc = [0.0; 4];
    for (p, w) in points.iter().zip(weights) {
        for (a, v) in acc.iter_mut().zip([p.r1, p.r2, p.d1, p.d2]) {
            *a += w * v;
        }
    }
    RegionPoint::new(acc[0], acc[1], acc[2], acc[3])
}

/// `(D1max, D2max) = (min{q, 1-q}, min{gamma q, 1 - gamma q})`: the
/// distortions when the input carries no sensing information.
pub fn multiplicative_max_distortions(q: f64, gamma: f64) -> Result<(f64, f64)> {
    let q = check_unit("q", q)?;
    let gamma = check_unit("gamma", gamma)?;
    Ok((q.min(1.0 - q), (gamma * q).min(1.0 - gamma * q)))
}

/// The sensing mode of the multiplicative BC: always send `X = 1`.
pub fn multiplicative_sensing_point() -> RegionPoint {
    RegionPoint {
        r1: 0.0,
        r2: 0.0,
        d1: 0.0,
        d2: 0.0,
    }
}

/// The communication mode: uniform inputs, rate split `r`, no use of the
/// feedback.
pub fn multiplicative_communication_point(q: f64, gamma: f64, r: f64) -> Result<RegionPoint> {
    let (d1, d2) = multiplicative_max_distortions(q, gamma)?;
    let r = check_unit("r", r)?;
    RegionPoint::new(q * r, gamma * q * (1.0 - r), d1, d2)
}

/// Fraction `lambda` of communication mode, `1 - lambda` of sensing mode.
pub fn multiplicative_resource_splitting(
    q: f64,
    gamma: f64,
    r: f64,
    lambda: f64,
) -> Result<RegionPoint> {
    let comm = multiplicative_communication_point(q, gamma, r)?;
    Ok(comm.mix(
        &multiplicative_sensing_point(),
        check_unit("lambda", lambda)?,
    ))
}

/// Time sharing between the sensing point and the uniform-input point that
/// still uses the feedback, `(q r, gamma q (1-r), D1max/2, D2max/2)`.
pub fn multiplicative_time_sharing(q: f64, gamma: f64, r: f64, lambda: f64) -> Result<RegionPoint> {
    let comm = multiplicative_communication_point(q, gamma, r)?;
    let joint = RegionPoint {
        d1: comm.d1 / 2.0,
        d2: comm.d2 / 2.0,
        ..comm
    };
    Ok(joint.mix(
        &multiplicative_sensing_point(),
        check_unit("lambda", lambda)?,
    ))
}

/// A straight line in the symmetric `(D, R_sum)` plane between two operating
/// points, ordered by distortion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumRateSegment {
    pub start: (f64, f64),
    pub end: (f64, f64),
}

impl SumRateSegment {
    /// Sum-rate on the segment at distortion `d`, or `None` outside it.
    pub fn at(&self, d: f64) -> Option<f64> {
        let ((d0, r0), (d1, r1)) = (self.start, self.end);
        if d < d0 || d > d1 {
            return None;
        }
        if d1 == d0 {
            return Some(r0.max(r1));
        }
        if d == d1 {
            return Some(r1);
        }
        Some(r0 + (r1 - r0) * (d - d0) / (d1 - d0))
    }

    /// Endpoints as symmetric region points.
    pub fn endpoints(&self) -> Result<[RegionPoint; 2]> {
        Ok([
            RegionPoint::symmetric(self.start.1, self.start.0)?,
            RegionPoint::symmetric(self.end.1, self.end.0)?,
        ])
    }
}

/// Resource splitting on Dueck's BC: the sensing mode reaches the minimum
/// distortion at zero rate, the communication mode sends one uncoded bit on
/// `X0` and estimates the more likely state.
pub fn dueck_resource_splitting(p_s: &Pmf) -> Result<SumRateSegment> {
    let d_min = dueck_min_distortion(p_s)?;
    Ok(SumRateSegment {
        start: (d_min, 0.0),
        end: (p_s.get(0).min(p_s.get(1)), 1.0),
    })
}

/// Time sharing between the minimum-distortion point of the inner bound and
/// its maximum sum-rate point `1 + P1^2`.
pub fn dueck_time_sharing(p_s: &Pmf) -> Result<SumRateSegment> {
    let d_min = dueck_min_distortion(p_s)?;
    let p1 = p_s.get(1);
    let top = 1.0 + p1 * p1;
    let start_rate = dueck_inner_sum_rate(p_s, d_min)?.unwrap_or(top);
    let end_d = match DueckRegime::classify(p_s)? {
        DueckRegime::Product => d_min,
        DueckRegime::Intermediate => 0.25 * p1 + 0.5 * p1 * p_s.get(0),
        DueckRegime::Strong => {
            let p0 = p_s.get(0);
            0.25 * p0 * (1.0 + p0) + 0.5 * p1 * p0
        }
    };
    Ok(SumRateSegment {
        start: (d_min, start_rate),
        end: (end_d, top),
    })
}
