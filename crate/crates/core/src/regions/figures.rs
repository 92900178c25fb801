//! Data series of the two figures: the multiplicative-BC surface with its
//! baselines, and the Dueck sum-rate curves.

use serde::Serialize;

use super::baselines::{
    dueck_resource_splitting, dueck_time_sharing, multiplicative_resource_splitting,
    multiplicative_time_sharing,
};
use super::closed_form::{corollary1_region, dueck_inner_sum_rate, dueck_outer_sum_rate};
use crate::error::{Error, Result};
use crate::prob::Pmf;

/// One point of the multiplicative-BC surface projected on `(R1, R2, D1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fig2Row {
    pub r: f64,
    pub p: f64,
    #[serde(rename = "R1")]
    pub r1: f64,
    #[serde(rename = "R2")]
    pub r2: f64,
    #[serde(rename = "D1")]
    pub d1: f64,
}

/// One point of a baseline surface; `lambda` is the fraction of time in the
/// communication mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fig2BaselineRow {
    pub r: f64,
    pub lambda: f64,
    #[serde(rename = "R1")]
    pub r1: f64,
    #[serde(rename = "R2")]
    pub r2: f64,
    #[serde(rename = "D1")]
    pub d1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig2Data {
    pub surface: Vec<Fig2Row>,
    pub resource_splitting: Vec<Fig2BaselineRow>,
    pub time_sharing: Vec<Fig2BaselineRow>,
}

fn unit_grid(steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::Shape("figure grid needs at least one step".into()));
    }
    Ok((0..=steps).map(|i| i as f64 / steps as f64).collect())
}

/// Sweeps `(r, p)` and `(r, lambda)` over `{0, 1/steps, .., 1}`.
pub fn fig2_data(q: f64, gamma: f64, steps: usize) -> Result<Fig2Data> {
    let grid = unit_grid(steps)?;
    let mut data = Fig2Data {
        surface: Vec::new(),
        resource_splitting: Vec::new(),
        time_sharing: Vec::new(),
    };
    for &r in &grid {
        for &p in &grid {
            let c = corollary1_region(q, gamma, p, r)?;
            data.surface.push(Fig2Row {
                r,
                p,
                r1: c.r1,
                r2: c.r2,
                d1: c.d1,
            });
        }
        for &lambda in &grid {
            let rs = multiplicative_resource_splitting(q, gamma, r, lambda)?;
            data.resource_splitting.push(Fig2BaselineRow {
                r,
                lambda,
                r1: rs.r1,
                r2: rs.r2,
                d1: rs.d1,
            });
            let ts = multiplicative_time_sharing(q, gamma, r, lambda)?;
            data.time_sharing.push(Fig2BaselineRow {
                r,
                lambda,
                r1: ts.r1,
                r2: ts.r2,
                d1: ts.d1,
            });
        }
    }
    Ok(data)
}

/// Sum-rates of the four Dueck curves at one distortion; `None` where a
/// curve is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fig4Row {
    #[serde(rename = "D")]
    pub d: f64,
    pub outer: Option<f64>,
    pub inner: Option<f64>,
    pub resource_splitting: Option<f64>,
    pub time_sharing: Option<f64>,
}

/// `5/32 + k/1000` for `k = 0..=25`, plus `11/64` and `0.181875`, sorted.
pub fn fig4_distortions() -> Vec<f64> {
    let mut ds: Vec<f64> = (0..=25)
        .map(|k| (15625 + 100 * k) as f64 / 100_000.0)
        .collect();
    ds.push(11.0 / 64.0);
    ds.push(0.181875);
    ds.sort_by(f64::total_cmp);
    ds.dedup();
    ds
}

pub fn fig4_rows(p_s: &Pmf, distortions: &[f64]) -> Result<Vec<Fig4Row>> {
    let rs = dueck_resource_splitting(p_s)?;
    let ts = dueck_time_sharing(p_s)?;
    distortions
        .iter()
        .map(|&d| {
            Ok(Fig4Row {
                d,
                outer: dueck_outer_sum_rate(p_s, d)?,
                inner: dueck_inner_sum_rate(p_s, d)?,
                resource_splitting: rs.at(d),
                time_sharing: ts.at(d),
            })
        })
        .collect()
}
