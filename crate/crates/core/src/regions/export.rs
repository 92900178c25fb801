//! CSV and JSON renderings of region and figure data. CSV numbers carry nine
//! decimals; JSON keeps full precision.

use serde::Serialize;

use super::figures::{Fig2BaselineRow, Fig2Data, Fig2Row, Fig4Row};
use super::point::RegionPoint;

/// A region point tagged with the bound or scheme that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SourcedPoint {
    #[serde(flatten)]
    pub point: RegionPoint,
    pub source: String,
}

impl SourcedPoint {
    pub fn new(point: RegionPoint, source: impl Into<String>) -> Self {
        Self {
            point,
            source: source.into(),
        }
    }
}

fn num(v: f64) -> String {
    format!("{v:.9}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

/// Header `R1,R2,D1,D2,source`.
pub fn region_csv(points: &[SourcedPoint]) -> String {
    let mut out = String::from("R1,R2,D1,D2,source\n");
    for s in points {
        let p = s.point;
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            num(p.r1),
            num(p.r2),
            num(p.d1),
            num(p.d2),
            s.source
        ));
    }
    out
}

pub fn region_json(points: &[SourcedPoint]) -> String {
    to_json(points)
}

/// Header `r,p,R1,R2,D1`.
pub fn fig2_surface_csv(rows: &[Fig2Row]) -> String {
    let mut out = String::from("r,p,R1,R2,D1\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            num(r.r),
            num(r.p),
            num(r.r1),
            num(r.r2),
            num(r.d1)
        ));
    }
    out
}

/// Header `r,lambda,R1,R2,D1`.
pub fn fig2_baseline_csv(rows: &[Fig2BaselineRow]) -> String {
    let mut out = String::from("r,lambda,R1,R2,D1\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            num(r.r),
            num(r.lambda),
            num(r.r1),
            num(r.r2),
            num(r.d1)
        ));
    }
    out
}

pub fn fig2_json(data: &Fig2Data) -> String {
    to_json(data)
}

/// Header `D,outer,inner,resource_splitting,time_sharing`, empty cells where
/// a curve is undefined.
pub fn fig4_csv(rows: &[Fig4Row]) -> String {
    let mut out = String::from("D,outer,inner,resource_splitting,time_sharing\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            num(r.d),
            opt(r.outer),
            opt(r.inner),
            opt(r.resource_splitting),
            opt(r.time_sharing)
        ));
    }
    out
}

pub fn fig4_json(rows: &[Fig4Row]) -> String {
    to_json(rows)
}
