//! Closed-form regions of the binary examples and of Dueck's BC with states.

use std::fmt;

use super::point::RegionPoint;
use crate::error::{check_unit, Error, Result};
use crate::prob::{hb, Pmf};

/// Tolerance of the golden-section searches used by the Dueck envelopes.
pub const GOLDEN_TOL: f64 = 1e-9;

/// Corner of the multiplicative-BC region for parameters `(p, r)`:
/// `(q Hb(p) r, gamma q Hb(p) (1 - r), (1-p) min{q, 1-q},
/// (1-p) min{gamma q, 1 - gamma q})`.
pub fn corollary1_region(q: f64, gamma: f64, p: f64, r: f64) -> Result<RegionPoint> {
    let (q, gamma, p, r) = unit4(q, gamma, p, r)?;
    let h = hb(p);
    RegionPoint::new(
        q * h * r,
        gamma * q * h * (1.0 - r),
        (1.0 - p) * q.min(1.0 - q),
        (1.0 - p) * (gamma * q).min(1.0 - gamma * q),
    )
}

/// Corner of the flipping-BC region for parameters `(p, r)`. Here the two
/// distortions trade off against each other through `p`.
pub fn corollary2_region(q: f64, gamma: f64, p: f64, r: f64) -> Result<RegionPoint> {
    let (q, gamma, p, r) = unit4(q, gamma, p, r)?;
    let h = hb(p);
    RegionPoint::new(
        q * h * r,
        gamma * q * h * (1.0 - r),
        (1.0 - p) * (q * (1.0 - gamma)).min(1.0 - q),
        p * q * gamma.min(1.0 - gamma),
    )
}

fn unit4(a: f64, b: f64, c: f64, d: f64) -> Result<(f64, f64, f64, f64)> {
    Ok((
        check_unit("q", a)?,
        check_unit("gamma", b)?,
        check_unit("p", c)?,
        check_unit("r", d)?,
    ))
}

/// The three state-law regimes of Dueck's BC with states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DueckRegime {
    /// `P_S(1) <= P_S(0)`: no tradeoff, the region is a product.
    Product,
    /// `P_S(0)(1 + P_S(0)) >= P_S(1) > P_S(0)`.
    Intermediate,
    /// `P_S(1) > P_S(0)(1 + P_S(0))`.
    Strong,
}

impl DueckRegime {
    pub fn classify(p_s: &Pmf) -> Result<Self> {
        let (p0, p1) = binary_law(p_s)?;
        Ok(if p1 <= p0 {
            Self::Product
        } else if p0 * (1.0 + p0) >= p1 {
            Self::Intermediate
        } else {
            Self::Strong
        })
    }

    pub fn number(self) -> usize {
        match self {
            Self::Product => 1,
            Self::Intermediate => 2,
            Self::Strong => 3,
        }
    }
}

impl fmt::Display for DueckRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Self::Product => "P_S(1) <= P_S(0)",
            Self::Intermediate => "P_S(0)(1+P_S(0)) >= P_S(1) > P_S(0)",
            Self::Strong => "P_S(1) > P_S(0)(1+P_S(0))",
        };
        write!(f, "regime {} ({text})", self.number())
    }
}

fn binary_law(p_s: &Pmf) -> Result<(f64, f64)> {
    if p_s.len() != 2 {
        return Err(Error::Shape(format!(
            "Dueck state law must be binary, got {} symbols",
            p_s.len()
        )));
    }
    Ok((p_s.get(0), p_s.get(1)))
}

/// Lower bound on each distortion as a function of the coupling
/// `beta = P(X1 != X2)`:
/// `1/2 (1-beta) min{P1, P0(1+P0)} + 1/2 beta P1 (P0 + min{P0, P1})`.
pub fn dueck_distortion_bound(p_s: &Pmf, beta: f64) -> Result<f64> {
    let (p0, p1) = binary_law(p_s)?;
    let beta = check_unit("beta", beta)?;
    Ok(0.5 * (1.0 - beta) * p1.min(p0 * (1.0 + p0)) + 0.5 * beta * p1 * (p0 + p0.min(p1)))
}

/// Smallest distortion any coupling achieves.
pub fn dueck_min_distortion(p_s: &Pmf) -> Result<f64> {
    Ok(dueck_distortion_bound(p_s, 0.0)?.min(dueck_distortion_bound(p_s, 1.0)?))
}

/// `{beta in [0,1] : D_h(beta) <= d}` as a closed interval, if non-empty.
fn feasible_betas(p_s: &Pmf, d: f64) -> Result<Option<(f64, f64)>> {
    let a = dueck_distortion_bound(p_s, 0.0)?;
    let b = dueck_distortion_bound(p_s, 1.0)? - a;
    Ok(if b > 0.0 {
        (d >= a).then(|| (0.0, ((d - a) / b).min(1.0)))
    } else if b < 0.0 {
        (d >= a + b).then(|| (((d - a) / b).max(0.0), 1.0))
    } else {
        (d >= a).then_some((0.0, 1.0))
    })
}

/// Rate and distortion constraints of the outer bound for given
/// `(p, q_aux, beta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DueckOuter {
    pub r1_bounds: [f64; 2],
    pub r2_bounds: [f64; 2],
    pub distortion: f64,
}

impl DueckOuter {
    pub fn r1_max(&self) -> f64 {
        self.r1_bounds[0].min(self.r1_bounds[1])
    }

    pub fn r2_max(&self) -> f64 {
        self.r2_bounds[0].min(self.r2_bounds[1])
    }

    /// The dominant corner `(R1max, R2max, D, D)`.
    pub fn corner(&self) -> RegionPoint {
        RegionPoint {
            r1: self.r1_max(),
            r2: self.r2_max(),
            d1: self.distortion,
            d2: self.distortion,
        }
    }
}

/// `R1 <= 1-p`, `R2 <= p + P1^2 Hb(beta)`, `R1 <= q_aux + P1^2 Hb(beta)`,
/// `R2 <= 1 - q_aux` and `D_k >= D_h(beta)`.
pub fn dueck_outer(p_s: &Pmf, p: f64, q_aux: f64, beta: f64) -> Result<DueckOuter> {
    let (_, p1) = binary_law(p_s)?;
    let p = check_unit("p", p)?;
    let q_aux = check_unit("q_aux", q_aux)?;
    let extra = p1 * p1 * hb(check_unit("beta", beta)?);
    Ok(DueckOuter {
        r1_bounds: [1.0 - p, q_aux + extra],
        r2_bounds: [p + extra, 1.0 - q_aux],
        distortion: dueck_distortion_bound(p_s, beta)?,
    })
}

/// Largest sum-rate the outer bound admits at symmetric distortion `d`, or
/// `None` below the minimum distortion. Equals `1 + P1^2 max Hb(beta)` over
/// the couplings meeting the distortion constraint.
pub fn dueck_outer_sum_rate(p_s: &Pmf, d: f64) -> Result<Option<f64>> {
    let (_, p1) = binary_law(p_s)?;
    let Some((lo, hi)) = feasible_betas(p_s, d)? else {
        return Ok(None);
    };
    let h = if lo <= 0.5 && 0.5 <= hi {
        1.0
    } else {
        hb(lo).max(hb(hi))
    };
    Ok(Some(1.0 + p1 * p1 * h))
}

/// One evaluation of the inner bound: `R_k <= 1`, `R1 + R2 <= sum_rate`,
/// `D_k >= distortion`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DueckInner {
    pub regime: DueckRegime,
    pub sum_rate: f64,
    pub distortion: f64,
}

impl DueckInner {
    /// Dominant corners of the rate pentagon at the given distortion.
    pub fn corners(&self) -> Vec<RegionPoint> {
        let s = self.sum_rate.max(0.0);
        let a = s.min(1.0);
        let b = (s - a).min(1.0);
        let pt = |r1, r2| RegionPoint {
            r1,
            r2,
            d1: self.distortion,
            d2: self.distortion,
        };
        if a == b {
            vec![pt(a, b)]
        } else {
            vec![pt(a, b), pt(b, a)]
        }
    }
}

/// Inner bound for coupling `beta` and time-sharing fraction `gamma`.
///
/// In the product regime the region is `C x D` and the parameters are not
/// used. In the intermediate regime `gamma >= 1 - beta` is required, in the
/// strong regime `beta <= gamma`.
pub fn dueck_inner(p_s: &Pmf, beta: f64, gamma: f64) -> Result<DueckInner> {
    let (p0, p1) = binary_law(p_s)?;
    let beta = check_unit("beta", beta)?;
    let gamma = check_unit("gamma", gamma)?;
    let regime = DueckRegime::classify(p_s)?;
    let (sum_rate, distortion) = match regime {
        DueckRegime::Product => (1.0 + p1 * p1, 0.5 * p1),
        DueckRegime::Intermediate => {
            if gamma < 1.0 - beta {
                return Err(Error::Regime(format!(
                    "{regime} needs gamma >= 1 - beta, got beta {beta}, gamma {gamma}"
                )));
            }
            (
                1.0 + intermediate_gain(p0, p1, beta, gamma),
                0.5 * (1.0 - beta) * p1 + beta * p1 * p0,
            )
        }
        DueckRegime::Strong => {
            if beta > gamma {
                return Err(Error::Regime(format!(
                    "{regime} needs beta <= gamma, got beta {beta}, gamma {gamma}"
                )));
            }
            (
                1.0 + strong_gain(p0, p1, beta, gamma),
                0.5 * (1.0 - beta) * p0 * (1.0 + p0) + beta * p1 * p0,
            )
        }
    };
    Ok(DueckInner {
        regime,
        sum_rate,
        distortion,
    })
}

/// `gamma P1 (Hb(1 - (1-beta)/gamma) - P0)`, zero at `gamma = 0`.
fn intermediate_gain(p0: f64, p1: f64, beta: f64, gamma: f64) -> f64 {
    if gamma == 0.0 {
        return 0.0;
    }
    gamma * p1 * (hb((1.0 - (1.0 - beta) / gamma).clamp(0.0, 1.0)) - p0)
}

/// `gamma P1 (Hb(beta/gamma) - P0)`, zero at `gamma = 0`.
fn strong_gain(p0: f64, p1: f64, beta: f64, gamma: f64) -> f64 {
    if gamma == 0.0 {
        return 0.0;
    }
    gamma * p1 * (hb((beta / gamma).clamp(0.0, 1.0)) - p0)
}

/// Largest inner-bound sum-rate at symmetric distortion `d`, or `None` below
/// the minimum distortion.
///
/// Both the coupling and the time-sharing fraction are optimized by nested
/// golden-section searches; the gain is the perspective of a concave
/// function, hence jointly concave, so both searches are unimodal.
pub fn dueck_inner_sum_rate(p_s: &Pmf, d: f64) -> Result<Option<f64>> {
    let (p0, p1) = binary_law(p_s)?;
    let regime = DueckRegime::classify(p_s)?;
    if regime == DueckRegime::Product {
        return Ok((d >= 0.5 * p1).then_some(1.0 + p1 * p1));
    }
    let Some((lo, hi)) = feasible_betas(p_s, d)? else {
        return Ok(None);
    };
    let best_gain = |beta: f64| match regime {
        DueckRegime::Intermediate => {
            golden_section_max(
                |g| intermediate_gain(p0, p1, beta, g),
                1.0 - beta,
                1.0,
                GOLDEN_TOL,
            )
            .1
        }
        _ => golden_section_max(|g| strong_gain(p0, p1, beta, g), beta, 1.0, GOLDEN_TOL).1,
    };
    let (_, gain) = golden_section_max(best_gain, lo, hi, GOLDEN_TOL);
    Ok(Some(1.0 + gain))
}

/// Maximizes a unimodal `f` on `[lo, hi]` to within `tol` in the argument.
/// Both endpoints are evaluated as well, so boundary maxima are exact.
pub fn golden_section_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut best = [(lo, f(lo)), (hi, f(hi))]
        .into_iter()
        .fold(
            (lo, f64::NEG_INFINITY),
            |b, c| if c.1 > b.1 { c } else { b },
        );
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut e = a + inv_phi * (b - a);
    let (mut fc, mut fe) = (f(c), f(e));
    while b - a > tol {
        if fc >= fe {
            b = e;
            e = c;
            fe = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + inv_phi * (b - a);
            fe = f(e);
        }
    }
    for cand in [(c, fc), (e, fe)] {
        if cand.1 > best.1 {
            best = cand;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn law(p1: f64) -> Pmf {
        Pmf::new(vec![1.0 - p1, p1]).unwrap()
    }

    #[test]
    fn corollary1_examples() {
        let c = corollary1_region(0.6, 0.5, 0.5, 1.0).unwrap();
        assert!((c.r1 - 0.6).abs() < 1e-15);
        assert_eq!(c.r2, 0.0);
        assert!((c.d1 - 0.2).abs() < 1e-15);
        assert!((c.d2 - 0.15).abs() < 1e-15);
        for r in [0.0, 0.3, 1.0] {
            let s = corollary1_region(0.6, 0.5, 1.0, r).unwrap();
            assert_eq!(s, RegionPoint::new(0.0, 0.0, 0.0, 0.0).unwrap());
        }
        assert!(corollary1_region(1.2, 0.5, 0.5, 0.5).is_err());
    }

    #[test]
    fn corollary2_examples() {
        let c = corollary2_region(0.6, 0.5, 0.0, 0.5).unwrap();
        assert_eq!(c.d2, 0.0);
        assert!((c.d1 - 0.3).abs() < 1e-15);
        let c = corollary2_region(0.6, 0.5, 1.0, 0.5).unwrap();
        assert_eq!(c.d1, 0.0);
        assert!((c.d2 - 0.3).abs() < 1e-15);
        let c = corollary2_region(0.6, 0.5, 0.5, 0.5).unwrap();
        assert!((c.r1 - 0.3).abs() < 1e-15);
        assert!((c.r2 - 0.15).abs() < 1e-15);
        assert!((c.d1 - 0.15).abs() < 1e-15);
        assert!((c.d2 - 0.15).abs() < 1e-15);
    }

    #[test]
    fn regimes_partition_the_state_laws() {
        assert_eq!(
            DueckRegime::classify(&law(0.25)).unwrap(),
            DueckRegime::Product
        );
        assert_eq!(
            DueckRegime::classify(&law(0.5)).unwrap(),
            DueckRegime::Product
        );
        assert_eq!(
            DueckRegime::classify(&law(0.55)).unwrap(),
            DueckRegime::Intermediate
        );
        assert_eq!(
            DueckRegime::classify(&law(0.75)).unwrap(),
            DueckRegime::Strong
        );
    }

    #[test]
    fn distortion_bound_for_three_quarters() {
        let ps = law(0.75);
        for beta in [0.0, 0.25, 0.5, 1.0] {
            let d = dueck_distortion_bound(&ps, beta).unwrap();
            assert!((d - (5.0 + beta) / 32.0).abs() < 1e-15);
        }
        assert_eq!(dueck_min_distortion(&ps).unwrap(), 5.0 / 32.0);
    }

    #[test]
    fn outer_sum_rate_closed_form() {
        let ps = law(0.75);
        assert_eq!(dueck_outer_sum_rate(&ps, 0.15).unwrap(), None);
        assert_eq!(dueck_outer_sum_rate(&ps, 5.0 / 32.0).unwrap(), Some(1.0));
        assert_eq!(
            dueck_outer_sum_rate(&ps, 11.0 / 64.0).unwrap(),
            Some(25.0 / 16.0)
        );
        assert_eq!(dueck_outer_sum_rate(&ps, 0.2).unwrap(), Some(25.0 / 16.0));
        let d = 0.165;
        let want = 1.0 + 9.0 / 16.0 * hb(32.0 * d - 5.0);
        assert!((dueck_outer_sum_rate(&ps, d).unwrap().unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn outer_corner_takes_the_binding_constraints() {
        let o = dueck_outer(&law(0.75), 0.5, 0.5, 0.5).unwrap();
        assert_eq!(o.corner().r1, 0.5);
        assert_eq!(o.corner().r2, 0.5);
        assert_eq!(o.distortion, 5.5 / 32.0);
    }

    #[test]
    fn inner_regime_checks() {
        let ps = law(0.75);
        assert!(matches!(dueck_inner(&ps, 0.6, 0.5), Err(Error::Regime(_))));
        let i = dueck_inner(&ps, 0.0, 0.7).unwrap();
        assert_eq!(i.distortion, 5.0 / 32.0);
        assert!(i.sum_rate < 1.0);
        let top = dueck_inner(&ps, 0.5, 1.0).unwrap();
        assert_eq!(top.sum_rate, 25.0 / 16.0);
        assert_eq!(top.distortion, 11.0 / 64.0);

        let mid = law(0.55);
        assert!(matches!(dueck_inner(&mid, 0.2, 0.5), Err(Error::Regime(_))));
        assert!(dueck_inner(&mid, 0.2, 0.9).is_ok());

        let low = dueck_inner(&law(0.25), 0.3, 0.1).unwrap();
        assert_eq!(low.regime, DueckRegime::Product);
        assert_eq!(low.distortion, 0.125);
    }

    #[test]
    fn inner_sum_rate_envelope() {
        let ps = law(0.75);
        assert_eq!(dueck_inner_sum_rate(&ps, 0.15).unwrap(), None);
        assert_eq!(dueck_inner_sum_rate(&ps, 5.0 / 32.0).unwrap(), Some(1.0));
        let top = dueck_inner_sum_rate(&ps, 11.0 / 64.0).unwrap().unwrap();
        assert!((top - 25.0 / 16.0).abs() < 1e-12);
        let low = dueck_inner_sum_rate(&law(0.25), 0.125).unwrap();
        assert_eq!(low, Some(1.0625));
    }

    #[test]
    fn golden_section_finds_interior_and_boundary_maxima() {
        let (x, fx) = golden_section_max(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-9 && fx <= 0.0);
        let (x, fx) = golden_section_max(|x| x, 0.0, 2.0, 1e-10);
        assert_eq!((x, fx), (2.0, 2.0));
    }

    #[test]
    fn inner_corners_respect_unit_rates() {
        let c = dueck_inner(&law(0.75), 0.5, 1.0).unwrap().corners();
        assert_eq!(c.len(), 2);
        assert_eq!((c[0].r1, c[0].r2), (1.0, 0.5625));
    }
}
