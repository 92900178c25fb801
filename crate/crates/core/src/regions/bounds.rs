//! Information-theoretic bounds evaluated for explicit auxiliary laws, and
//! grid envelopes over those laws.

use rayon::prelude::*;

use super::grid::SimplexGrid;
use super::point::{pareto_frontier, ParetoSet, RegionPoint};
use crate::channel::{check_physically_degraded, dueck, SdmbcSpec};
use crate::error::{check_unit, Error, Result};
use crate::estimation::{
    expected_distortion, optimal_estimator, DistortionMeasure, EstimatorTable,
};
use crate::prob::{cond_mutual_information as cmi, var, Kernel, LabeledJoint, Pmf};

const U: &str = "U";
const U0: &str = "U0";
const U1: &str = "U1";
const U2: &str = "U2";
const V0: &str = "V0";
const V1: &str = "V1";
const V2: &str = "V2";

/// Dominant corners of `{R1 <= a, R2 <= b, R1 + R2 <= c}` (bounds clamped
/// at zero).
pub fn rate_corners(a: f64, b: f64, c: f64) -> Vec<(f64, f64)> {
    let (a, b, c) = (a.max(0.0), b.max(0.0), c.max(0.0));
    let first = {
        let r1 = a.min(c);
        (r1, b.min(c - r1))
    };
    let second = {
        let r2 = b.min(c);
        (a.min(c - r2), r2)
    };
    if first == second {
        vec![first]
    } else {
        vec![first, second]
    }
}

fn with_distortion(corners: Vec<(f64, f64)>, d: [f64; 2]) -> Vec<RegionPoint> {
    corners
        .into_iter()
        .map(|(r1, r2)| RegionPoint {
            r1,
            r2,
            d1: d[0],
            d2: d[1],
        })
        .collect()
}

/// Rates and distortions of one joint law `P_{UX}` on a physically degraded
/// channel: `R1 = I(U; Y1 | S1)`, `R2 = I(X; Y2 | S2, U)`.
///
/// `p_ux` is row-major over `(u, x)`.
pub fn degraded_point(
    spec: &SdmbcSpec,
    estimator: &EstimatorTable,
    d: &DistortionMeasure,
    u_card: usize,
    p_ux: &[f64],
) -> Result<RegionPoint> {
    let input = LabeledJoint::from_dense(&[U, var::X], &[u_card, spec.alphabets().x], p_ux)?;
    let joint = spec.compose_joint(&input)?;
    let r1 = cmi(&joint, &[U], &[var::Y1], &[var::S1])?;
    let r2 = cmi(&joint, &[var::X], &[var::Y2], &[var::S2, U])?;
    let p_x = Pmf::new(input.marginal(&[var::X])?.to_dense())?;
    let [d1, d2] = expected_distortion(spec, &p_x, estimator, d)?;
    RegionPoint::new(r1, r2, d1, d2)
}

/// Every grid point of the degraded-channel region, in grid order.
///
/// `P_{UX} = P_U P_{X|U}` with `P_U` and every row `P_{X|U=u}` on the
/// simplex lattice of resolution `grid_res`. Rows of zero-mass `u` are not
/// varied. Fails unless the channel is physically degraded.
pub fn degraded_points(
    spec: &SdmbcSpec,
    d: &DistortionMeasure,
    u_card: usize,
    grid_res: usize,
    cap: u64,
) -> Result<Vec<RegionPoint>> {
    let verdict = check_physically_degraded(spec);
    if !verdict.holds() {
        return Err(Error::NotDegraded(verdict.to_string()));
    }
    let laws = factorized_joints(u_card, spec.alphabets().x, grid_res, cap)?;
    let estimator = optimal_estimator(spec, d)?;
    laws.par_iter()
        .map(|p| degraded_point(spec, &estimator, d, u_card, p))
        .collect()
}

/// Row-major `(u, x)` joints `P_U(u) P_{X|U}(x|u)` over the lattices, in
/// lexicographic order of `(P_U, row index of u = 0, .., row index of
/// u = u_card - 1)`.
fn factorized_joints(u_card: usize, x: usize, res: usize, cap: u64) -> Result<Vec<Vec<f64>>> {
    let marginals = SimplexGrid::new(u_card, res)?;
    let rows_grid = SimplexGrid::new(x, res)?;
    let count = marginals.count() * rows_grid.count().powi(u_card as i32);
    if count > cap as f64 {
        return Err(Error::GridTooLarge { count, cap });
    }
    let rows = rows_grid.points();
    let mut out = Vec::new();
    for p_u in marginals.points() {
        let mut pick = vec![0usize; u_card];
        loop {
            out.push(
                (0..u_card)
                    .flat_map(|u| {
                        let w = p_u[u];
                        rows[pick[u]].iter().map(move |&px| w * px)
                    })
                    .collect(),
            );
            let next = (0..u_card)
                .rev()
                .find(|&u| p_u[u] > 0.0 && pick[u] + 1 < rows.len());
            let Some(u) = next else { break };
            pick[u] += 1;
            pick[u + 1..].iter_mut().for_each(|k| *k = 0);
        }
    }
    Ok(out)
}

/// Pareto frontier of [`degraded_points`]. A common default for `u_card`
/// is `|X| + 1`.
pub fn degraded_region(
    spec: &SdmbcSpec,
    d: &DistortionMeasure,
    u_card: usize,
    grid_res: usize,
    cap: u64,
) -> Result<ParetoSet> {
    Ok(pareto_frontier(degraded_points(
        spec, d, u_card, grid_res, cap,
    )?))
}

/// Auxiliaries of the general outer bound: an input law and one test channel
/// `P_{U_k | X}` per receiver (input shape `[|X|]`).
#[derive(Debug, Clone, PartialEq)]
pub struct OuterAux {
    pub input: Pmf,
    pub u1: Kernel,
    pub u2: Kernel,
}

/// Right-hand sides of the outer bound for one auxiliary choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OuterBound {
    /// `I(U1; Y1 | S1)`.
    pub r1: f64,
    /// `I(X; Y1, Y2 | S1, S2, U1)`.
    pub sum_via_u1: f64,
    /// `I(X; Y1, Y2 | S1, S2, U2)`.
    pub sum_via_u2: f64,
    /// `I(U2; Y2 | S2)`.
    pub r2: f64,
    pub d1: f64,
    pub d2: f64,
}

impl OuterBound {
    pub fn sum_rate(&self) -> f64 {
        self.sum_via_u1.min(self.sum_via_u2)
    }

    pub fn corners(&self) -> Vec<RegionPoint> {
        with_distortion(
            rate_corners(self.r1, self.r2, self.sum_rate()),
            [self.d1, self.d2],
        )
    }
}

/// `(I(U; Y1 | S1), I(X; Y1, Y2 | S1, S2, U), I(U; Y2 | S2))` for
/// `U ~ P_{U|X}` attached to the input law.
fn outer_terms(spec: &SdmbcSpec, p_x: &Pmf, u_given_x: &Kernel) -> Result<[f64; 3]> {
    let x = spec.alphabets().x;
    if u_given_x.input_shape() != [x] || u_given_x.output_shape().len() != 1 {
        return Err(Error::Shape(format!(
            "auxiliary kernel must map [|X|] = [{x}] to one variable, got {:?} -> {:?}",
            u_given_x.input_shape(),
            u_given_x.output_shape()
        )));
    }
    let u_size = u_given_x.output_shape()[0];
    let input = spec
        .input_joint(p_x)?
        .attach(&[var::X], u_given_x, &[(U, u_size)])?;
    let joint = spec.compose_joint(&input)?;
    Ok([
        cmi(&joint, &[U], &[var::Y1], &[var::S1])?,
        cmi(
            &joint,
            &[var::X],
            &[var::Y1, var::Y2],
            &[var::S1, var::S2, U],
        )?,
        cmi(&joint, &[U], &[var::Y2], &[var::S2])?,
    ])
}

pub fn theorem1_outer(
    spec: &SdmbcSpec,
    d: &DistortionMeasure,
    aux: &OuterAux,
) -> Result<OuterBound> {
    let estimator = optimal_estimator(spec, d)?;
    let [d1, d2] = expected_distortion(spec, &aux.input, &estimator, d)?;
    let [r1, sum_via_u1, _] = outer_terms(spec, &aux.input, &aux.u1)?;
    let [_, sum_via_u2, r2] = outer_terms(spec, &aux.input, &aux.u2)?;
    Ok(OuterBound {
        r1,
        sum_via_u1,
        sum_via_u2,
        r2,
        d1,
        d2,
    })
}

/// Every test channel `P_{U|X}` whose rows lie on the simplex lattice.
fn kernel_grid(x: usize, u_card: usize, grid_res: usize) -> Result<Vec<Kernel>> {
    let rows = SimplexGrid::new(u_card, grid_res)?.points();
    let mut choice = vec![0usize; x];
    let mut out = Vec::new();
    loop {
        let table = choice
            .iter()
            .flat_map(|&i| rows[i].iter().copied())
            .collect();
        out.push(Kernel::new(vec![x], vec![u_card], table)?);
        let mut pos = 0;
        while pos < x {
            choice[pos] += 1;
            if choice[pos] < rows.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
        if pos == x {
            return Ok(out);
        }
    }
}

/// Pareto frontier of the outer bound's union over a grid of input laws and
/// test channels with `|U_k| = u_card`.
pub fn theorem1_envelope(
    spec: &SdmbcSpec,
    d: &DistortionMeasure,
    u_card: usize,
    grid_res: usize,
    cap: u64,
) -> Result<ParetoSet> {
    let x = spec.alphabets().x;
    let inputs = SimplexGrid::new(x, grid_res)?;
    let row_count = SimplexGrid::new(u_card, grid_res)?.count();
    let kernels = row_count.powi(x as i32);
    let count = inputs.count() * kernels * kernels;
    if count > cap as f64 {
        return Err(Error::GridTooLarge { count, cap });
    }
    let kernels = kernel_grid(x, u_card, grid_res)?;
    let estimator = optimal_estimator(spec, d)?;
    let per_input: Vec<Vec<RegionPoint>> = inputs
        .points()
        .into_par_iter()
        .map(|p| -> Result<Vec<RegionPoint>> {
            let p_x = Pmf::new(p)?;
            let dist = expected_distortion(spec, &p_x, &estimator, d)?;
            let terms = kernels
                .iter()
                .map(|k| outer_terms(spec, &p_x, k))
                .collect::<Result<Vec<_>>>()?;
            let mut pts = Vec::new();
            for [r1, sum1, _] in &terms {
                for [_, sum2, r2] in &terms {
                    pts.extend(with_distortion(
                        rate_corners(*r1, *r2, sum1.min(*sum2)),
                        dist,
                    ));
                }
            }
            Ok(pareto_frontier(pts).into_points())
        })
        .collect::<Result<_>>()?;
    Ok(pareto_frontier(per_input.into_iter().flatten()))
}

/// Auxiliaries of the inner bound: a joint law over `(U0, U1, U2, X)` and a
/// kernel `P_{V0 V1 V2 | U0 U1 U2 Z}`.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerAux {
    pub input: LabeledJoint,
    pub v_kernel: Kernel,
}

/// Right-hand sides of the inner bound, each clamped at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerBound {
    pub r1: f64,
    pub r2: f64,
    pub sum: f64,
    pub d1: f64,
    pub d2: f64,
}

impl InnerBound {
    pub fn corners(&self) -> Vec<RegionPoint> {
        with_distortion(rate_corners(self.r1, self.r2, self.sum), [self.d1, self.d2])
    }

    /// Largest admissible `R1 + R2`.
    pub fn max_sum_rate(&self) -> f64 {
        self.sum.min(self.r1 + self.r2)
    }
}

pub fn prop3_inner(spec: &SdmbcSpec, d: &DistortionMeasure, aux: &InnerAux) -> Result<InnerBound> {
    let input = aux.input.marginal(&[U0, U1, U2, var::X])?;
    let sizes = input.sizes().to_vec();
    let z = spec.alphabets().z;
    let expected_in = [sizes[0], sizes[1], sizes[2], z];
    if aux.v_kernel.input_shape() != expected_in || aux.v_kernel.output_shape().len() != 3 {
        return Err(Error::Shape(format!(
            "V kernel must map [|U0|, |U1|, |U2|, |Z|] = {expected_in:?} to (V0, V1, V2), got {:?} -> {:?}",
            aux.v_kernel.input_shape(),
            aux.v_kernel.output_shape()
        )));
    }
    let vs = aux.v_kernel.output_shape();
    let joint = spec.compose_joint(&input)?.attach(
        &[U0, U1, U2, var::Z],
        &aux.v_kernel,
        &[(V0, vs[0]), (V1, vs[1]), (V2, vs[2])],
    )?;
    let all = [U0, U1, U2, var::Z];
    let r1 = cmi(&joint, &[U0, U1], &[var::Y1, V1], &[var::S1])?
        - cmi(&joint, &all, &[V0, V1], &[var::S1, var::Y1])?;
    let r2 = cmi(&joint, &[U0, U2], &[var::Y2, V2], &[var::S2])?
        - cmi(&joint, &all, &[V0, V2], &[var::S2, var::Y2])?;
    let common = cmi(&joint, &[U0], &[var::Y1, V1], &[var::S1])?.min(cmi(
        &joint,
        &[U0],
        &[var::Y2, V2],
        &[var::S2],
    )?);
    let v0_leak = cmi(&joint, &all, &[V0], &[var::S1, var::Y1])?.max(cmi(
        &joint,
        &all,
        &[V0],
        &[var::S2, var::Y2],
    )?);
    let sum = cmi(&joint, &[U1], &[var::Y1, V1], &[U0, var::S1])?
        + cmi(&joint, &[U2], &[var::Y2, V2], &[U0, var::S2])?
        + common
        - cmi(&joint, &[U1], &[U2], &[U0])?
        - cmi(&joint, &all, &[V1], &[V0, var::S1, var::Y1])?
        - cmi(&joint, &all, &[V2], &[V0, var::S2, var::Y2])?
        - v0_leak;

    let estimator = optimal_estimator(spec, d)?;
    let p_x = Pmf::new(input.marginal(&[var::X])?.to_dense())?;
    let [d1, d2] = expected_distortion(spec, &p_x, &estimator, d)?;
    Ok(InnerBound {
        r1: r1.max(0.0),
        r2: r2.max(0.0),
        sum: sum.max(0.0),
        d1,
        d2,
    })
}

/// Built-in auxiliary choices for Dueck's BC.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DueckPreset {
    /// `V0 = X1 xor Y'1`, `V1 = (X0, X1)`, `V2 = (X0, X2)`.
    FeedbackFirst,
    /// `V0 = X2 xor Y'2`, `V1 = (X0, X1)`, `V2 = (X0, X2)`.
    FeedbackSecond,
    /// `V0 = V1 = V2 = 0`: feedback is not used for communication.
    NoFeedback,
}

impl DueckPreset {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "feedback1" => Ok(Self::FeedbackFirst),
            "feedback2" => Ok(Self::FeedbackSecond),
            "no-feedback" => Ok(Self::NoFeedback),
            other => Err(Error::Unsupported(format!(
                "unknown preset '{other}' (expected feedback1, feedback2 or no-feedback)"
            ))),
        }
    }
}

/// `U_i = X_i` with `X0 ~ Bern(1/2)` independent of `(X1, X2)`,
/// `P(X1 != X2) = beta`, and the V kernel of the chosen preset.
pub fn dueck_preset(preset: DueckPreset, beta: f64) -> Result<InnerAux> {
    let law = dueck::coupled_input(check_unit("beta", beta)?)?;
    let cells = (0..8).map(|x| {
        let (x0, x1, x2) = dueck::input_bits(x);
        (vec![x0, x1, x2, x], law.get(x))
    });
    let input = LabeledJoint::from_cells(&[U0, U1, U2, var::X], &[2, 2, 2, 8], cells)?;
    let v_kernel = match preset {
        DueckPreset::NoFeedback => {
            Kernel::deterministic(vec![2, 2, 2, 4], vec![1, 1, 1], |_| vec![0, 0, 0])?
        }
        _ => Kernel::deterministic(vec![2, 2, 2, 4], vec![2, 4, 4], |c| {
            let (u0, u1, u2, z) = (c[0], c[1], c[2], c[3]);
            let (y1, y2) = dueck::feedback_bits(z);
            let v0 = if preset == DueckPreset::FeedbackFirst {
                u1 ^ y1
            } else {
                u2 ^ y2
            };
            vec![v0, 2 * u0 + u1, 2 * u0 + u2]
        })?,
    };
    Ok(InnerAux { input, v_kernel })
}
