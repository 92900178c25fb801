//! Python bindings: channels, the optimal estimator, closed-form bounds and
//! the Monte Carlo simulator. Library errors surface as `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use sdmbc_core::channel::{self as ch, NoTradeoffWitness, Receiver, SdmbcSpec};
use sdmbc_core::estimation::{self, EstimatorTable};
use sdmbc_core::montecarlo::{self, SimConfig};
use sdmbc_core::prob::{self, Pmf};
use sdmbc_core::regions::{self, figures, RegionPoint};

fn err(e: sdmbc_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn receiver(k: usize) -> PyResult<Receiver> {
    Receiver::from_number(k).map_err(err)
}

fn bern(ps1: f64) -> PyResult<Pmf> {
    Pmf::bernoulli(ps1).map_err(err)
}

type Point = (f64, f64, f64, f64);

fn tuple(p: RegionPoint) -> Point {
    (p.r1, p.r2, p.d1, p.d2)
}

/// A two-receiver state-dependent broadcast channel with generalized feedback.
#[pyclass(frozen)]
struct Channel {
    spec: SdmbcSpec,
}

#[pymethods]
impl Channel {
    /// `Y_k = X S_k` with output feedback.
    #[staticmethod]
    #[pyo3(signature = (q = 0.6, gamma = 0.5))]
    fn multiplicative(q: f64, gamma: f64) -> PyResult<Self> {
        Ok(Self {
            spec: ch::multiplicative_bc(q, gamma).map_err(err)?,
        })
    }

    /// `Y1 = X S1`, `Y2 = (1 - X) S2` with output feedback.
    #[staticmethod]
    #[pyo3(signature = (q = 0.6, gamma = 0.5))]
    fn flipping(q: f64, gamma: f64) -> PyResult<Self> {
        Ok(Self {
            spec: ch::flipping_bc(q, gamma).map_err(err)?,
        })
    }

    /// Erasure BC with independent state and feedback-erasure bits.
    #[staticmethod]
    #[pyo3(signature = (s1 = 0.3, s2 = 0.3, e1 = 0.2, e2 = 0.2))]
    fn erasure(s1: f64, s2: f64, e1: f64, e2: f64) -> PyResult<Self> {
        let law = ch::erasure::independent_law(s1, s2, e1, e2).map_err(err)?;
        Ok(Self {
            spec: ch::erasure_bc(&law).map_err(err)?,
        })
    }

    /// Dueck's BC with iid states of law `P_S(1) = ps1`.
    #[staticmethod]
    #[pyo3(signature = (ps1 = 0.75))]
    fn dueck(ps1: f64) -> PyResult<Self> {
        Ok(Self {
            spec: ch::dueck_bc(&bern(ps1)?).map_err(err)?,
        })
    }

    /// Parses a JSON channel document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            spec: ch::load_channel(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        ch::save_channel(&self.spec)
    }

    #[getter]
    fn name(&self) -> String {
        self.spec.name().to_string()
    }

    /// Alphabet sizes `(x, y1, y2, z, s1, s2)`.
    #[getter]
    fn sizes(&self) -> (usize, usize, usize, usize, usize, usize) {
        let a = self.spec.alphabets();
        (a.x, a.y1, a.y2, a.z, a.s1, a.s2)
    }

    fn is_degraded(&self) -> bool {
        ch::check_physically_degraded(&self.spec).holds()
    }

    fn degraded_report(&self) -> String {
        ch::check_physically_degraded(&self.spec).to_string()
    }

    /// Whether the feedback summaries `psi1`, `psi2` witness the no-tradeoff
    /// conditions.
    #[pyo3(signature = (psi1, psi2, samples = 64, seed = 0))]
    fn no_tradeoff(
        &self,
        psi1: Vec<usize>,
        psi2: Vec<usize>,
        samples: usize,
        seed: u64,
    ) -> PyResult<bool> {
        let w = NoTradeoffWitness { psi1, psi2 };
        Ok(ch::check_no_tradeoff(&self.spec, &w, samples, seed)
            .map_err(err)?
            .holds())
    }

    fn estimator(&self) -> PyResult<Estimator> {
        let table =
            estimation::optimal_estimator(&self.spec, self.spec.distortion()).map_err(err)?;
        Ok(Estimator { table })
    }

    /// Exact `(D1, D2)` of the optimal estimator under the input law.
    fn expected_distortion(&self, input: Vec<f64>) -> PyResult<(f64, f64)> {
        let law = Pmf::new(input).map_err(err)?;
        let d = self.spec.distortion();
        let est = estimation::optimal_estimator(&self.spec, d).map_err(err)?;
        let [d1, d2] = estimation::expected_distortion(&self.spec, &law, &est, d).map_err(err)?;
        Ok((d1, d2))
    }

    /// Simulated `((mean1, mean2), (stderr1, stderr2))` over `n` rounds.
    #[pyo3(signature = (input, n = 1_000_000, seed = 0))]
    fn simulate(
        &self,
        py: Python<'_>,
        input: Vec<f64>,
        n: u64,
        seed: u64,
    ) -> PyResult<((f64, f64), (f64, f64))> {
        let cfg = SimConfig::new(n, seed, Pmf::new(input).map_err(err)?).map_err(err)?;
        let spec = &self.spec;
        let r = py
            .detach(|| {
                let est = estimation::optimal_estimator(spec, spec.distortion())?;
                montecarlo::simulate(spec, &est, spec.distortion(), &cfg)
            })
            .map_err(err)?;
        Ok(((r.mean[0], r.mean[1]), (r.stderr[0], r.stderr[1])))
    }
}

/// The distortion-optimal symbolwise estimator table of a channel.
#[pyclass(frozen)]
struct Estimator {
    table: EstimatorTable,
}

#[pymethods]
impl Estimator {
    /// Estimate of receiver `k` (1 or 2) at input `x` and feedback `z`.
    fn decision(&self, k: usize, x: usize, z: usize) -> PyResult<usize> {
        self.check(x, z)?;
        Ok(self.table.decision(receiver(k)?, x, z))
    }

    fn conditional_distortion(&self, k: usize, x: usize, z: usize) -> PyResult<f64> {
        self.check(x, z)?;
        Ok(self.table.conditional_distortion(receiver(k)?, x, z))
    }

    fn is_reachable(&self, x: usize, z: usize) -> PyResult<bool> {
        self.check(x, z)?;
        Ok(self.table.is_reachable(x, z))
    }

    fn to_csv(&self) -> String {
        self.table.to_csv()
    }
}

impl Estimator {
    fn check(&self, x: usize, z: usize) -> PyResult<()> {
        if x >= self.table.x_size() || z >= self.table.z_size() {
            return Err(PyValueError::new_err(format!(
                "(x={x}, z={z}) is outside the table"
            )));
        }
        Ok(())
    }
}

#[pyfunction]
fn binary_entropy(p: f64) -> PyResult<f64> {
    prob::binary_entropy(p).map_err(err)
}

/// `(R1, R2, D1, D2)` of the multiplicative BC.
#[pyfunction]
fn corollary1_region(q: f64, gamma: f64, p: f64, r: f64) -> PyResult<Point> {
    regions::corollary1_region(q, gamma, p, r)
        .map(tuple)
        .map_err(err)
}

/// `(R1, R2, D1, D2)` of the flipping BC.
#[pyfunction]
fn corollary2_region(q: f64, gamma: f64, p: f64, r: f64) -> PyResult<Point> {
    regions::corollary2_region(q, gamma, p, r)
        .map(tuple)
        .map_err(err)
}

/// Regime number (1, 2 or 3) of Dueck's BC for `P_S(1) = ps1`.
#[pyfunction]
fn dueck_regime(ps1: f64) -> PyResult<usize> {
    Ok(regions::DueckRegime::classify(&bern(ps1)?)
        .map_err(err)?
        .number())
}

#[pyfunction]
fn dueck_min_distortion(ps1: f64) -> PyResult<f64> {
    regions::dueck_min_distortion(&bern(ps1)?).map_err(err)
}

/// Outer-bound sum-rate at symmetric distortion `d`, or `None` if infeasible.
#[pyfunction]
fn dueck_outer_sum_rate(ps1: f64, d: f64) -> PyResult<Option<f64>> {
    regions::dueck_outer_sum_rate(&bern(ps1)?, d).map_err(err)
}

/// Inner-bound sum-rate at symmetric distortion `d`, or `None` if infeasible.
#[pyfunction]
fn dueck_inner_sum_rate(ps1: f64, d: f64) -> PyResult<Option<f64>> {
    regions::dueck_inner_sum_rate(&bern(ps1)?, d).map_err(err)
}

/// Rows `(D, outer, inner, resource_splitting, time_sharing)` of the Dueck
/// sum-rate figure; cells outside a curve's range are `None`.
#[pyfunction]
#[pyo3(signature = (ps1 = 0.75))]
#[allow(clippy::type_complexity)]
fn fig4_rows(ps1: f64) -> PyResult<Vec<(f64, Option<f64>, Option<f64>, Option<f64>, Option<f64>)>> {
    let rows = figures::fig4_rows(&bern(ps1)?, &figures::fig4_distortions()).map_err(err)?;
    Ok(rows
        .into_iter()
        .map(|r| (r.d, r.outer, r.inner, r.resource_splitting, r.time_sharing))
        .collect())
}

/// Non-dominated `(R1, R2, D1, D2)` points.
#[pyfunction]
fn pareto_frontier(points: Vec<Point>) -> PyResult<Vec<Point>> {
    let pts = points
        .into_iter()
        .map(|(r1, r2, d1, d2)| RegionPoint::new(r1, r2, d1, d2))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    Ok(regions::pareto_frontier(pts)
        .into_points()
        .into_iter()
        .map(tuple)
        .collect())
}

#[pymodule]
mod sdmbc {
    #[pymodule_export]
    use super::{
        binary_entropy, corollary1_region, corollary2_region, dueck_inner_sum_rate,
        dueck_min_distortion, dueck_outer_sum_rate, dueck_regime, fig4_rows, pareto_frontier,
        Channel, Estimator,
    };
}
