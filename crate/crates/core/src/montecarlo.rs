//! Seeded i.i.d. simulation of states, channel, feedback and estimation.
//!
//! Rounds are grouped in blocks of [`BLOCK_ROUNDS`]. Block `b` draws from a
//! ChaCha8 generator seeded with the configured seed on stream `b`, so the
//! result depends only on `(spec, config)`, never on the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{Receiver, SdmbcSpec};
use crate::error::{Error, Result};
use crate::estimation::{DistortionMeasure, EstimatorTable};
use crate::prob::Pmf;

/// Rounds simulated per random stream.
pub const BLOCK_ROUNDS: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub n: u64,
    pub seed: u64,
    pub input: Pmf,
}

impl SimConfig {
    pub fn new(n: u64, seed: u64, input: Pmf) -> Result<Self> {
        if n == 0 {
            return Err(Error::Shape("simulation needs at least one round".into()));
        }
        Ok(Self { n, seed, input })
    }
}

/// Empirical conditional frequencies of the feedback given the input.
#[derive(Debug, Clone, PartialEq)]
pub struct FeedbackStats {
    z_size: usize,
    input_counts: Vec<u64>,
    counts: Vec<u64>,
}

/// One `(x, z)` cell of [`FeedbackStats`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FeedbackCell {
    pub x: usize,
    pub z: usize,
    pub count: u64,
    pub frequency: Option<f64>,
    pub stderr: Option<f64>,
}

impl FeedbackStats {
    pub fn input_count(&self, x: usize) -> u64 {
        self.input_counts[x]
    }

    pub fn count(&self, x: usize, z: usize) -> u64 {
        self.counts[x * self.z_size + z]
    }

    /// Empirical `P(Z = z | X = x)`, or `None` if `x` was never drawn.
    pub fn frequency(&self, x: usize, z: usize) -> Option<f64> {
        let nx = self.input_counts[x];
        (nx > 0).then(|| self.count(x, z) as f64 / nx as f64)
    }

    /// Binomial standard error `sqrt(p (1-p) / n_x)` of [`frequency`](Self::frequency).
    pub fn stderr(&self, x: usize, z: usize) -> Option<f64> {
        let p = self.frequency(x, z)?;
        Some((p * (1.0 - p) / self.input_counts[x] as f64).sqrt())
    }

    pub fn cells(&self) -> Vec<FeedbackCell> {
        (0..self.input_counts.len())
            .flat_map(|x| (0..self.z_size).map(move |z| (x, z)))
            .map(|(x, z)| FeedbackCell {
                x,
                z,
                count: self.count(x, z),
                frequency: self.frequency(x, z),
                stderr: self.stderr(x, z),
            })
            .collect()
    }
}

impl Serialize for FeedbackStats {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.cells().serialize(serializer)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimResult {
    pub n: u64,
    pub seed: u64,
    /// Mean per-symbol distortion per receiver.
    pub mean: [f64; 2],
    /// Plug-in standard error of each mean.
    pub stderr: [f64; 2],
    pub feedback: FeedbackStats,
}

impl SimResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Cumulative table for inverse-CDF sampling.
struct Cdf {
    cum: Vec<f64>,
    last_positive: usize,
}

impl Cdf {
    fn new(probs: &[f64]) -> Self {
        let mut acc = 0.0;
        let cum = probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        let last_positive = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);
        Self { cum, last_positive }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> usize {
        let u: f64 = rng.random();
        self.cum
            .partition_point(|&c| c <= u)
            .min(self.last_positive)
    }
}

struct Tables {
    input: Cdf,
    states: Cdf,
    rows: Vec<Cdf>,
    s2: usize,
    x: usize,
    z: usize,
}

impl Tables {
    fn new(spec: &SdmbcSpec, input: &Pmf) -> Result<Self> {
        let a = spec.alphabets();
        if input.len() != a.x {
            return Err(Error::Shape(format!(
                "input law has {} symbols, |X| = {}",
                input.len(),
                a.x
            )));
        }
        let kernel = spec.transition();
        Ok(Self {
            input: Cdf::new(input.probs()),
            states: Cdf::new(spec.state_law().probs()),
            rows: (0..kernel.rows())
                .map(|r| Cdf::new(kernel.row_at(r)))
                .collect(),
            s2: a.s2,
            x: a.x,
            z: a.z,
        })
    }
}

#[derive(Clone)]
struct Partial {
    sum: [f64; 2],
    sum_sq: [f64; 2],
    input_counts: Vec<u64>,
    counts: Vec<u64>,
}

impl Partial {
    fn empty(x: usize, z: usize) -> Self {
        Self {
            sum: [0.0; 2],
            sum_sq: [0.0; 2],
            input_counts: vec![0; x],
            counts: vec![0; x * z],
        }
    }

    fn merge(mut self, other: Partial) -> Self {
        for k in 0..2 {
            self.sum[k] += other.sum[k];
            self.sum_sq[k] += other.sum_sq[k];
        }
        for (a, b) in self.input_counts.iter_mut().zip(other.input_counts) {
            *a += b;
        }
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }
}

fn run(
    spec: &SdmbcSpec,
    cfg: &SimConfig,
    scoring: Option<(&EstimatorTable, &DistortionMeasure)>,
) -> Result<Partial> {
    if cfg.n == 0 {
        return Err(Error::Shape("simulation needs at least one round".into()));
    }
    let t = Tables::new(spec, &cfg.input)?;
    let blocks = cfg.n.div_ceil(BLOCK_ROUNDS);
    let partials: Vec<Partial> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(b);
            let rounds = BLOCK_ROUNDS.min(cfg.n - b * BLOCK_ROUNDS);
            let mut part = Partial::empty(t.x, t.z);
            for _ in 0..rounds {
                let x = t.input.sample(&mut rng);
                let s = t.states.sample(&mut rng);
                let (s1, s2) = (s / t.s2, s % t.s2);
                let out = t.rows[s * t.x + x].sample(&mut rng);
                let z = out % t.z;
                part.input_counts[x] += 1;
                part.counts[x * t.z + z] += 1;
                if let Some((est, d)) = scoring {
                    for k in Receiver::BOTH {
                        let sk = if k == Receiver::First { s1 } else { s2 };
                        let v = d.matrix(k).get(sk, est.decision(k, x, z));
                        part.sum[k.index()] += v;
                        part.sum_sq[k.index()] += v * v;
                    }
                }
            }
            part
        })
        .collect();
    Ok(partials
        .into_iter()
        .fold(Partial::empty(t.x, t.z), Partial::merge))
}

/// Simulates `cfg.n` i.i.d. rounds and scores the estimator on each.
pub fn simulate(
    spec: &SdmbcSpec,
    estimator: &EstimatorTable,
    d: &DistortionMeasure,
    cfg: &SimConfig,
) -> Result<SimResult> {
    let a = spec.alphabets();
    if estimator.x_size() != a.x || estimator.z_size() != a.z {
        return Err(Error::Shape("estimator does not match the channel".into()));
    }
    for k in Receiver::BOTH {
        if d.matrix(k).states() != a.state(k) {
            return Err(Error::Shape(format!(
                "distortion of receiver {} does not match |S{}|",
                k.number(),
                k.number()
            )));
        }
    }
    let part = run(spec, cfg, Some((estimator, d)))?;
    let n = cfg.n as f64;
    let mean = part.sum.map(|s| s / n);
    let stderr = [0, 1].map(|k| {
        let var = (part.sum_sq[k] / n - mean[k] * mean[k]).max(0.0);
        (var / n).sqrt()
    });
    Ok(SimResult {
        n: cfg.n,
        seed: cfg.seed,
        mean,
        stderr,
        feedback: FeedbackStats {
            z_size: a.z,
            input_counts: part.input_counts,
            counts: part.counts,
        },
    })
}

/// Empirical `P(Z | X)` from `cfg.n` simulated rounds.
pub fn simulate_feedback_stats(spec: &SdmbcSpec, cfg: &SimConfig) -> Result<FeedbackStats> {
    let part = run(spec, cfg, None)?;
    Ok(FeedbackStats {
        z_size: spec.alphabets().z,
        input_counts: part.input_counts,
        counts: part.counts,
    })
}
