//! Distortion-optimal symbolwise state estimation at the transmitter.
//!
//! Given the input `x` and feedback `z` of one channel use, the estimate of
//! receiver `k`'s state minimizes the posterior expected distortion
//! `sum_s P(s_k = s | x, z) d_k(s, shat)`. The posterior does not depend on
//! the input law because states are independent of inputs.

use serde::Serialize;

use crate::channel::{Receiver, SdmbcSpec};
use crate::error::{Error, Result};
use crate::prob::Pmf;

/// Default cap on the number of estimators enumerated by
/// [`brute_force_estimator`], per receiver.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 10_000_000;

/// Per-symbol distortion `d(s, shat) >= 0`, row-major over `(s, shat)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistortionMatrix {
    states: usize,
    recon: usize,
    values: Vec<f64>,
}

impl DistortionMatrix {
    pub fn new(states: usize, recon: usize, values: Vec<f64>) -> Result<Self> {
        if states == 0 || recon == 0 || values.len() != states * recon {
            return Err(Error::Shape(format!(
                "distortion matrix needs {states} x {recon} entries, got {}",
                values.len()
            )));
        }
        if let Some(&bad) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidEntry {
                what: "distortion matrix".into(),
                value: bad,
            });
        }
        Ok(Self {
            states,
            recon,
            values,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let recon = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != recon) {
            return Err(Error::Shape("ragged distortion matrix".into()));
        }
        Self::new(rows.len(), recon, rows.concat())
    }

    pub fn from_fn(states: usize, recon: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let values = (0..states)
            .flat_map(|s| (0..recon).map(move |r| (s, r)))
            .map(|(s, r)| f(s, r))
            .collect();
        Self::new(states, recon, values).expect("generated distortion matrix")
    }

    /// `d(s, shat) = 1{s != shat}`.
    pub fn hamming(states: usize, recon: usize) -> Self {
        Self::from_fn(states, recon, |s, r| if s == r { 0.0 } else { 1.0 })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn reconstructions(&self) -> usize {
        self.recon
    }

    pub fn get(&self, s: usize, shat: usize) -> f64 {
        self.values[s * self.recon + shat]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.values
            .chunks(self.recon)
            .map(<[f64]>::to_vec)
            .collect()
    }
}

/// One distortion matrix per receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct DistortionMeasure {
    receivers: [DistortionMatrix; 2],
}

impl DistortionMeasure {
    pub fn new(first: DistortionMatrix, second: DistortionMatrix) -> Self {
        Self {
            receivers: [first, second],
        }
    }

    /// Hamming distortion for both receivers.
    pub fn hamming(states: usize, recon: usize) -> Self {
        Self::new(
            DistortionMatrix::hamming(states, recon),
            DistortionMatrix::hamming(states, recon),
        )
    }

    pub fn matrix(&self, k: Receiver) -> &DistortionMatrix {
        &self.receivers[k.index()]
    }

    fn check(&self, spec: &SdmbcSpec) -> Result<()> {
        for k in Receiver::BOTH {
            let states = spec.alphabets().state(k);
            if self.matrix(k).states() != states {
                return Err(Error::Shape(format!(
                    "distortion of receiver {} has {} state rows, |S{}| = {states}",
                    k.number(),
                    self.matrix(k).states(),
                    k.number()
                )));
            }
        }
        Ok(())
    }
}

/// Unnormalized `P(s_k, z | x)` for all `s_k`.
fn state_feedback_mass(spec: &SdmbcSpec, k: Receiver, x: usize, z: usize) -> Vec<f64> {
    let a = spec.alphabets();
    let mut mass = vec![0.0; a.state(k)];
    for s1 in 0..a.s1 {
        for s2 in 0..a.s2 {
            let ps = spec.state_prob(s1, s2);
            if ps == 0.0 {
                continue;
            }
            let s = if k == Receiver::First { s1 } else { s2 };
            mass[s] += ps * spec.feedback_given_states(s1, s2, x)[z];
        }
    }
    mass
}

/// `P(S_k = . | X = x, Z = z)`.
pub fn posterior_state(spec: &SdmbcSpec, k: Receiver, x: usize, z: usize) -> Result<Pmf> {
    let a = spec.alphabets();
    if x >= a.x || z >= a.z {
        return Err(Error::Shape(format!(
            "(x={x}, z={z}) outside the channel alphabets"
        )));
    }
    let mass = state_feedback_mass(spec, k, x, z);
    let total: f64 = mass.iter().sum();
    if total <= 0.0 {
        return Err(Error::Unreachable { x, z });
    }
    Pmf::new(mass.iter().map(|m| m / total).collect())
}

/// Deterministic symbolwise estimators `(x, z) -> shat_k` for both receivers,
/// with the conditional distortion each decision achieves.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorTable {
    x_size: usize,
    z_size: usize,
    decisions: [Vec<usize>; 2],
    cond_distortion: [Vec<f64>; 2],
    reachable: Vec<bool>,
}

/// One exported estimator entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimatorRow {
    pub receiver: usize,
    pub x: usize,
    pub z: usize,
    pub shat: usize,
    pub distortion: f64,
    pub reachable: bool,
}

impl EstimatorTable {
    pub fn decision(&self, k: Receiver, x: usize, z: usize) -> usize {
        self.decisions[k.index()][x * self.z_size + z]
    }

    /// `d'_k(x, z)`: posterior expected distortion of the decision; zero on
    /// unreachable pairs.
    pub fn conditional_distortion(&self, k: Receiver, x: usize, z: usize) -> f64 {
        self.cond_distortion[k.index()][x * self.z_size + z]
    }

    pub fn is_reachable(&self, x: usize, z: usize) -> bool {
        self.reachable[x * self.z_size + z]
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn z_size(&self) -> usize {
        self.z_size
    }

    pub fn rows(&self) -> Vec<EstimatorRow> {
        let mut rows = Vec::with_capacity(2 * self.x_size * self.z_size);
        for k in Receiver::BOTH {
            for x in 0..self.x_size {
                for z in 0..self.z_size {
                    rows.push(EstimatorRow {
                        receiver: k.number(),
                        x,
                        z,
                        shat: self.decision(k, x, z),
                        distortion: self.conditional_distortion(k, x, z),
                        reachable: self.is_reachable(x, z),
                    });
                }
            }
        }
        rows
    }

    /// `k,x,z,shat,d_prime` rows, unreachable pairs included.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,x,z,shat,d_prime\n");
        for r in self.rows() {
            out.push_str(&format!(
                "{},{},{},{},{:.9}\n",
                r.receiver, r.x, r.z, r.shat, r.distortion
            ));
        }
        out
    }

    fn from_decisions(spec: &SdmbcSpec, d: &DistortionMeasure, decisions: [Vec<usize>; 2]) -> Self {
        let a = spec.alphabets();
        let mut reachable = vec![false; a.x * a.z];
        for x in 0..a.x {
            for (z, p) in spec.feedback_given_input(x).into_iter().enumerate() {
                reachable[x * a.z + z] = p > 0.0;
            }
        }
        let cond_distortion = Receiver::BOTH.map(|k| {
            let m = d.matrix(k);
            (0..a.x * a.z)
                .map(|i| {
                    let (x, z) = (i / a.z, i % a.z);
                    match posterior_state(spec, k, x, z) {
                        Ok(post) => post
                            .probs()
                            .iter()
                            .enumerate()
                            .map(|(s, p)| p * m.get(s, decisions[k.index()][i]))
                            .sum(),
                        Err(_) => 0.0,
                    }
                })
                .collect()
        });
        Self {
            x_size: a.x,
            z_size: a.z,
            decisions,
            cond_distortion,
            reachable,
        }
    }
}

/// The distortion-optimal estimator. Ties go to the lowest reconstruction
/// index; unreachable pairs get index 0.
pub fn optimal_estimator(spec: &SdmbcSpec, d: &DistortionMeasure) -> Result<EstimatorTable> {
    d.check(spec)?;
    let a = spec.alphabets();
    let decisions = Receiver::BOTH.map(|k| {
        let m = d.matrix(k);
        (0..a.x * a.z)
            .map(|i| match posterior_state(spec, k, i / a.z, i % a.z) {
                Ok(post) => {
                    let mut best = (0, f64::INFINITY);
                    for shat in 0..m.reconstructions() {
                        let cost: f64 = post
                            .probs()
                            .iter()
                            .enumerate()
                            .map(|(s, p)| p * m.get(s, shat))
                            .sum();
                        if cost < best.1 {
                            best = (shat, cost);
                        }
                    }
                    best.0
                }
                Err(_) => 0,
            })
            .collect()
    });
    Ok(EstimatorTable::from_decisions(spec, d, decisions))
}

/// `E[d_k(S_k, shat_k(X, Z))]` for both receivers by exact summation over
/// `P_X P_{S1 S2} P_{Z | S1 S2 X}`.
pub fn expected_distortion(
    spec: &SdmbcSpec,
    input_law: &Pmf,
    estimator: &EstimatorTable,
    d: &DistortionMeasure,
) -> Result<[f64; 2]> {
    d.check(spec)?;
    let a = spec.alphabets();
    if input_law.len() != a.x || estimator.x_size != a.x || estimator.z_size != a.z {
        return Err(Error::Shape(
            "input law or estimator does not match the channel".into(),
        ));
    }
    let mut total = [0.0; 2];
    for x in 0..a.x {
        let px = input_law.get(x);
        if px == 0.0 {
            continue;
        }
        for s1 in 0..a.s1 {
            for s2 in 0..a.s2 {
                let ps = spec.state_prob(s1, s2);
                if ps == 0.0 {
                    continue;
                }
                for (z, &pz) in spec.feedback_given_states(s1, s2, x).iter().enumerate() {
                    if pz == 0.0 {
                        continue;
                    }
                    let w = px * ps * pz;
                    for k in Receiver::BOTH {
                        let s = if k == Receiver::First { s1 } else { s2 };
                        total[k.index()] += w * d.matrix(k).get(s, estimator.decision(k, x, z));
                    }
                }
            }
        }
    }
    Ok(total)
}

/// Exhaustive search over every deterministic symbolwise estimator, per
/// receiver, returning the first one (in odometer order) with minimal
/// expected distortion under `input_law`.
pub fn brute_force_estimator(
    spec: &SdmbcSpec,
    input_law: &Pmf,
    d: &DistortionMeasure,
    limit: u64,
) -> Result<EstimatorTable> {
    d.check(spec)?;
    let a = spec.alphabets();
    if input_law.len() != a.x {
        return Err(Error::Shape("input law does not match |X|".into()));
    }
    let cells = a.x * a.z;
    for k in Receiver::BOTH {
        let count = (d.matrix(k).reconstructions() as f64).powi(cells as i32);
        if count > limit as f64 {
            return Err(Error::SearchSpaceTooLarge { count, limit });
        }
    }

    let decisions = Receiver::BOTH.map(|k| {
        let m = d.matrix(k);
        let recon = m.reconstructions();
        // weight[cell][shat]: contribution of deciding `shat` at `cell`
        let mut weight = vec![0.0; cells * recon];
        for x in 0..a.x {
            for s1 in 0..a.s1 {
                for s2 in 0..a.s2 {
                    let s = if k == Receiver::First { s1 } else { s2 };
                    let w = input_law.get(x) * spec.state_prob(s1, s2);
                    for (z, &pz) in spec.feedback_given_states(s1, s2, x).iter().enumerate() {
                        for shat in 0..recon {
                            weight[(x * a.z + z) * recon + shat] += w * pz * m.get(s, shat);
                        }
                    }
                }
            }
        }
        let mut current = vec![0usize; cells];
        let cost = |e: &[usize]| -> f64 {
            e.iter()
                .enumerate()
                .map(|(c, &shat)| weight[c * recon + shat])
                .sum()
        };
        let mut best = (current.clone(), cost(&current));
        loop {
            // odometer increment
            let mut pos = 0;
            while pos < cells {
                current[pos] += 1;
                if current[pos] < recon {
                    break;
                }
                current[pos] = 0;
                pos += 1;
            }
            if pos == cells {
                break;
            }
            let c = cost(&current);
            if c < best.1 {
                best = (current.clone(), c);
            }
        }
        best.0
    });
    Ok(EstimatorTable::from_decisions(spec, d, decisions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{dueck, dueck_bc, flipping_bc, multiplicative_bc};

    #[test]
    fn multiplicative_estimator_matches_closed_form() {
        let spec = multiplicative_bc(0.6, 0.5).unwrap();
        let est = optimal_estimator(&spec, spec.distortion()).unwrap();
        for z in 0..4 {
            let (y1, y2) = (z / 2, z % 2);
            // x = 0 only reaches z = 0 and falls back on the state priors
            // P_{S1}(1) = 0.6, P_{S2}(1) = 0.3
            assert_eq!(est.is_reachable(0, z), z == 0);
            assert_eq!(est.decision(Receiver::First, 0, z), usize::from(z == 0));
            assert_eq!(est.decision(Receiver::Second, 0, z), 0);
            if est.is_reachable(1, z) {
                assert_eq!(est.decision(Receiver::First, 1, z), y1);
                assert_eq!(est.decision(Receiver::Second, 1, z), y2);
            }
        }
        // posterior with x=1 is a point mass at y1
        let post = posterior_state(&spec, Receiver::First, 1, 2).unwrap();
        assert_eq!(post.probs(), &[0.0, 1.0]);
    }

    #[test]
    fn flipping_second_receiver_reads_y2_when_x_is_zero() {
        let spec = flipping_bc(0.6, 0.5).unwrap();
        let est = optimal_estimator(&spec, spec.distortion()).unwrap();
        for z in 0..4 {
            if est.is_reachable(0, z) {
                assert_eq!(est.decision(Receiver::Second, 0, z), z % 2);
            }
        }
    }

    #[test]
    fn expected_distortion_values() {
        let spec = multiplicative_bc(0.6, 0.5).unwrap();
        let d = spec.distortion().clone();
        let est = optimal_estimator(&spec, &d).unwrap();
        let always_one = Pmf::point_mass(2, 1).unwrap();
        assert_eq!(
            expected_distortion(&spec, &always_one, &est, &d).unwrap(),
            [0.0, 0.0]
        );
        let half = Pmf::bernoulli(0.5).unwrap();
        let [d1, d2] = expected_distortion(&spec, &half, &est, &d).unwrap();
        assert!((d1 - 0.2).abs() < 1e-15);
        assert!((d2 - 0.15).abs() < 1e-15);
    }

    #[test]
    fn dueck_minimum_distortion() {
        let spec = dueck_bc(&Pmf::new(vec![0.25, 0.75]).unwrap()).unwrap();
        let d = spec.distortion().clone();
        let est = optimal_estimator(&spec, &d).unwrap();
        let law = dueck::coupled_input(0.0).unwrap();
        let [d1, d2] = expected_distortion(&spec, &law, &est, &d).unwrap();
        assert!((d1 - 5.0 / 32.0).abs() < 1e-15);
        assert!((d2 - 5.0 / 32.0).abs() < 1e-15);
        // z = (0,0), x1 = x2: 1{P_S(0)(1+P_S(0)) < P_S(1)} = 1
        let x = dueck::input_index(0, 1, 1);
        assert_eq!(est.decision(Receiver::First, x, 0), 1);
        // z = (1,1) pins S1 = 1
        let post = posterior_state(&spec, Receiver::First, x, 3).unwrap();
        assert_eq!(post.probs(), &[0.0, 1.0]);
    }

    #[test]
    fn unreachable_pair_is_flagged() {
        let spec = dueck_bc(&Pmf::new(vec![0.25, 0.75]).unwrap()).unwrap();
        let x = dueck::input_index(0, 0, 1);
        assert_eq!(
            posterior_state(&spec, Receiver::First, x, 3),
            Err(Error::Unreachable { x, z: 3 })
        );
        let est = optimal_estimator(&spec, spec.distortion()).unwrap();
        assert!(!est.is_reachable(x, 3));
        assert_eq!(est.decision(Receiver::First, x, 3), 0);
        assert_eq!(est.conditional_distortion(Receiver::First, x, 3), 0.0);
    }

    #[test]
    fn brute_force_limit() {
        let spec = dueck_bc(&Pmf::new(vec![0.25, 0.75]).unwrap()).unwrap();
        let err = brute_force_estimator(&spec, &Pmf::uniform(8).unwrap(), spec.distortion(), 1000)
            .unwrap_err();
        assert!(matches!(err, Error::SearchSpaceTooLarge { .. }));
    }

    #[test]
    fn brute_force_reproduces_multiplicative_decisions() {
        let spec = multiplicative_bc(0.6, 0.5).unwrap();
        let d = spec.distortion();
        let law = Pmf::bernoulli(0.5).unwrap();
        let brute = brute_force_estimator(&spec, &law, d, DEFAULT_ENUMERATION_LIMIT).unwrap();
        let opt = optimal_estimator(&spec, d).unwrap();
        for k in Receiver::BOTH {
            for x in 0..2 {
                for z in 0..4 {
                    if opt.is_reachable(x, z) {
                        assert_eq!(brute.decision(k, x, z), opt.decision(k, x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn csv_export_has_all_pairs() {
        let spec = multiplicative_bc(0.6, 0.5).unwrap();
        let est = optimal_estimator(&spec, spec.distortion()).unwrap();
        let csv = est.to_csv();
        assert_eq!(csv.lines().count(), 1 + 2 * 2 * 4);
        assert!(csv.starts_with("k,x,z,shat,d_prime\n1,0,0,1,"));
    }
}
