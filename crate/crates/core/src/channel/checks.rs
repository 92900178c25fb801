//! Structural checks: physical degradedness and the no-tradeoff conditions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Receiver, SdmbcSpec};
use crate::error::{Error, Result};
use crate::prob::{var, Kernel, Pmf};

/// Absolute per-entry tolerance of the degradedness factorization.
pub const DEGRADED_TOL: f64 = 1e-9;
/// Absolute tolerance of the no-tradeoff independence / Markov checks.
pub const NO_TRADEOFF_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum DegradedVerdict {
    /// Holds, with the factor `P(y2, s2 | s1, y1)`: input shape `[|S1|, |Y1|]`,
    /// output shape `[|Y2|, |S2|]`. Rows of unreachable `(s1, y1)` are uniform.
    Degraded { kernel: Kernel },
    /// Two inputs reaching the same `(s1, y1)` induce different laws of `(y2, s2)`.
    NotDegraded {
        s1: usize,
        y1: usize,
        x: usize,
        x_prime: usize,
        gap: f64,
    },
}

impl DegradedVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, DegradedVerdict::Degraded { .. })
    }
}

impl std::fmt::Display for DegradedVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DegradedVerdict::Degraded { .. } => write!(f, "physically degraded"),
            DegradedVerdict::NotDegraded {
                s1,
                y1,
                x,
                x_prime,
                gap,
            } => write!(
                f,
                "not physically degraded: at (s1={s1}, y1={y1}) inputs x={x} and x'={x_prime} \
                 give laws of (y2, s2) differing by {gap:.3e}"
            ),
        }
    }
}

/// Checks the Markov chain `X - (S1, Y1) - (S2, Y2)` for every input law.
///
/// For each `(s1, y1)`, every pair of inputs that reaches it must induce the
/// same conditional law of `(y2, s2)`.
pub fn check_physically_degraded(spec: &SdmbcSpec) -> DegradedVerdict {
    let a = *spec.alphabets();
    let width = a.y2 * a.s2;
    // cond[(s1 * |Y1| + y1) * |X| + x] = unnormalized P(s1, y1, y2, s2 | x)
    let mut cond = vec![vec![0.0; width]; a.s1 * a.y1 * a.x];
    for s1 in 0..a.s1 {
        for s2 in 0..a.s2 {
            let ps = spec.state_prob(s1, s2);
            if ps == 0.0 {
                continue;
            }
            for x in 0..a.x {
                let row = spec.transition_row(s1, s2, x);
                for y1 in 0..a.y1 {
                    for y2 in 0..a.y2 {
                        let base = (y1 * a.y2 + y2) * a.z;
                        let p: f64 = row[base..base + a.z].iter().sum();
                        cond[(s1 * a.y1 + y1) * a.x + x][y2 * a.s2 + s2] += ps * p;
                    }
                }
            }
        }
    }

    let mut table = Vec::with_capacity(a.s1 * a.y1 * width);
    for s1 in 0..a.s1 {
        for y1 in 0..a.y1 {
            let mut reference: Option<(usize, Vec<f64>)> = None;
            for x in 0..a.x {
                let v = &cond[(s1 * a.y1 + y1) * a.x + x];
                let mass: f64 = v.iter().sum();
                if mass <= 0.0 {
                    continue;
                }
                let normalized: Vec<f64> = v.iter().map(|p| p / mass).collect();
                match &reference {
                    None => reference = Some((x, normalized)),
                    Some((x0, r)) => {
                        let gap = r
                            .iter()
                            .zip(&normalized)
                            .map(|(a, b)| (a - b).abs())
                            .fold(0.0, f64::max);
                        if gap > DEGRADED_TOL {
                            return DegradedVerdict::NotDegraded {
                                s1,
                                y1,
                                x: *x0,
                                x_prime: x,
                                gap,
                            };
                        }
                    }
                }
            }
            match reference {
                Some((_, r)) => table.extend(r),
                None => table.extend(std::iter::repeat_n(1.0 / width as f64, width)),
            }
        }
    }
    let kernel = Kernel::new(vec![a.s1, a.y1], vec![a.y2, a.s2], table)
        .expect("normalized conditional rows");
    DegradedVerdict::Degraded { kernel }
}

/// Feedback summaries `psi_1`, `psi_2`, each a total map on the `Z` alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoTradeoffWitness {
    pub psi1: Vec<usize>,
    pub psi2: Vec<usize>,
}

impl NoTradeoffWitness {
    pub fn psi(&self, k: Receiver) -> &[usize] {
        match k {
            Receiver::First => &self.psi1,
            Receiver::Second => &self.psi2,
        }
    }

    /// Size of the image alphabet of `psi_k`.
    pub fn image_size(&self, k: Receiver) -> usize {
        self.psi(k).iter().max().map_or(1, |m| m + 1)
    }

    /// Erasure indicators `psi_k(z) = 1{z_k erased}` for the erasure BC.
    pub fn erasure_indicator() -> Self {
        use super::erasure::indicator;
        Self {
            psi1: (0..9).map(|z| indicator(z, 1)).collect(),
            psi2: (0..9).map(|z| indicator(z, 2)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NoTradeoffVerdict {
    Holds {
        laws_checked: usize,
    },
    /// `(S_k, psi_k(Z))` depends on the input law or on `X`.
    DependsOnInput {
        receiver: Receiver,
        law: Vec<f64>,
        gap: f64,
    },
    /// `S_k - psi_k(Z) - (Z, X)` fails at `(x, z)`.
    NotMarkov {
        receiver: Receiver,
        x: usize,
        z: usize,
        gap: f64,
    },
}

impl NoTradeoffVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, NoTradeoffVerdict::Holds { .. })
    }
}

impl std::fmt::Display for NoTradeoffVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NoTradeoffVerdict::Holds { laws_checked } => {
                write!(
                    f,
                    "no-tradeoff conditions hold on {laws_checked} input laws"
                )
            }
            NoTradeoffVerdict::DependsOnInput { receiver, law, gap } => write!(
                f,
                "(S{k}, psi{k}(Z)) is not independent of X under input law {law:?} (gap {gap:.3e})",
                k = receiver.number()
            ),
            NoTradeoffVerdict::NotMarkov {
                receiver,
                x,
                z,
                gap,
            } => write!(
                f,
                "S{k} - psi{k}(Z) - (Z, X) fails at x={x}, z={z} (gap {gap:.3e})",
                k = receiver.number()
            ),
        }
    }
}

/// Numerically checks the no-tradeoff conditions for `k = 1, 2`:
/// `(S_k, psi_k(Z))` independent of `X` with a law that does not depend on
/// `P_X`, and the Markov chain `S_k - psi_k(Z) - (Z, X)`.
///
/// Input laws: every point mass plus `sample_count` Dirichlet(1, .., 1)
/// draws from a ChaCha8 stream seeded with `seed`.
pub fn check_no_tradeoff(
    spec: &SdmbcSpec,
    witness: &NoTradeoffWitness,
    sample_count: usize,
    seed: u64,
) -> Result<NoTradeoffVerdict> {
    let a = *spec.alphabets();
    for k in Receiver::BOTH {
        if witness.psi(k).len() != a.z {
            return Err(Error::Shape(format!(
                "psi{} maps {} feedback symbols, |Z| = {}",
                k.number(),
                witness.psi(k).len(),
                a.z
            )));
        }
    }
    let mut laws: Vec<Pmf> = (0..a.x)
        .map(|x| Pmf::point_mass(a.x, x))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..sample_count {
        laws.push(dirichlet_uniform(&mut rng, a.x));
    }

    for k in Receiver::BOTH {
        let s_name = if k == Receiver::First {
            var::S1
        } else {
            var::S2
        };
        let s_size = a.state(k);
        let psi = witness.psi(k);
        let psi_size = witness.image_size(k);
        let mut reference: Option<Vec<f64>> = None;
        for law in &laws {
            let joint = spec.compose_joint(&spec.input_joint(law)?)?.with_function(
                &[var::Z],
                "Psi",
                psi_size,
                |c| psi[c[0]],
            )?;
            let s_psi = joint.marginal(&[s_name, "Psi"])?.to_dense();
            let s_psi_x = joint.marginal(&[s_name, "Psi", var::X])?.to_dense();
            let mut gap: f64 = 0.0;
            if let Some(r) = &reference {
                gap = r
                    .iter()
                    .zip(&s_psi)
                    .map(|(a, b)| (a - b).abs())
                    .fold(gap, f64::max);
            }
            for (i, &p) in s_psi.iter().enumerate() {
                for x in 0..a.x {
                    gap = gap.max((s_psi_x[i * a.x + x] - p * law.get(x)).abs());
                }
            }
            if gap > NO_TRADEOFF_TOL {
                return Ok(NoTradeoffVerdict::DependsOnInput {
                    receiver: k,
                    law: law.probs().to_vec(),
                    gap,
                });
            }
            reference.get_or_insert(s_psi.clone());

            // S_k - psi(Z) - (Z, X): compare P(s | z, x) with P(s | psi(z)).
            let s_z_x = joint.marginal(&[s_name, var::Z, var::X])?.to_dense();
            for z in 0..a.z {
                for x in 0..a.x {
                    let col = |s: usize| s_z_x[(s * a.z + z) * a.x + x];
                    let mass: f64 = (0..s_size).map(col).sum();
                    if mass <= 0.0 {
                        continue;
                    }
                    let v = psi[z];
                    let psi_mass: f64 = (0..s_size).map(|s| s_psi[s * psi_size + v]).sum();
                    let gap = (0..s_size)
                        .map(|s| (col(s) / mass - s_psi[s * psi_size + v] / psi_mass).abs())
                        .fold(0.0, f64::max);
                    if gap > NO_TRADEOFF_TOL {
                        return Ok(NoTradeoffVerdict::NotMarkov {
                            receiver: k,
                            x,
                            z,
                            gap,
                        });
                    }
                }
            }
        }
    }
    Ok(NoTradeoffVerdict::Holds {
        laws_checked: laws.len(),
    })
}

/// A uniform draw from the probability simplex of dimension `n`.
pub(crate) fn dirichlet_uniform(rng: &mut impl Rng, n: usize) -> Pmf {
    let draws: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = draws.iter().sum();
    Pmf::new(draws.iter().map(|d| d / total).collect()).expect("normalized draw")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{erasure, erasure_bc, flipping_bc, multiplicative_bc};

    #[test]
    fn multiplicative_and_flipping_are_degraded() {
        for (q, g) in [(0.6, 0.5), (0.2, 0.9), (1.0, 0.0), (0.0, 1.0)] {
            assert!(check_physically_degraded(&multiplicative_bc(q, g).unwrap()).holds());
            assert!(check_physically_degraded(&flipping_bc(q, g).unwrap()).holds());
        }
    }

    #[test]
    fn erasure_with_independent_states_is_not_degraded() {
        let law = erasure::independent_law(0.3, 0.3, 0.0, 0.0).unwrap();
        let verdict = check_physically_degraded(&erasure_bc(&law).unwrap());
        assert!(!verdict.holds());
        assert!(verdict.to_string().contains("not physically degraded"));
    }

    #[test]
    fn erasure_indicator_witness_passes() {
        let law = erasure::independent_law(0.3, 0.6, 0.2, 0.5).unwrap();
        let spec = erasure_bc(&law).unwrap();
        let v = check_no_tradeoff(&spec, &NoTradeoffWitness::erasure_indicator(), 10, 1).unwrap();
        assert!(v.holds(), "{v}");
    }

    #[test]
    fn multiplicative_identity_witness_fails() {
        let spec = multiplicative_bc(0.6, 0.5).unwrap();
        let id: Vec<usize> = (0..4).collect();
        let w = NoTradeoffWitness {
            psi1: id.clone(),
            psi2: id,
        };
        assert!(!check_no_tradeoff(&spec, &w, 5, 3).unwrap().holds());
    }

    #[test]
    fn witness_must_cover_feedback_alphabet() {
        let spec = multiplicative_bc(0.6, 0.5).unwrap();
        let w = NoTradeoffWitness {
            psi1: vec![0; 3],
            psi2: vec![0; 4],
        };
        assert!(check_no_tradeoff(&spec, &w, 1, 0).is_err());
    }
}
