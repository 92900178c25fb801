//! State-dependent memoryless broadcast channel instances.
//!
//! A channel is given by its alphabets, a joint state law `P(s1, s2)`, and a
//! transition kernel `P(y1, y2, z | s1, s2, x)` where `z` is the generalized
//! feedback seen by the transmitter.

mod builtin;
mod checks;
mod document;

use std::collections::BTreeMap;

pub use builtin::{
    binary_state_law, dueck, dueck_bc, erasure, erasure_bc, flipping_bc, multiplicative_bc,
};
pub use checks::{
    check_no_tradeoff, check_physically_degraded, DegradedVerdict, NoTradeoffVerdict,
    NoTradeoffWitness, DEGRADED_TOL, NO_TRADEOFF_TOL,
};
pub use document::{load_channel, save_channel};

use crate::error::{Error, Result};
use crate::estimation::DistortionMeasure;
use crate::prob::{compose_joint, var, Kernel, LabeledJoint, Pmf};

/// One of the two receivers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Receiver {
    First,
    Second,
}

impl Receiver {
    pub const BOTH: [Receiver; 2] = [Receiver::First, Receiver::Second];

    pub fn index(self) -> usize {
        match self {
            Receiver::First => 0,
            Receiver::Second => 1,
        }
    }

    /// 1-based receiver number.
    pub fn number(self) -> usize {
        self.index() + 1
    }

    pub fn from_number(k: usize) -> Result<Self> {
        match k {
            1 => Ok(Receiver::First),
            2 => Ok(Receiver::Second),
            _ => Err(Error::Shape(format!("receiver must be 1 or 2, got {k}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabets {
    pub x: usize,
    pub y1: usize,
    pub y2: usize,
    pub z: usize,
    pub s1: usize,
    pub s2: usize,
    pub shat1: usize,
    pub shat2: usize,
}

impl Alphabets {
    pub fn state(&self, k: Receiver) -> usize {
        match k {
            Receiver::First => self.s1,
            Receiver::Second => self.s2,
        }
    }

    pub fn reconstruction(&self, k: Receiver) -> usize {
        match k {
            Receiver::First => self.shat1,
            Receiver::Second => self.shat2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdmbcSpec {
    name: String,
    alphabets: Alphabets,
    state_law: Pmf,
    transition: Kernel,
    distortion: DistortionMeasure,
    labels: BTreeMap<String, Vec<String>>,
    /// `P(z | s1, s2, x)`, row-major over `(s1, s2, x, z)`.
    feedback: Vec<f64>,
}

impl SdmbcSpec {
    pub fn new(
        alphabets: Alphabets,
        state_law: Pmf,
        transition: Kernel,
        distortion: DistortionMeasure,
    ) -> Result<Self> {
        let a = alphabets;
        if [a.x, a.y1, a.y2, a.z, a.s1, a.s2, a.shat1, a.shat2].contains(&0) {
            return Err(Error::Shape("alphabet sizes must be at least 1".into()));
        }
        if state_law.len() != a.s1 * a.s2 {
            return Err(Error::Shape(format!(
                "state law has {} entries, expected |S1| x |S2| = {}",
                state_law.len(),
                a.s1 * a.s2
            )));
        }
        if transition.input_shape() != [a.s1, a.s2, a.x] {
            return Err(Error::Shape(format!(
                "transition input shape {:?} is not [|S1|, |S2|, |X|] = {:?}",
                transition.input_shape(),
                [a.s1, a.s2, a.x]
            )));
        }
        if transition.output_shape() != [a.y1, a.y2, a.z] {
            return Err(Error::Shape(format!(
                "transition output shape {:?} is not [|Y1|, |Y2|, |Z|] = {:?}",
                transition.output_shape(),
                [a.y1, a.y2, a.z]
            )));
        }
        for k in Receiver::BOTH {
            let m = distortion.matrix(k);
            if m.states() != a.state(k) || m.reconstructions() != a.reconstruction(k) {
                return Err(Error::Shape(format!(
                    "distortion matrix of receiver {} is {}x{}, alphabets are {}x{}",
                    k.number(),
                    m.states(),
                    m.reconstructions(),
                    a.state(k),
                    a.reconstruction(k)
                )));
            }
        }
        let mut feedback = Vec::with_capacity(a.s1 * a.s2 * a.x * a.z);
        for row in 0..transition.rows() {
            let r = transition.row_at(row);
            let mut fz = vec![0.0; a.z];
            for (j, &p) in r.iter().enumerate() {
                fz[j % a.z] += p;
            }
            feedback.extend(fz);
        }
        Ok(Self {
            name: "custom".into(),
            alphabets,
            state_law,
            transition,
            distortion,
            labels: BTreeMap::new(),
            feedback,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Attaches symbol labels for an alphabet (`"x"`, `"z"`, ...).
    pub fn with_labels(mut self, alphabet: &str, labels: Vec<String>) -> Self {
        self.labels.insert(alphabet.to_string(), labels);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabets(&self) -> &Alphabets {
        &self.alphabets
    }

    pub fn state_law(&self) -> &Pmf {
        &self.state_law
    }

    pub fn transition(&self) -> &Kernel {
        &self.transition
    }

    /// Distortion measure shipped with the channel.
    pub fn distortion(&self) -> &DistortionMeasure {
        &self.distortion
    }

    pub fn labels(&self) -> &BTreeMap<String, Vec<String>> {
        &self.labels
    }

    pub fn state_prob(&self, s1: usize, s2: usize) -> f64 {
        self.state_law.probs()[s1 * self.alphabets.s2 + s2]
    }

    /// `P(s_k)`.
    pub fn state_marginal(&self, k: Receiver) -> Pmf {
        let a = &self.alphabets;
        let mut m = vec![0.0; a.state(k)];
        for s1 in 0..a.s1 {
            for s2 in 0..a.s2 {
                let s = if k == Receiver::First { s1 } else { s2 };
                m[s] += self.state_prob(s1, s2);
            }
        }
        Pmf::new(m).expect("marginal of a valid state law")
    }

    /// `P(y1, y2, z | s1, s2, x)` flattened row-major over `(y1, y2, z)`.
    pub fn transition_row(&self, s1: usize, s2: usize, x: usize) -> &[f64] {
        self.transition.row(&[s1, s2, x])
    }

    /// `P(z | s1, s2, x)`.
    pub fn feedback_given_states(&self, s1: usize, s2: usize, x: usize) -> &[f64] {
        let a = &self.alphabets;
        let row = (s1 * a.s2 + s2) * a.x + x;
        &self.feedback[row * a.z..(row + 1) * a.z]
    }

    /// `P(z | x)` with the states marginalized.
    pub fn feedback_given_input(&self, x: usize) -> Vec<f64> {
        let a = &self.alphabets;
        let mut out = vec![0.0; a.z];
        for s1 in 0..a.s1 {
            for s2 in 0..a.s2 {
                let ps = self.state_prob(s1, s2);
                if ps == 0.0 {
                    continue;
                }
                for (o, &p) in out.iter_mut().zip(self.feedback_given_states(s1, s2, x)) {
                    *o += ps * p;
                }
            }
        }
        out
    }

    /// Single-variable joint for an input law, named `X`.
    pub fn input_joint(&self, p_x: &Pmf) -> Result<LabeledJoint> {
        if p_x.len() != self.alphabets.x {
            return Err(Error::Shape(format!(
                "input law has {} symbols, |X| = {}",
                p_x.len(),
                self.alphabets.x
            )));
        }
        LabeledJoint::from_pmf(var::X, p_x)
    }

    /// Joint of `(aux.., X, S1, S2, Y1, Y2, Z)` for an input law containing `X`.
    pub fn compose_joint(&self, input_law: &LabeledJoint) -> Result<LabeledJoint> {
        compose_joint(input_law, &self.state_law, &self.transition)
    }
}
