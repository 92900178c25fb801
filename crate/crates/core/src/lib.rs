//! Joint sensing and communication over state-dependent memoryless broadcast
//! channels with generalized feedback.
//!
//! The crate evaluates capacity-distortion region bounds for two-receiver
//! finite-alphabet channels where the transmitter estimates each receiver's
//! state from its own input and a feedback signal:
//!
//! - [`prob`]: pmfs, kernels, labeled joints, entropy and conditional mutual
//!   information.
//! - [`channel`]: channel instances, the built-in example channels, the JSON
//!   channel document, and the degradedness / no-tradeoff checkers.
//! - [`estimation`]: the distortion-optimal symbolwise state estimator,
//!   expected distortions, and an exhaustive-search oracle.
//! - [`regions`]: region bounds, closed forms for the example channels,
//!   baselines, Pareto frontiers, and figure data.
//! - [`montecarlo`]: seeded simulation of states, outputs and estimates.

pub mod channel;
mod error;
pub mod estimation;
pub mod montecarlo;
pub mod prob;
pub mod regions;

pub use error::{Error, Result};
