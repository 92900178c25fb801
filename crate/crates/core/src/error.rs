use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("value {value} outside of [{lo}, {hi}] for `{what}`")]
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("{what} is not normalized: mass {mass}")]
    NotNormalized { what: String, mass: f64 },
    #[error("{what} has an invalid entry {value}")]
    InvalidEntry { what: String, value: f64 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` appears in more than one argument set")]
    Overlap(String),
    #[error("variable `{0}` already exists")]
    DuplicateVariable(String),
    #[error("conditioning event has zero probability")]
    ZeroProbability,
    #[error("input/feedback pair (x={x}, z={z}) is unreachable")]
    Unreachable { x: usize, z: usize },
    #[error("enumeration of {count} estimators exceeds the limit of {limit}")]
    SearchSpaceTooLarge { count: f64, limit: u64 },
    #[error("grid of {count} points exceeds the cap of {cap}")]
    GridTooLarge { count: f64, cap: u64 },
    #[error("channel is not physically degraded: {0}")]
    NotDegraded(String),
    #[error("parameters violate the regime constraint: {0}")]
    Regime(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_unit(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::Domain {
            what,
            value,
            lo: 0.0,
            hi: 1.0,
        })
    }
}
