use thiserror::Error;

/// Errors produced anywhere in the semi-bandit toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid solution: {0}")]
    InvalidSolution(String),

    #[error("dimension mismatch: expected {expected} weights, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("invalid oracle weights: {0}")]
    InvalidWeights(String),

    #[error("confidence radius is undefined for zero observations")]
    ZeroObservations,

    #[error("agent is not initialized: item {0} has never been observed")]
    Uninitialized(usize),

    #[error("observation {value} for item {item} lies outside [0, 1]")]
    InvalidObservation { item: usize, value: f64 },

    #[error("oracle does not cover every item: {uncovered} item(s) unobserved after {calls} call(s)")]
    NonCoveringOracle { calls: usize, uncovered: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
