use thiserror::Error;

/// Errors raised by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series did not converge after {terms} terms (last error estimate {err_estimate:e})")]
    NonConvergence { terms: usize, err_estimate: f64 },

    #[error("non-finite value produced in {0}")]
    NonFinite(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("unsupported order {order} (maximum {max})")]
    UnsupportedOrder { order: usize, max: usize },

    #[error("range violation: {0}")]
    RangeViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
