use thiserror::Error;

/// Errors surfaced by the library. The variant decides the CLI exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input document: syntax, unknown labels, bad coefficients.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed input that violates a structural requirement.
    #[error("validation error: {0}")]
    Validation(String),
    /// Input outside the hypotheses of a check (refused, not normalized).
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),
    /// Two independent computations disagreed.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
