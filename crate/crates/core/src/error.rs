use thiserror::Error;

/// Errors raised by certificate construction, bound evaluation and the labs.
///
/// Precondition violations of the tail bounds are *not* errors: they are
/// reported as flags on [`crate::bounds::BoundResult`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("size error: {0}")]
    Size(String),

    #[error("kernel admits no one-step minorization (every column minimum is zero)")]
    NoMinorization,

    #[error("kernel is not contracting in total variation (Dobrushin coefficient = 1)")]
    NotContracting,

    #[error("observable value {value} at state {state} is outside [-1, 1]")]
    Range { state: usize, value: f64 },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("breakpoint count {count} exceeds the configured cap {cap}")]
    Overflow { count: usize, cap: usize },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("iterative solver did not converge: {0}")]
    Solver(String),

    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    #[error("invalid step function: {0}")]
    InvalidStepFunction(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
