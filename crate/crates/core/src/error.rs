use thiserror::Error;

/// Errors raised by the solver stack.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A caller-side precondition (box feasibility, nonzero data, ...) was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Inverse iteration ran out of iterations; carries the last iterate.
    #[error("eigen iteration did not converge after {iterations} iterations (last estimate {estimate:e})")]
    EigenNoConvergence {
        iterations: usize,
        estimate: f64,
        vector: Vec<f64>,
    },

    #[error("violation below resolution")]
    BelowResolution,

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
