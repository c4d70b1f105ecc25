use thiserror::Error;

/// Errors raised while building or analysing operators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate nodes: {0}")]
    DegenerateNodes(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value at grid point {index}: {what}")]
    NonFinite { index: usize, what: String },

    #[error("{context}: no convergence after {iterations} iterations (best residual {residual:e})")]
    ConvergenceFailure {
        context: String,
        iterations: usize,
        residual: f64,
    },

    #[error("singular matrix")]
    Singular,

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable short tag for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::DegenerateNodes(_) => "degenerate-nodes",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::NonFinite { .. } => "non-finite",
            Error::ConvergenceFailure { .. } => "convergence-failure",
            Error::Singular => "singular",
            Error::DegenerateSample(_) => "degenerate-sample",
        }
    }

    /// Whether the error stems from bad input rather than a failed computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidArgument(_)
                | Error::DegenerateNodes(_)
                | Error::DimensionMismatch { .. }
                | Error::NonFinite { .. }
        )
    }
}
