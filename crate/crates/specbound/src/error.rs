//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Graph construction called with an order outside its domain.
    #[error("invalid order: {0}")]
    InvalidOrder(String),

    /// Parameterized construction called with inconsistent parameters.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// A structurally invalid argument (non-bipartite where bipartite is
    /// required, witness not independent, malformed certificate family, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Malformed graph6 / DIMACS / certificate text. `offset` is a byte
    /// offset into the input.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Input exceeds a documented size cap (e.g. n > 64 for exact search).
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// An iterative numerical routine failed to converge or produced an
    /// unclassifiable result; carries the offending residual.
    #[error("numerical failure: {message} (residual {residual:.3e})")]
    Numerical { message: String, residual: f64 },
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn numerical(message: impl Into<String>, residual: f64) -> Self {
        Error::Numerical {
            message: message.into(),
            residual,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
