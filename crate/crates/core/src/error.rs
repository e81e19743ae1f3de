use thiserror::Error;

/// Errors produced by the library.
///
/// `CapExceeded` is kept distinct from `InvalidInput` so front ends can tell
/// "too big" apart from "wrong".
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} exceeds the configured limit of {limit} (reached {found})")]
    CapExceeded {
        what: String,
        limit: usize,
        found: usize,
    },

    #[error("unknown vertex: {0}")]
    UnknownVertex(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn cap(what: impl Into<String>, limit: usize, found: usize) -> Self {
        Error::CapExceeded {
            what: what.into(),
            limit,
            found,
        }
    }

    /// True for resource-limit failures.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
