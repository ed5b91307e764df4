use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied parameter violated a documented constraint.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Random generation gave up after exhausting its retry budget.
    #[error("generation failed: {0}")]
    Generation(String),

    /// Malformed graph file.
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    /// An exploration touched more vertices than its budget allows.
    #[error("exploration budget of {budget} exceeded while exploring from {center}")]
    BudgetExceeded { center: usize, budget: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
