use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its documented range.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// An edge-list file failed to parse; `line` is 1-based.
    #[error("{path}:{line}: {reason}", path = path.display())]
    EdgeListParse {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    /// A sweep CSV failed to parse; `line` is 1-based.
    #[error("csv line {line}: {reason}")]
    CsvParse { line: usize, reason: String },

    /// The absorbing-probability solver failed to converge during a scan.
    #[error(
        "sigma solver did not converge at alpha = {alpha} \
         (residual {residual:.3e} after {iterations} iterations)"
    )]
    SolverDiverged {
        alpha: f64,
        residual: f64,
        iterations: usize,
    },

    /// The tolerance scan reached zero with the cascade condition still met.
    #[error("no threshold found: branching factor still >= 1 over (0, {start}]")]
    NoThreshold { start: f64 },

    /// No sustained crossing of the target giant fraction on the sweep grid.
    #[error("no transition in range: {0}")]
    NoTransition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
