use std::path::PathBuf;

use thiserror::Error;

use crate::ppg::PpgOutcome;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported operation: {0}")]
    UnsupportedOperation(String),

    /// The model is `+inf` at the proposed step (it leaves `dom h`).
    #[error("step leaves the domain of the regularizer")]
    InfeasibleStep,

    /// No stepsize in the backtracking sequence produced strict model decrease.
    /// Carries the last outcome tried.
    #[error("stepsize backtracking failed after {backtracks} reductions")]
    BacktrackingFailure { backtracks: usize, best: Box<PpgOutcome> },

    #[error("unknown problem `{0}`")]
    UnknownProblem(String),

    #[error("malformed table: {0}")]
    Parse(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
