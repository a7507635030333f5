use thiserror::Error;

/// Errors produced by constructions, verifiers and searches.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An internal consistency check failed. Seeing this is a bug.
    #[error("invariant broken: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
