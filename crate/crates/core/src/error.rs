use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring context mismatch")]
    RingMismatch,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomial is not homogeneous")]
    Inhomogeneous,
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("resource cap exceeded during {stage}: {detail}")]
    CapExceeded { stage: String, detail: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("input is singular: {0}")]
    Singular(String),
    #[error("improper intersection: {0}")]
    ImproperIntersection(String),
    #[error("input not in the expected shape: {0}")]
    Shape(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }

    /// Rewrites the line number of a parse error; other errors pass through.
    pub fn at_line(self, line: usize) -> Self {
        match self {
            Error::Parse {
                column, message, ..
            } => Error::Parse {
                line,
                column,
                message,
            },
            other => other,
        }
    }

    /// True for failures of the computation itself (as opposed to bad input).
    pub fn is_computational(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
