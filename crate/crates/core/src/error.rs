use thiserror::Error;

/// Errors raised by constructions, augmenters and file readers.
///
/// The variants are grouped so callers can tell a provably impossible
/// request apart from a violated precondition or an internal bug.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Fewer points than the operation needs.
    #[error("too few points: need at least {needed}, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("coordinate ({x}, {y}) outside the supported range |c| <= {limit}")]
    CoordinateRange { x: i64, y: i64, limit: i64 },

    #[error("duplicate point ({x}, {y})")]
    DuplicatePoint { x: i64, y: i64 },

    #[error("points {0}, {1}, {2} are collinear")]
    Collinear(usize, usize, usize),

    /// The requested graph cannot exist; the message names the reason.
    #[error("impossible: {0}")]
    Impossible(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a valid triangulation: {0}")]
    InvalidTriangulation(String),

    /// A construction step produced something its own checks reject.
    #[error("internal invariant failure: {0}")]
    Internal(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Impossible(_) => 2,
            Error::Internal(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
