use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse permutation {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("value {value} is out of range 1..={degree}")]
    OutOfRange { value: usize, degree: usize },

    #[error("value {0} appears more than once")]
    Duplicate(usize),

    #[error("degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("map takes the value {value} at consecutive points {position} and {}", position + 1)]
    ConsecutiveEqual { position: usize, value: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("1 is an eigenvalue of the base Petrie matrix, so the bridge equation has no unique solution")]
    EigenvalueOne,

    #[error("invalid extension spec: {0}")]
    InvalidSpec(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("witness does not verify: {0}")]
    Unverified(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
