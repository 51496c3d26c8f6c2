use thiserror::Error;

use crate::scalars::RingId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {detail}")]
    DimensionMismatch { op: &'static str, detail: String },

    #[error("mixed rings: expected {expected}, found {found}")]
    MixedRings { expected: RingId, found: RingId },

    #[error("operation {op} is not supported over ring {ring}")]
    UnsupportedRing { op: &'static str, ring: RingId },

    #[error("zero input has no unique decomposition")]
    ZeroInput,

    #[error("both inputs are zero; decomposition is degenerate")]
    BothZero,

    #[error("quadratic form is degenerate: <v,v> = {value:e} for a nonzero residual")]
    DegenerateInner { value: f64 },

    #[error("precondition failed: {reason} (residual {residual:e})")]
    PrereqFailed { reason: String, residual: f64 },

    #[error("no solution found (residual {residual:e})")]
    NoSolution { residual: f64 },

    #[error("state is zero")]
    ZeroState,

    #[error("states are not orthonormal (residual {residual:e})")]
    NotOrthonormal { residual: f64 },

    #[error("conditioning target is not pure")]
    PurityViolation,

    #[error("object of dimension {dim} is trivial")]
    TrivialObject { dim: usize },

    #[error("enumeration too large: {detail}")]
    TooLarge { detail: String },

    #[error("unknown theory identifier {0:?}")]
    UnknownTheory(String),

    #[error("operation {op} is only defined for theory {expected}, not {found}")]
    WrongTheory {
        op: &'static str,
        expected: &'static str,
        found: &'static str,
    },

    #[error("unknown ring identifier {0:?}")]
    UnknownRing(String),

    #[error("invalid scalar for ring {ring}: {detail}")]
    InvalidScalar { ring: RingId, detail: String },

    #[error("malformed document: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn dims(op: &'static str, detail: impl Into<String>) -> Self {
        Error::DimensionMismatch {
            op,
            detail: detail.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Format(err.to_string())
    }
}
