use thiserror::Error;

use crate::chainalg::Matrix;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("ring mismatch: Z/{left} vs Z/{right} (0 means Z)")]
    RingMismatch { left: u64, right: u64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not invertible over the coefficient ring")]
    NotInvertible,

    #[error("invalid complex at degree {degree}: {reason}")]
    InvalidComplex { degree: i32, reason: String },

    #[error("not a chain map at degree {degree}: {reason}")]
    NotChainMap { degree: i32, reason: String },

    #[error("an endomorphism is required: {0}")]
    NotEndomorphism(String),

    #[error("invalid finite set: {0}")]
    InvalidSet(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("base mismatch: {0}")]
    BaseMismatch(String),

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("2-cell breaks the {leg} leg at apex element {element}")]
    LegMismatch { leg: &'static str, element: String },

    #[error("2-cell component mismatch at {element}, degree {degree}: expected {expected:?}, found {found:?}")]
    CellMismatch {
        element: String,
        degree: i32,
        expected: Matrix,
        found: Matrix,
    },

    #[error("recoordination failed: {0}")]
    Recoord(String),

    #[error("diagram does not commute: {0}")]
    NotCommuting(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("{pointer}: {message}")]
    Parse { pointer: String, message: String },

    #[error("parameter out of range: {0}")]
    Param(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
