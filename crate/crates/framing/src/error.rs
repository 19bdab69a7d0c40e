use thiserror::Error;

/// Errors raised by the library. Every public operation returns `Result<_, Error>`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("boundary winding numbers sum to {sum}, expected Euler characteristic {expected}")]
    CoherenceViolation { sum: i64, expected: i64 },
    #[error("type violation: {0}")]
    TypeViolation(String),
    #[error("{what}: expected length {expected}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("unknown curve or arc `{0}`")]
    UnknownCurve(String),
    #[error("unknown boundary component {0}")]
    UnknownBoundary(usize),
    #[error("operation requires exactly one boundary component, surface has {0}")]
    WrongBoundaryCount(usize),
    #[error("boundary signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("outside the classified range: {0}")]
    OutOfClassifiedRange(String),
    #[error("orbit gcd did not stabilize by depth {depth} (history {history:?})")]
    Unstabilized { depth: usize, history: Vec<u64> },
    #[error("ribbon data incomplete: {0}")]
    RibbonIncomplete(String),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("path corner lies on a zero: {0}")]
    CornerAtZero(String),
    #[error("saddle arcs need two distinct zeros")]
    SameZero,
    #[error("path is not transverse to the cylinder: {0}")]
    NonTransverse(String),
    #[error("identification leaves an unmarked regular point: {0}")]
    DegenerateIdentification(String),
    #[error("invalid flat data: {0}")]
    InvalidFlat(String),
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
