use thiserror::Error;

/// Errors raised across the library.
///
/// `TheoremViolation` is reserved for constructions that are guaranteed to
/// succeed on supported inputs; seeing it means either the implementation or
/// the precondition bookkeeping is wrong. Callers must not swallow it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("ring order {order} exceeds the configured cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("base ring is not a field")]
    NotAField,
    #[error("a product needs at least one factor")]
    EmptyProduct,
    #[error("element {0} is not invertible")]
    NotInvertible(String),
    #[error("subset is not a two-sided ideal")]
    NotAnIdeal,
    #[error("pair ({0}, {1}) is not the first row of an invertible matrix")]
    Inadmissible(String, String),
    #[error("operands live over different rings")]
    RingMismatch,
    #[error("unsupported ring family: {0}")]
    WrongRingFamily(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("map kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },
    #[error("size {size} exceeds the cap {cap} for {what}")]
    CapExceeded { what: String, size: usize, cap: usize },
    #[error("map is not a collineation: {0}")]
    NotACollineation(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_theorem_violation(&self) -> bool {
        matches!(self, Error::TheoremViolation(_))
    }
}
