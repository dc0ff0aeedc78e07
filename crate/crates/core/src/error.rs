use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("group is not transitive")]
    Intransitive,
    #[error("not a strongly regular graph: {0}")]
    NotStronglyRegular(String),
    #[error("construction invariant violated: {0}")]
    Construction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("expected property fails: {0}")]
    Violation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
