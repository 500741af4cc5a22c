use thiserror::Error;

/// Errors raised by the library. CLI input problems are mapped to exit code 2.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("tuple not strictly increasing: {0:?}")]
    UnsortedTuple(Vec<usize>),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("map is not alternating: {0}")]
    NotAlternating(String),

    #[error("premise violated: {0}")]
    PremiseViolated(String),

    #[error("not a deformation map of type I: {0}")]
    NotDMap(String),

    #[error("not a deformation map of type II: {0}")]
    NotDdMap(String),

    #[error("certificate failure: {0}")]
    Certificate(String),

    #[error("coboundary does not square to zero at degree {0}")]
    NonzeroSquare(usize),

    #[error("closed form kind {kind} does not match catalog {catalog}")]
    KindMismatch { kind: String, catalog: String },

    #[error("invalid rational literal {0:?}")]
    BadRational(String),

    #[error("{0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
