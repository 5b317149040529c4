use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("point has {found} coordinates but the ring has {expected} variables")]
    PointLength { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("oracle size guard exceeded: {0}")]
    SizeGuard(String),
}
