use thiserror::Error;

/// Errors raised by the computational core.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse Coxeter type {0:?}")]
    Parse(String),
    #[error("unsupported Coxeter type: {0}")]
    UnsupportedType(String),
    #[error("{descriptor} has {order} elements, exceeding the element budget of {budget}")]
    BudgetExceeded {
        descriptor: String,
        order: String,
        budget: u64,
    },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("coefficient domain mismatch: {0} vs {1}")]
    DomainMismatch(String, String),
    #[error("operation only defined for types {expected}, got {got}")]
    WrongType { expected: &'static str, got: String },
    #[error("invalid partition label {0:?}")]
    InvalidPartition(Vec<usize>),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
