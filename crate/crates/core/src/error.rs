use thiserror::Error;

/// Errors raised by the algebra engine and everything built on top of it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("division by zero in the coefficient field")]
    DivisionByZero,
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("term order mismatch between polynomial and basis")]
    OrderMismatch,
    #[error("exponent overflow (cap is 2^31 - 1)")]
    ExponentOverflow,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("resource ceiling reached: {0}")]
    Resource(String),
    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("colength is infinite: {0}")]
    InfiniteLength(String),
    #[error("containment precondition failed: {0}")]
    NotContained(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("not superficial: {0}")]
    NotSuperficial(String),
    #[error("internal consistency violation: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
