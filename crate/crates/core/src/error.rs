use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} must be nonzero")]
    Zero(&'static str),
    #[error("{what} = {value} out of range (expected {expected})")]
    OutOfRange { what: &'static str, value: String, expected: &'static str },
    #[error("modulus {0} must be odd and positive")]
    EvenModulus(String),
    #[error("{a} is not coprime to {m}")]
    NotCoprime { a: String, m: String },
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("{0} is not squarefree")]
    NotSquarefree(String),
    #[error("(k, n) = ({k}, {n}) is not admissible: {reason}")]
    Inadmissible { k: i64, n: u64, reason: &'static str },
    #[error("factorization of {0} is incomplete within budget")]
    IncompleteFactorization(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
