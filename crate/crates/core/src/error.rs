use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("expected a nonnegative integer, got {0}")]
    Negative(String),
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u64, right: u64 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("polynomial has non-integer coefficients")]
    NonIntegral,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("invalid degree set: {0}")]
    InvalidDegreeSet(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
