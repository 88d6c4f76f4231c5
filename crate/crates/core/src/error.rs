use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not invertible modulo {1}")]
    NotInvertible(String, String),
    #[error("gcd of zero and zero is undefined")]
    GcdOfZeros,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("unsupported quadratic field d = {0} (expected one of -1, -2, -3, -7, -11)")]
    UnsupportedField(i64),
    #[error("square root of negative integer {0}")]
    NegativeSqrt(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("oracle refused: {0}")]
    OracleWindow(String),
    #[error("cannot write {0}")]
    Io(String),
    #[error("internal consistency error: {0}")]
    Inconsistent(String),
}
