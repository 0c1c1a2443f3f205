//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field order {0} exceeds the table cap {1}")]
    OrderTooLarge(u64, u64),

    #[error("no irreducible modulus of degree {0} found over F_{1}")]
    NoIrreducibleFound(u32, u64),

    #[error("division by zero in the field")]
    DivisionByZero,

    #[error("syntax error at byte {position}: {message}")]
    SyntaxError { position: usize, message: String },

    #[error("variable x{index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ambient dimension {0} is too small (need n >= {1})")]
    DimensionTooSmall(usize, usize),

    #[error("{0} planes exceed the enumeration cap {1}")]
    TooManyPlanes(u128, u128),

    #[error("point space of size {0} exceeds the cap {1}")]
    SpaceTooLarge(u128, u128),

    #[error("invalid degree {0}")]
    InvalidDegree(i64),

    #[error("parameter constraint violated: {0}")]
    ParameterConstraintViolated(String),

    #[error("condition (d^2-d-2)*sqrt(q) + 2d - 1 <= q fails for d={0}, q={1}")]
    Condition5Violated(u32, u64),

    #[error("probability bound is vacuous: {0}")]
    VacuousBound(String),

    #[error("factor search space too large: {0}")]
    SearchSpaceTooLarge(String),

    #[error("polynomial does not match any supported certificate shape: {0}")]
    UnsupportedShape(String),

    #[error("hypersurface carries no irreducibility certificate")]
    NotCertified,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 1 input error, 2 audit failure
    /// (mapped by the caller), 3 capacity.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::OrderTooLarge(..)
            | Error::TooManyPlanes(..)
            | Error::SpaceTooLarge(..)
            | Error::SearchSpaceTooLarge(..) => 3,
            _ => 1,
        }
    }
}
