use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {p}^{v} exceeds the supported bound 2^20")]
    FieldTooLarge { p: u64, v: u32 },
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    IncompatibleFields,
    #[error("enumeration needs {required} codewords but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("{0} is not a negative discriminant (must be < 0 and 0 or 1 mod 4)")]
    InvalidDiscriminant(i64),
    #[error("tau({n}) requested beyond table bound {bound}")]
    TauOutOfRange { n: u64, bound: u64 },
    #[error("cubic is not smooth")]
    NotSmooth,
    #[error("cubic is not absolutely irreducible")]
    Reducible,
    #[error("cubic is the zero polynomial")]
    ZeroPolynomial,
    #[error("non-integral value: {0}")]
    NonIntegral(String),
    #[error("negative coefficient at weight {0}")]
    NegativeCoefficient(usize),
    #[error("outside supported scope: {0}")]
    OutOfScope(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
