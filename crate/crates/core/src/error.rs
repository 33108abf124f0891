use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {p}^{k} exceeds the 2^20 cap")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("invalid extension degree {0}")]
    BadDegree(u32),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("constant polynomial where a nonconstant one is required")]
    ConstantPolynomial,
    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("operation requires characteristic 2")]
    OddCharacteristic,
    #[error("residue is zero modulo the place")]
    ZeroResidue,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("evaluation budget exceeded: needed {needed}, allowed {allowed}")]
    BudgetExceeded { needed: u64, allowed: u64 },
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("inconsistent L-polynomial: {0}")]
    InconsistentLPolynomial(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("output error: {0}")]
    Output(String),
    #[error("sanity wall violated: {0}")]
    SanityViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
