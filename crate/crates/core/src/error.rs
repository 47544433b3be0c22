use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("polynomial {0:?} is reducible over F_p")]
    ReduciblePoly(Vec<u64>),
    #[error("the root of {0:?} is not a primitive element")]
    NonPrimitiveRoot(Vec<u64>),
    #[error("field of order {order} exceeds the table limit {limit}")]
    TableLimitExceeded { order: u128, limit: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("Teichmüller iteration did not converge after {0} steps")]
    NonConvergence(u32),
    #[error("precision mismatch: {0} vs {1}")]
    PrecisionMismatch(u32, u32),
    #[error("insufficient precision: need {needed}, have {have}")]
    InsufficientPrecision { needed: u64, have: u64 },
    #[error("divisor is not a unit")]
    NonUnitDivisor,
    #[error("verification failed at x = {witness}: {detail}")]
    VerificationFailed { witness: String, detail: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("enumeration of {size} items exceeds the limit {limit}")]
    EnumerationLimitExceeded { size: u128, limit: u64 },
    #[error("group exponent {exponent} is not coprime to q = {q}")]
    NonCoprimeGroupOrder { exponent: u64, q: u64 },
    #[error("no admissible assignment: {0}")]
    Infeasible(String),
    #[error("degree must be positive")]
    DegreeZero,
    #[error("no extremal polynomial found within a budget of {0} candidates")]
    NotFound(u64),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
