use thiserror::Error;

/// Errors raised by the algebra and code-analysis routines.
///
/// A mathematical "no" (a matrix that is not left prime, a criterion that
/// fails) is never an error; those are returned as values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {0} exceeds the supported maximum of 65536")]
    FieldTooLarge(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("invalid field element: {0}")]
    InvalidElement(String),
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("matrix has more rows ({rows}) than columns ({cols})")]
    TooManyRows { rows: usize, cols: usize },
    #[error("matrix is rank deficient over the rational functions (rank {rank} < {rows})")]
    RankDeficient { rank: usize, rows: usize },
    #[error("invalid code parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("oracle too large: {size} candidates exceed the cap of {cap}")]
    OracleTooLarge { size: u128, cap: u128 },
    #[error("too many minors: {count} exceeds the limit of {limit}")]
    TooManyMinors { count: u128, limit: u128 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
