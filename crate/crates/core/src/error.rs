use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds 2^16")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("modulus must have {expected} coefficients (constant term first), got {got}")]
    ModulusLength { expected: usize, got: usize },
    #[error("modulus is not monic")]
    ModulusNotMonic,
    #[error("modulus coefficient {coeff} is not reduced mod {p}")]
    ModulusCoefficient { coeff: u32, p: u32 },
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u32 },
    #[error("no built-in Conway polynomial for GF({p}^{m}); supply a modulus")]
    NoConwayPolynomial { p: u32, m: u32 },
    #[error("element encoding {value} is out of range for a field of order {q}")]
    ElementOutOfRange { value: u64, q: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("determinant requested for a non-square {rows}x{cols} matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("generator matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("repeated value at positions {first} and {second}")]
    RepeatedValue { first: usize, second: usize },
    #[error("column multiplier at position {0} is zero")]
    ZeroMultiplier(usize),
    #[error("enumeration of {needed} items exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid code parameters: {0}")]
    InvalidCodeParams(String),
    #[error("d = N - k: the dual distance is needed to separate AMDS from NMDS")]
    DualDistanceRequired,
    #[error("linear system is inconsistent")]
    InconsistentSystem,
}

pub type Result<T> = std::result::Result<T, Error>;
