use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("field of order {p}^{n} is too large")]
    FieldTooLarge { p: u64, n: u32 },

    #[error("modulus has degree {got}, expected {expected}")]
    ModulusDegree { expected: usize, got: usize },

    #[error("modulus is not monic")]
    ModulusNotMonic,

    #[error("modulus coefficient {coeff} is not in 0..{p}")]
    ModulusCoefficient { coeff: u64, p: u64 },

    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u64 },

    #[error("element code {code} is not in 0..{q}")]
    ElementOutOfRange { code: u64, q: u64 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("dimension m must be at least 1")]
    ZeroDimension,

    #[error("{what} of size {size} exceeds the limit {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("objects live over different fields")]
    FieldMismatch,

    #[error("matrix is singular: rank {rank} < {dim}")]
    Singular { rank: usize, dim: usize },

    #[error("coefficient at (v = {v}, t = {t}) is {value}, expected a nonnegative integer")]
    NotACount { v: usize, t: usize, value: String },

    #[error("block structure violated at block w = {w}, column {column}")]
    BlockStructure { w: usize, column: usize },

    #[error("row {row} is not an original system row")]
    NotOriginal { row: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
