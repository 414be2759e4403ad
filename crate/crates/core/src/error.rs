use thiserror::Error;

/// Errors raised by the field, polynomial, matrix and decoder layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field exponent {0} (supported: 2..=12)")]
    UnsupportedExponent(u32),
    #[error("polynomial {poly:#x} is not primitive for GF(2^{p})")]
    NotPrimitive { p: u32, poly: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("interpolation points share the x-coordinate {0:#x}")]
    RepeatedLocator(u16),
    #[error("row {0} of the basis is identically zero")]
    DegenerateBasis(usize),
    #[error("basis is singular: row reduction produced a zero row")]
    SingularBasis,
    #[error("column {column} of the reduced basis is not divisible by x^{power}")]
    CorruptedBasis { column: usize, power: usize },
    #[error("invalid code parameters n={n}, k={k} over GF({q})")]
    InvalidCode { n: usize, k: usize, q: usize },
    #[error("expected length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("invalid decoding parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid reliability matrix: {0}")]
    InvalidReliability(String),
    #[error("column {0} of the reliability matrix has no usable decision")]
    DegenerateColumn(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
