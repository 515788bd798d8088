use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truth table has {actual} entries, expected 2^{n} = {expected}")]
    LengthMismatch {
        n: u32,
        expected: usize,
        actual: usize,
    },
    #[error("{n} variables exceeds the configured cap of {cap}")]
    NTooLarge { n: u32, cap: u32 },
    #[error("coordinate index {index} out of range 1..={n}")]
    IndexOutOfRange { index: u32, n: u32 },
    #[error("vector {vector:#x} does not fit in {n} variables")]
    VectorOutOfRange { vector: u32, n: u32 },
    #[error("matrix is singular over GF(2)")]
    SingularMatrix,
    #[error("hyperplane normal must be nonzero")]
    ZeroNormal,
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("operation needs at least one variable")]
    NoVariables,
    #[error("dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: u32, right: u32 },
    #[error("spectrum does not come from a Boolean function (value {value} at x = {x})")]
    NotBooleanSpectrum { x: usize, value: i64 },
    #[error("function is not bent")]
    NotBent,
    #[error("function is not plateaued")]
    NotPlateaued,
    #[error("exhaustive enumeration for n = {n} is out of reach")]
    TooLarge { n: u32 },
    #[error("n must be even, got {n}")]
    OddN { n: u32 },
    #[error("n = {n} is below the minimum of {min}")]
    BelowMinimum { n: u32, min: u32 },
    #[error("enumeration space of 2^{monomials} ANFs exceeds the cap of 2^{cap}")]
    SpaceTooLarge { monomials: u32, cap: u32 },
    #[error("candidate space of 2^{monomials} ANFs exceeds the cap of 2^{cap}")]
    CandidateSpaceTooLarge { monomials: u32, cap: u32 },
    #[error("could only draw {found} distinct functions out of {requested}")]
    SampleExhausted { requested: usize, found: usize },
    #[error("identity check failed: {0}")]
    IdentityViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
