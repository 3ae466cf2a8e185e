use thiserror::Error;

/// Errors produced by the field, geometry and code constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("field size {size} exceeds the configured maximum {max}")]
    FieldTooLarge { size: u64, max: u64 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("element index {index} is out of range for GF({q})")]
    ElementOutOfRange { index: u32, q: u32 },
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("GF({0}) has even order; every element is a square")]
    NoNonSquare(u32),
    #[error("the zero vector does not define a projective point")]
    ZeroVector,
    #[error("singular matrix")]
    Singular,
    #[error("duplicate evaluation point {0}")]
    DuplicatePoint(String),
    #[error("the point at infinity must be the last evaluation point")]
    InfinityNotLast,
    #[error("operation requires an evaluation set without the point at infinity")]
    InfinityPresent,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("generator and parity matrices are not orthogonal")]
    DualityFailure,
    #[error("matrix is not MDS; singular minor on columns {0:?}")]
    NotMds(Vec<usize>),
    #[error("search budget exceeded: needs {needed}, budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("theorem not applicable: {0}")]
    NotApplicable(String),
    #[error("open problem: {0}")]
    OpenProblem(String),
    #[error("received word is not a deep hole")]
    NotDeepHole,
    #[error("extension is GRS; no canonical non-GRS form applies")]
    ExtensionIsGrs,
    #[error("columns do not lie on a common rational normal curve")]
    NotGrs,
    #[error("counting result overflows 128 bits")]
    CountOverflow,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
