use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to
/// name the violated precondition or invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },

    #[error("malformed rational `{0}`")]
    MalformedRational(String),

    #[error("malformed word `{0}`")]
    MalformedWord(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{d} does not divide {n}")]
    NotDivisible { d: u64, n: u64 },

    #[error("gcd({c}, {d}) = {gcd}, expected 1")]
    NotCoprime { c: u64, d: u64, gcd: u64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("capacity exceeded: {0}")]
    CapExceeded(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("points do not lie on a common hyperplane sum(x) = const")]
    NotInSumHyperplane,

    #[error("circular permutation is not fixed by adding {shift} to every letter")]
    NotSymmetric { shift: usize },

    #[error("word is not in the image of the bijection: {0}")]
    NotInImage(String),

    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable identifier of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::VariableCountMismatch { .. } => "variable-count-mismatch",
            Error::MalformedRational(_) => "malformed-rational",
            Error::MalformedWord(_) => "malformed-word",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::NotDivisible { .. } => "not-divisible",
            Error::NotCoprime { .. } => "not-coprime",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::CapExceeded(_) => "cap-exceeded",
            Error::EmptyInput(_) => "empty-input",
            Error::NotInSumHyperplane => "not-in-sum-hyperplane",
            Error::NotSymmetric { .. } => "not-symmetric",
            Error::NotInImage(_) => "not-in-image",
            Error::NotZeroDimensional => "not-zero-dimensional",
        }
    }
}
