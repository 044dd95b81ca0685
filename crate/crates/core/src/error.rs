use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("grade mismatch: expected {expected}, found {found}")]
    GradeMismatch { expected: usize, found: usize },
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("cannot contract a 0-form")]
    ContractScalar,
    #[error("expected {expected} arguments, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("vector is not a unit vector (|v|^2 = {0})")]
    NotUnit(String),
    #[error("vectors are not orthonormal")]
    NotOrthonormal,
    #[error("{0} is not tangent to the subspace")]
    NotTangent(&'static str),
    #[error("vectors span a degenerate subspace")]
    DegenerateSpan,
    #[error("vector lies in neither distinguished subspace of the split")]
    NotInSplit,
    #[error("coefficients must lie in {{-1, 0, 1}}")]
    CoefficientRange,
    #[error("form does not define a definite G2 structure")]
    NotG2Form,
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
