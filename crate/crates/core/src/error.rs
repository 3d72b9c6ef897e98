use thiserror::Error;

/// Errors raised by the cone, complex and cup-product machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generator list")]
    EmptyInput,
    #[error("zero vector where a nonzero lattice vector is required")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cone is not pointed (it contains a line)")]
    NotPointed,
    #[error("cone is not full-dimensional (dimension {dim} in rank {rank})")]
    NotFullDimensional { dim: usize, rank: usize },
    #[error("matrix is not surjective onto the integer lattice (invariant factor {0})")]
    NotSurjective(String),
    #[error("{0}")]
    BoxTooLarge(String),
    #[error("degree shift {0:?} is not in the dual cone")]
    SNotInDualCone(Vec<i64>),
    #[error("no Hilbert basis element has height one on generator {0}")]
    NoHeightOneElement(usize),
    #[error("no correction term found for elementary relation of {element:?} at {wall}")]
    CorrectionNotFound { element: Vec<i64>, wall: String },
    #[error("cup product requires a cone that is smooth in codimension 2")]
    NotSmoothCodim2,
    #[error("cocycle condition violated on 2-face ({0}, {1})")]
    CocycleViolation(usize, usize),
    #[error("decomposition piece check failed: {0}")]
    DecompositionCheck(String),
    #[error("degree mismatch: element lives in degree {expected:?}, got {got:?}")]
    DegreeMismatch { expected: Vec<i64>, got: Vec<i64> },
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("vector is not in the Minkowski summand space")]
    NotInSummandSpace,
    #[error("{0:?} is not an element of the Hilbert basis")]
    NotInHilbertBasis(Vec<i64>),
    #[error("isomorphism check failed: {0}")]
    IsoCheckFailed(String),
    #[error("k = {0} is outside the supported range (k >= 2)")]
    KOutOfRange(i64),
    #[error("index {index} out of range (size {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
