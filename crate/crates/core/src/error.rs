use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient odd-variable counts differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("odd variable index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("element is not parity-homogeneous")]
    MixedParity,
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("representation relation violated at (E_{i}{j}, E_{k}{l})")]
    RelationViolation { i: usize, j: usize, k: usize, l: usize },
    #[error("representation matrix E_{i}{j} has wrong parity")]
    ParityViolation { i: usize, j: usize },
    #[error("weight tag of basis vector {0} does not match the Cartan action")]
    WeightMismatch(usize),
    #[error("representation lacks weight tags")]
    MissingWeights,
    #[error("vector is not a joint Cartan eigenvector")]
    NotEigenvector,
    #[error("form degree {0} exceeds truncation {1}")]
    DegreeOverflow(usize, usize),
    #[error("{0} requires an even number of odd variables")]
    OddRank(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
