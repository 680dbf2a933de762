use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("lattice mismatch: {left} vs {right}")]
    LatticeMismatch { left: String, right: String },
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("unknown divisor label `{0}`")]
    UnknownLabel(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid point configuration: {0}")]
    InvalidConfiguration(String),
    #[error("invalid branch data: {0}")]
    InvalidBranchData(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("action is not free: {0}")]
    NotFree(String),
    /// Raised when two routes to the same quantity disagree. Callers treat
    /// this as an internal inconsistency rather than bad input.
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn is_inconsistency(&self) -> bool {
        matches!(self, Error::Inconsistent(_))
    }
}
