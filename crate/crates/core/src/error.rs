use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("vertex map is not simplicial: image of {simplex} is not a simplex of the target")]
    NotSimplicial { simplex: String },
    #[error("chain is not a cycle in degree {degree}")]
    NotACycle { degree: usize },
    #[error("cycle could not be expressed in the homology basis of degree {degree}")]
    NotInLattice { degree: usize },
    #[error("sequence of complexes is not exact: {0}")]
    NonExact(String),
    #[error("submodule is not pure")]
    ImpureInput,
    #[error("vertex {0} is not unimodular")]
    NonUnimodularVertex(String),
    #[error("instance too large: requires basis of size {required}, budget is {budget}")]
    InstanceTooLarge { required: usize, budget: usize },
    #[error("map is not invertible: {0}")]
    NotInvertible(String),
    #[error("degree {degree} is outside the materialized window")]
    DegreeOutOfWindow { degree: usize },
    #[error("malformed file at {location}: {message}")]
    MalformedFile { location: String, message: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
