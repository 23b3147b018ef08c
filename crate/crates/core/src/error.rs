use thiserror::Error;

/// Errors surfaced by constructors and operations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("element is not a unit: {0}")]
    NotUnit(String),
    #[error("map is not an anti-involution: {0}")]
    InvalidAntiInvolution(String),
    #[error("modulus {0} is even, 2 is not invertible")]
    EvenModulus(u64),
    #[error("group-ring sections do not match: {0}")]
    SectionMismatch(String),
    #[error("base Mackey functor carries no Tambara structure")]
    NotTambara,
    #[error("computation exceeds the configured size bound: {0}")]
    TooLarge(String),
    #[error("truncation degree {have} too shallow, need {need}")]
    TruncationTooShallow { need: usize, have: usize },
    #[error("induced map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("invalid construction: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
