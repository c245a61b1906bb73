use thiserror::Error;

/// Errors raised by the library.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system {family}{rank}")]
    InvalidType { family: char, rank: usize },
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("elements belong to different root systems")]
    MixedSystems,
    #[error("{what} has size {size}, exceeding the cap of {cap}")]
    CapExceeded { what: String, size: u64, cap: u64 },
    #[error("subset is not the inversion set of any element")]
    NotAnInversionSet,
    #[error("element is not below the given upper bound in Bruhat order")]
    NotBelow,
    #[error("element is not a minimal coset representative for the given parabolic")]
    NotMinimalCosetRep,
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("sequence has repeated absolute values")]
    RepeatedAbsoluteValue,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
