use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unknown simplex `{0}`")]
    UnknownSimplex(String),
    #[error("duplicate simplex identifier `{0}`")]
    Duplicate(String),
    #[error("non-canonical degeneracy word {0} (indices must be strictly decreasing)")]
    NonCanonicalDegeneracy(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("incomplete complex slice: {0}")]
    IncompleteSlice(String),
    #[error("coefficient overflow")]
    Overflow,
}
