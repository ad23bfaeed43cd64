//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("size bound exceeded: {what} = {got} > {bound}")]
    BoundExceeded {
        what: &'static str,
        got: u128,
        bound: u128,
    },
    #[error("polynomial of degree {0} is not irreducible over F_{1}")]
    NotIrreducible(usize, u64),
    #[error("m = {0} and n = {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("group descriptor mismatch")]
    DescriptorMismatch,
    #[error("invalid element code {0}")]
    InvalidCode(u64),
    #[error("hypothesis violation: {0} (pass --force to probe outside the theorem)")]
    HypothesisViolation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
