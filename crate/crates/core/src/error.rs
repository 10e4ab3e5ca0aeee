use thiserror::Error;

/// Errors produced by the enumeration library.
#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error("empty prime universe: limit {0} is below 2")]
    EmptyUniverse(u64),
    #[error("{value} is not prime (entry {index})")]
    NotPrime { value: u64, index: usize },
    #[error("multiplicative order of {base} is undefined modulo {modulus}")]
    OrderUndefined { base: u64, modulus: u64 },
    #[error("{0} is not a member of the prime set")]
    NotInSet(u64),
    #[error("invalid group id: {0}")]
    InvalidGroup(String),
    #[error("{0} is not the canonical representative of a simple group")]
    NotCanonical(String),
    #[error("generic groups are defined for primes p >= 5, got {0}")]
    GenericRange(u64),
}
