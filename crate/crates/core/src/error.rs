use thiserror::Error;

/// Errors produced by the library.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cyclic order must be between 1 and 2^32, got {0}")]
    InvalidOrder(u64),
    #[error("group of orders {0:?} is too large to index")]
    GroupTooLarge(Vec<u64>),
    #[error("element {coords:?} does not belong to group with orders {orders:?}")]
    NotAnElement { coords: Vec<u64>, orders: Vec<u64> },
    #[error("group mismatch: expected {expected:?}, got {actual:?}")]
    GroupMismatch { expected: Vec<u64>, actual: Vec<u64> },
    #[error("invalid homomorphism matrix: {0}")]
    InvalidMatrix(String),
    #[error("enumeration of {what} needs {needed} objects, limit is {limit}")]
    BoundExceeded { what: String, needed: u128, limit: u64 },
    #[error("map is not a heap morphism: {0}")]
    NotAHeapMorphism(String),
    #[error("not an isomorphism: {0}")]
    NotAnIsomorphism(String),
    #[error("not a truss morphism: {0}")]
    NotATrussMorphism(String),
    #[error("invalid heap: {0}")]
    InvalidHeap(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid module equivalence: {0}")]
    InvalidEquivalence(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("theorem violated: {0}")]
    Violation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn is_bound_exceeded(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }
}
