use crate::error::{Error, Result};

/// Size guards for every exhaustive computation in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of objects a single enumeration may produce or visit.
    pub max_enumeration: u64,
    /// Largest carrier on which the |h|^5 heap associativity check runs exhaustively.
    pub max_full_validation: usize,
    /// Largest carrier for raw bijection search between trusses.
    pub max_bijection_search: usize,
    /// Number of random tuples drawn when a check falls back to sampling.
    pub sample_size: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enumeration: 1_000_000,
            max_full_validation: 32,
            max_bijection_search: 9,
            sample_size: 200_000,
        }
    }
}

impl Limits {
    pub fn with_max_enumeration(mut self, n: u64) -> Self {
        self.max_enumeration = n;
        self
    }

    pub(crate) fn check(&self, what: impl Into<String>, needed: u128) -> Result<()> {
        if needed > self.max_enumeration as u128 {
            Err(Error::BoundExceeded {
                what: what.into(),
                needed,
                limit: self.max_enumeration,
            })
        } else {
            Ok(())
        }
    }
}
