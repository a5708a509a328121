//! Axiom-check reports shared by the heap, truss, ring and module validators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    HeapAssociativity,
    Malcev,
    AbelianHeap,
    MultAssociativity,
    LeftDistributivity,
    RightDistributivity,
    MultUnit,
    AddAssociativity,
    AddCommutativity,
    AddIdentity,
    AddInverse,
    ActionAddsScalars,
    ActionAddsVectors,
    ActionAssociativity,
    ActionUnit,
}

/// Outcome of one axiom over its domain of tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    /// True iff every tuple of the domain was checked.
    pub exhaustive: bool,
    pub cases: u64,
    /// First failing tuple, lexicographically first when exhaustive.
    pub counterexample: Option<Vec<usize>>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn is_exhaustive(&self) -> bool {
        self.checks.iter().all(|c| c.exhaustive)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, axiom: Axiom) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub(crate) fn push(&mut self, check: AxiomCheck) {
        self.checks.push(check);
    }
}

/// Checks `holds` on every tuple of `{0..n}^arity` and reports the
/// lexicographically first failure.
pub(crate) fn exhaustive<F>(axiom: Axiom, n: usize, arity: u32, holds: F) -> AxiomCheck
where
    F: Fn(&[usize]) -> bool + Sync,
{
    exhaustive_over(axiom, &vec![n; arity as usize], holds)
}

/// Like [`exhaustive`] over `{0..d₀} × {0..d₁} × …`. The first coordinate
/// is split across threads; `find_map_first` keeps the answer deterministic.
pub(crate) fn exhaustive_over<F>(axiom: Axiom, dims: &[usize], holds: F) -> AxiomCheck
where
    F: Fn(&[usize]) -> bool + Sync,
{
    let cases = dims.iter().map(|&d| d as u64).product();
    let arity = dims.len();
    let counterexample = if arity == 0 || dims.contains(&0) {
        None
    } else {
        (0..dims[0]).into_par_iter().find_map_first(|first| {
            let mut tuple = vec![0usize; arity];
            tuple[0] = first;
            loop {
                if !holds(&tuple) {
                    return Some(tuple);
                }
                // odometer over the remaining coordinates
                let mut k = arity - 1;
                loop {
                    if k == 0 {
                        return None;
                    }
                    tuple[k] += 1;
                    if tuple[k] < dims[k] {
                        break;
                    }
                    tuple[k] = 0;
                    k -= 1;
                }
            }
        })
    };
    AxiomCheck {
        axiom,
        exhaustive: true,
        cases,
        counterexample,
    }
}

/// Seeded random sampling, used above the exhaustive cap. Deterministic for
/// fixed inputs.
pub(crate) fn sampled<F>(axiom: Axiom, n: usize, arity: u32, samples: u64, holds: F) -> AxiomCheck
where
    F: Fn(&[usize]) -> bool,
{
    let mut rng = ChaCha8Rng::seed_from_u64(0x7275_7373 ^ n as u64);
    let mut tuple = vec![0usize; arity as usize];
    let mut counterexample = None;
    for _ in 0..samples {
        for slot in tuple.iter_mut() {
            *slot = rng.gen_range(0..n);
        }
        if !holds(&tuple) {
            counterexample = Some(tuple.clone());
            break;
        }
    }
    AxiomCheck {
        axiom,
        exhaustive: false,
        cases: samples,
        counterexample,
    }
}
