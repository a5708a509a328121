//! Finite heaps given by dense ternary tables, their validators, and
//! retracts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::AbGroup;
use crate::limits::Limits;
use crate::report::{exhaustive, sampled, Axiom, AxiomCheck, ValidationReport};

/// A finite set `{0, …, n−1}` with a total ternary operation stored
/// row-major: `[a, b, c]` lives at `(a·n + b)·n + c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteHeap {
    n: usize,
    ternary: Vec<u32>,
}

impl FiniteHeap {
    /// Checks shape and range only; axioms are the validators' job.
    pub fn from_table(n: usize, ternary: Vec<u32>) -> Result<Self> {
        if ternary.len() != n * n * n {
            return Err(Error::InvalidTable(format!(
                "ternary table has {} entries, expected {}",
                ternary.len(),
                n * n * n
            )));
        }
        if let Some(bad) = ternary.iter().find(|&&x| x as usize >= n) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range 0..{n}")));
        }
        Ok(FiniteHeap { n, ternary })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> usize) -> Result<Self> {
        let mut t = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    t.push(f(a, b, c) as u32);
                }
            }
        }
        FiniteHeap::from_table(n, t)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn bracket(&self, a: usize, b: usize, c: usize) -> usize {
        self.ternary[(a * self.n + b) * self.n + c] as usize
    }

    pub fn table(&self) -> &[u32] {
        &self.ternary
    }

    /// Overwrites one entry. Only useful for probing validators.
    pub fn set_entry(&mut self, a: usize, b: usize, c: usize, value: usize) {
        self.ternary[(a * self.n + b) * self.n + c] = value as u32;
    }
}

/// The heap `[a, b, c] = a − b + c` on the elements of `g`, ids following
/// the lexicographic element order.
pub fn heap_from_group(g: &AbGroup, limits: &Limits) -> Result<FiniteHeap> {
    let n = g.size();
    limits.check(format!("ternary table of {g}"), (n as u128).pow(3))?;
    let elems: Vec<_> = g.iter().collect();
    FiniteHeap::from_fn(n, |a, b, c| {
        g.index_of(&g.bracket_unchecked(&elems[a], &elems[b], &elems[c]))
    })
}

/// `[[a,b,c],d,e] = [a,b,[c,d,e]]` over all quintuples, or a seeded sample
/// when the carrier exceeds `limits.max_full_validation`.
pub fn check_heap_associativity(h: &FiniteHeap, limits: &Limits) -> AxiomCheck {
    let n = h.size();
    if n > limits.max_full_validation {
        return sampled(Axiom::HeapAssociativity, n, 5, limits.sample_size, |t| {
            h.bracket(h.bracket(t[0], t[1], t[2]), t[3], t[4])
                == h.bracket(t[0], t[1], h.bracket(t[2], t[3], t[4]))
        });
    }
    // Hand-unrolled: this is the hot loop of the whole validator.
    let counterexample = (0..n).into_par_iter().find_map_first(|a| {
        for b in 0..n {
            for c in 0..n {
                let abc = h.bracket(a, b, c);
                for d in 0..n {
                    for e in 0..n {
                        if h.bracket(abc, d, e) != h.bracket(a, b, h.bracket(c, d, e)) {
                            return Some(vec![a, b, c, d, e]);
                        }
                    }
                }
            }
        }
        None
    });
    AxiomCheck {
        axiom: Axiom::HeapAssociativity,
        exhaustive: true,
        cases: (n as u64).pow(5),
        counterexample,
    }
}

/// `[a,a,b] = b = [b,a,a]` over all pairs.
pub fn check_malcev(h: &FiniteHeap) -> AxiomCheck {
    exhaustive(Axiom::Malcev, h.size(), 2, |t| {
        let (a, b) = (t[0], t[1]);
        h.bracket(a, a, b) == b && h.bracket(b, a, a) == b
    })
}

/// `[a,b,c] = [c,b,a]` over all triples.
pub fn check_abelian(h: &FiniteHeap) -> AxiomCheck {
    exhaustive(Axiom::AbelianHeap, h.size(), 3, |t| {
        h.bracket(t[0], t[1], t[2]) == h.bracket(t[2], t[1], t[0])
    })
}

/// Heap axioms: associativity and the Mal'cev identities.
pub fn validate_heap(h: &FiniteHeap, limits: &Limits) -> ValidationReport {
    let mut r = ValidationReport::default();
    r.push(check_heap_associativity(h, limits));
    r.push(check_malcev(h));
    r
}

pub fn is_abelian_heap(h: &FiniteHeap) -> bool {
    check_abelian(h).passed()
}

/// A group presented by its addition table, as obtained from a heap by
/// fixing the middle argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Retract {
    n: usize,
    add: Vec<u32>,
    identity: usize,
}

impl Retract {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn add(&self, a: usize, c: usize) -> usize {
        self.add[a * self.n + c] as usize
    }

    pub fn table(&self) -> &[u32] {
        &self.add
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.n)
            .find(|&x| self.add(a, x) == self.identity)
            .expect("retract of a valid heap is a group")
    }

    /// Group-axiom check by enumeration: associativity, two-sided identity
    /// and inverses.
    pub fn is_group(&self) -> bool {
        let n = self.n;
        let assoc = exhaustive(Axiom::AddAssociativity, n, 3, |t| {
            self.add(self.add(t[0], t[1]), t[2]) == self.add(t[0], self.add(t[1], t[2]))
        });
        assoc.passed()
            && (0..n).all(|a| self.add(a, self.identity) == a && self.add(self.identity, a) == a)
            && (0..n).all(|a| (0..n).any(|x| self.add(a, x) == self.identity && self.add(x, a) == self.identity))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|c| self.add(a, c) == self.add(c, a)))
    }
}

fn require_valid(h: &FiniteHeap, limits: &Limits) -> Result<()> {
    let report = validate_heap(h, limits);
    let failure = report.failures().next().map(|f| {
        Error::InvalidHeap(format!("{:?} fails at {:?}", f.axiom, f.counterexample))
    });
    failure.map_or(Ok(()), Err)
}

/// The retract `(H, +_b)` with `a +_b c = [a, b, c]`.
pub fn retract_at(h: &FiniteHeap, b: usize, limits: &Limits) -> Result<Retract> {
    if b >= h.size() {
        return Err(Error::InvalidHeap(format!("no element {b} in heap of size {}", h.size())));
    }
    require_valid(h, limits)?;
    let n = h.size();
    let add = (0..n)
        .flat_map(|a| (0..n).map(move |c| h.bracket(a, b, c) as u32))
        .collect();
    Ok(Retract { n, add, identity: b })
}

/// Rebuilds the heap `[a, b, c] = a − b + c` of a retract.
pub fn heap_from_retract(r: &Retract) -> FiniteHeap {
    let neg: Vec<_> = (0..r.n).map(|a| r.neg(a)).collect();
    FiniteHeap::from_fn(r.n, |a, b, c| r.add(r.add(a, neg[b]), c)).expect("retract table is in range")
}

/// The isomorphism `(H, +_b) → (H, +_b′)`, `a ↦ [a, b, b′]`, as a table.
pub fn retract_iso(h: &FiniteHeap, b: usize, b_prime: usize, limits: &Limits) -> Result<Vec<usize>> {
    if b >= h.size() || b_prime >= h.size() {
        return Err(Error::InvalidHeap("retract base point out of range".into()));
    }
    require_valid(h, limits)?;
    Ok((0..h.size()).map(|a| h.bracket(a, b, b_prime)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    fn lim() -> Limits {
        Limits::default()
    }

    fn heap(orders: &[u64]) -> (AbGroup, FiniteHeap) {
        let g = make_group(orders).unwrap();
        let h = heap_from_group(&g, &lim()).unwrap();
        (g, h)
    }

    #[test]
    fn bracket_values() {
        let (_, z5) = heap(&[5]);
        assert_eq!(z5.bracket(1, 2, 3), 2);
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(z5.bracket(a, a, b), b);
            }
        }
        let (v, h) = heap(&[2, 2]);
        let id = |c: Vec<u64>| v.index_of(&v.element(c).unwrap());
        assert_eq!(h.bracket(id(vec![1, 0]), id(vec![1, 1]), id(vec![0, 1])), id(vec![0, 0]));
    }

    #[test]
    fn group_heaps_validate() {
        for orders in [vec![4], vec![6], vec![2, 2], vec![], vec![8], vec![2, 4]] {
            let (_, h) = heap(&orders);
            let r = validate_heap(&h, &lim());
            assert!(r.is_valid() && r.is_exhaustive(), "{orders:?}: {r:?}");
            assert!(is_abelian_heap(&h));
        }
    }

    #[test]
    fn malcev_violation_reported() {
        // [a,a,b] := a on a 2-set
        let h = FiniteHeap::from_fn(2, |a, b, c| if a == b { a } else { c }).unwrap();
        let r = validate_heap(&h, &lim());
        let m = r.get(Axiom::Malcev).unwrap();
        assert_eq!(m.counterexample, Some(vec![0, 1]));
        assert!(!r.is_valid());
    }

    #[test]
    fn table_shape_checked() {
        assert!(FiniteHeap::from_table(2, vec![0; 7]).is_err());
        assert!(FiniteHeap::from_table(2, vec![2; 8]).is_err());
    }

    #[test]
    fn retract_reproduces_group_addition() {
        for orders in [vec![4], vec![2, 2], vec![6], vec![3, 3]] {
            let (g, h) = heap(&orders);
            let r = retract_at(&h, 0, &lim()).unwrap();
            let add: Vec<u32> = g.addition_table(&lim()).unwrap().into_iter().map(|x| x as u32).collect();
            assert_eq!(r.table(), &add[..]);
            for b in 0..h.size() {
                let rb = retract_at(&h, b, &lim()).unwrap();
                assert_eq!(rb.identity(), b);
                assert!(rb.is_group() && rb.is_commutative());
                assert_eq!(heap_from_retract(&rb), h);
            }
        }
    }

    #[test]
    fn retract_at_two_is_shifted_z4() {
        let (_, h) = heap(&[4]);
        let r2 = retract_at(&h, 2, &lim()).unwrap();
        let r0 = retract_at(&h, 0, &lim()).unwrap();
        // a ↦ [a, 2, 0] = a − 2 carries (+_2) to (+_0)
        let f = |a: usize| h.bracket(a, 2, 0);
        let mut seen = [false; 4];
        for a in 0..4 {
            seen[f(a)] = true;
            for c in 0..4 {
                assert_eq!(f(r2.add(a, c)), r0.add(f(a), f(c)));
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn retract_isos() {
        let (_, h2) = heap(&[2]);
        assert_eq!(retract_iso(&h2, 0, 0, &lim()).unwrap(), vec![0, 1]);
        assert_eq!(retract_iso(&h2, 0, 1, &lim()).unwrap(), vec![1, 0]);
        let (_, h4) = heap(&[4]);
        let iso = retract_iso(&h4, 0, 2, &lim()).unwrap();
        assert_eq!(iso, vec![2, 3, 0, 1]);
        let (r0, r2) = (retract_at(&h4, 0, &lim()).unwrap(), retract_at(&h4, 2, &lim()).unwrap());
        for a in 0..4 {
            for c in 0..4 {
                assert_eq!(iso[r0.add(a, c)], r2.add(iso[a], iso[c]));
            }
        }
    }

    #[test]
    fn retract_rejects_invalid_heap() {
        let h = FiniteHeap::from_fn(2, |a, b, c| if a == b { a } else { c }).unwrap();
        assert!(matches!(retract_at(&h, 0, &lim()), Err(Error::InvalidHeap(_))));
        assert!(retract_iso(&h, 0, 1, &lim()).is_err());
    }

    #[test]
    fn sampled_above_cap() {
        let small = Limits { max_full_validation: 3, ..lim() };
        let (_, h) = heap(&[4]);
        let r = validate_heap(&h, &small);
        assert!(r.is_valid());
        assert!(!r.get(Axiom::HeapAssociativity).unwrap().exhaustive);
        assert!(r.get(Axiom::Malcev).unwrap().exhaustive);
    }
}
