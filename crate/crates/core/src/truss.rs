//! Finite trusses: an abelian heap plus a multiplication distributing over
//! the bracket on both sides.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heap::{check_abelian, check_heap_associativity, check_malcev, FiniteHeap};
use crate::limits::Limits;
use crate::report::{exhaustive, Axiom, ValidationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTruss {
    heap: FiniteHeap,
    mult: Vec<u32>,
    unit: Option<usize>,
}

impl FiniteTruss {
    pub fn new(heap: FiniteHeap, mult: Vec<u32>, unit: Option<usize>) -> Result<Self> {
        let n = heap.size();
        if mult.len() != n * n {
            return Err(Error::InvalidTable(format!(
                "mult table has {} entries, expected {}",
                mult.len(),
                n * n
            )));
        }
        if let Some(bad) = mult.iter().find(|&&x| x as usize >= n) {
            return Err(Error::InvalidTable(format!("mult entry {bad} out of range 0..{n}")));
        }
        if unit.is_some_and(|u| u >= n) {
            return Err(Error::InvalidTable("unit out of range".into()));
        }
        Ok(FiniteTruss { heap, mult, unit })
    }

    pub fn size(&self) -> usize {
        self.heap.size()
    }

    pub fn heap(&self) -> &FiniteHeap {
        &self.heap
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    #[inline]
    pub fn bracket(&self, a: usize, b: usize, c: usize) -> usize {
        self.heap.bracket(a, b, c)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.size() + b] as usize
    }

    pub fn mult_table(&self) -> &[u32] {
        &self.mult
    }

    pub fn set_mult_entry(&mut self, a: usize, b: usize, value: usize) {
        let n = self.size();
        self.mult[a * n + b] = value as u32;
    }

    pub fn heap_mut(&mut self) -> &mut FiniteHeap {
        &mut self.heap
    }

    /// Restriction to a subset, renumbered in the given order. Fails unless
    /// the subset is closed under both operations.
    pub fn subtruss(&self, elements: &[usize]) -> Result<FiniteTruss> {
        let mut pos = vec![usize::MAX; self.size()];
        for (i, &e) in elements.iter().enumerate() {
            pos[e] = i;
        }
        let lookup = |x: usize| -> Result<usize> {
            match pos[x] {
                usize::MAX => Err(Error::InvalidTable(format!("subset not closed: {x} escapes"))),
                p => Ok(p),
            }
        };
        let k = elements.len();
        let mut ternary = Vec::with_capacity(k * k * k);
        for &a in elements {
            for &b in elements {
                for &c in elements {
                    ternary.push(lookup(self.bracket(a, b, c))? as u32);
                }
            }
        }
        let mut mult = Vec::with_capacity(k * k);
        for &a in elements {
            for &b in elements {
                mult.push(lookup(self.mul(a, b))? as u32);
            }
        }
        let unit = self.unit.and_then(|u| (pos[u] != usize::MAX).then_some(pos[u]));
        FiniteTruss::new(FiniteHeap::from_table(k, ternary)?, mult, unit)
    }
}

/// Heap axioms of the carrier (with abelian symmetry), associativity of the
/// multiplication, distributivity on both sides, and the unit if present.
pub fn validate_truss(t: &FiniteTruss, limits: &Limits) -> ValidationReport {
    let n = t.size();
    let mut r = ValidationReport::default();
    r.push(check_heap_associativity(t.heap(), limits));
    r.push(check_malcev(t.heap()));
    r.push(check_abelian(t.heap()));
    r.push(exhaustive(Axiom::MultAssociativity, n, 3, |x| {
        t.mul(t.mul(x[0], x[1]), x[2]) == t.mul(x[0], t.mul(x[1], x[2]))
    }));
    // tuple = (δ, α, β, γ)
    r.push(exhaustive(Axiom::LeftDistributivity, n, 4, |x| {
        let (d, a, b, c) = (x[0], x[1], x[2], x[3]);
        t.mul(d, t.bracket(a, b, c)) == t.bracket(t.mul(d, a), t.mul(d, b), t.mul(d, c))
    }));
    r.push(exhaustive(Axiom::RightDistributivity, n, 4, |x| {
        let (d, a, b, c) = (x[0], x[1], x[2], x[3]);
        t.mul(t.bracket(a, b, c), d) == t.bracket(t.mul(a, d), t.mul(b, d), t.mul(c, d))
    }));
    if let Some(u) = t.unit {
        r.push(exhaustive(Axiom::MultUnit, n, 1, |x| {
            t.mul(u, x[0]) == x[0] && t.mul(x[0], u) == x[0]
        }));
    }
    r
}

/// `{α | α·β = α for all β}`.
pub fn left_absorbers(t: &FiniteTruss) -> Vec<usize> {
    (0..t.size())
        .filter(|&a| (0..t.size()).all(|b| t.mul(a, b) == a))
        .collect()
}

/// A total map between truss carriers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TrussMorphism {
    source_size: usize,
    target_size: usize,
    map: Vec<usize>,
}

impl TrussMorphism {
    pub fn new(source_size: usize, target_size: usize, map: Vec<usize>) -> Result<Self> {
        if map.len() != source_size || map.iter().any(|&x| x >= target_size) {
            return Err(Error::InvalidTable(format!(
                "map of length {} is not a total function {source_size} -> {target_size}",
                map.len()
            )));
        }
        Ok(TrussMorphism {
            source_size,
            target_size,
            map,
        })
    }

    pub fn identity(n: usize) -> Self {
        TrussMorphism {
            source_size: n,
            target_size: n,
            map: (0..n).collect(),
        }
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn is_bijective(&self) -> bool {
        if self.source_size != self.target_size {
            return false;
        }
        let mut seen = vec![false; self.target_size];
        self.map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    pub fn inverse(&self) -> Option<TrussMorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (a, &x) in self.map.iter().enumerate() {
            inv[x] = a;
        }
        Some(TrussMorphism {
            source_size: self.target_size,
            target_size: self.source_size,
            map: inv,
        })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &TrussMorphism) -> Result<TrussMorphism> {
        if inner.target_size != self.source_size {
            return Err(Error::InvalidTable("truss morphisms do not compose".into()));
        }
        Ok(TrussMorphism {
            source_size: inner.source_size,
            target_size: self.target_size,
            map: inner.map.iter().map(|&a| self.map[a]).collect(),
        })
    }

    /// First input on which multiplication or the bracket is not preserved.
    pub fn preservation_failure(&self, s: &FiniteTruss, t: &FiniteTruss) -> Option<Vec<usize>> {
        let n = s.size();
        if self.source_size != n || self.target_size != t.size() {
            return Some(Vec::new());
        }
        let f = |a: usize| self.map[a];
        for a in 0..n {
            for b in 0..n {
                if f(s.mul(a, b)) != t.mul(f(a), f(b)) {
                    return Some(vec![a, b]);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if f(s.bracket(a, b, c)) != t.bracket(f(a), f(b), f(c)) {
                        return Some(vec![a, b, c]);
                    }
                }
            }
        }
        None
    }

    pub fn preserves(&self, s: &FiniteTruss, t: &FiniteTruss) -> bool {
        self.preservation_failure(s, t).is_none()
    }

    pub fn is_isomorphism(&self, s: &FiniteTruss, t: &FiniteTruss) -> bool {
        self.is_bijective() && self.preserves(s, t)
    }
}

/// Every total map `s → t` preserving both operations, in lexicographic
/// order of the value tuple. Pure brute force over `|t|^|s|` maps.
pub fn enumerate_truss_morphisms(
    s: &FiniteTruss,
    t: &FiniteTruss,
    limits: &Limits,
) -> Result<Vec<TrussMorphism>> {
    let (ns, nt) = (s.size(), t.size());
    let needed = (nt as u128).checked_pow(ns as u32).unwrap_or(u128::MAX);
    limits.check(format!("maps between trusses of sizes {ns} and {nt}"), needed)?;
    if ns == 0 {
        return Ok(vec![TrussMorphism::new(0, nt, Vec::new())?]);
    }
    Ok((0..ns)
        .map(|_| 0..nt)
        .multi_cartesian_product()
        .map(|map| TrussMorphism {
            source_size: ns,
            target_size: nt,
            map,
        })
        .filter(|m| m.preserves(s, t))
        .collect())
}

/// Bijective truss morphisms found by scanning every permutation. Rejects
/// cheaply first: absorbers must go to absorbers, then the multiplication
/// table, then the bracket.
pub fn enumerate_truss_isos(
    s: &FiniteTruss,
    t: &FiniteTruss,
    limits: &Limits,
) -> Result<Vec<TrussMorphism>> {
    let n = s.size();
    if n != t.size() {
        return Ok(Vec::new());
    }
    if n > limits.max_bijection_search {
        return Err(Error::BoundExceeded {
            what: format!("bijections of a {n}-element truss"),
            needed: factorial(n),
            limit: limits.max_bijection_search as u64,
        });
    }
    limits.check(format!("bijections of a {n}-element truss"), factorial(n))?;
    let abs_t = {
        let mut v = vec![false; n];
        for a in left_absorbers(t) {
            v[a] = true;
        }
        v
    };
    let abs_s = {
        let mut v = vec![false; n];
        for a in left_absorbers(s) {
            v[a] = true;
        }
        v
    };
    let mut out = Vec::new();
    for perm in (0..n).permutations(n) {
        if (0..n).any(|a| abs_s[a] != abs_t[perm[a]]) {
            continue;
        }
        let mult_ok = (0..n).all(|a| (0..n).all(|b| perm[s.mul(a, b)] == t.mul(perm[a], perm[b])));
        if !mult_ok {
            continue;
        }
        let m = TrussMorphism {
            source_size: n,
            target_size: n,
            map: perm,
        };
        if m.preserves(s, t) {
            out.push(m);
        }
    }
    if n == 0 {
        out.push(TrussMorphism::identity(0));
    }
    Ok(out)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Table interchange form: `{"n": n, "ternary": [n³ ids], "mult": [n² ids]}`,
/// with `mult` and `unit` optional for bare heaps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub n: usize,
    pub ternary: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<usize>,
}

impl TableFile {
    pub fn from_heap(h: &FiniteHeap) -> Self {
        TableFile {
            n: h.size(),
            ternary: h.table().to_vec(),
            mult: None,
            unit: None,
        }
    }

    pub fn from_truss(t: &FiniteTruss) -> Self {
        TableFile {
            n: t.size(),
            ternary: t.heap().table().to_vec(),
            mult: Some(t.mult_table().to_vec()),
            unit: t.unit(),
        }
    }

    pub fn to_heap(&self) -> Result<FiniteHeap> {
        FiniteHeap::from_table(self.n, self.ternary.clone())
    }

    pub fn to_truss(&self) -> Result<FiniteTruss> {
        let mult = self
            .mult
            .clone()
            .ok_or_else(|| Error::InvalidTable("truss table needs a \"mult\" field".into()))?;
        FiniteTruss::new(self.to_heap()?, mult, self.unit)
    }
}
