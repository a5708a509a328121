//! Finite unital rings given by addition and multiplication tables.
//!
//! Rings built on an [`AbGroup`] number their elements like the group does.
//! Endomorphism rings have no coordinate form and carry only the tables.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{AbGroup, GroupElement};
use crate::heap::FiniteHeap;
use crate::invariants::is_prime;
use crate::limits::Limits;
use crate::report::{exhaustive, Axiom, AxiomCheck, ValidationReport};
use crate::truss::FiniteTruss;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    n: usize,
    add: Vec<u32>,
    mult: Vec<u32>,
    zero: usize,
    one: usize,
    additive: Option<AbGroup>,
}

fn check_table(what: &str, table: &[u32], n: usize) -> Result<()> {
    if table.len() != n * n {
        return Err(Error::InvalidRing(format!(
            "{what} table has {} entries, expected {}",
            table.len(),
            n * n
        )));
    }
    if let Some(&v) = table.iter().find(|&&v| v as usize >= n) {
        return Err(Error::InvalidRing(format!("{what} table entry {v} out of range")));
    }
    Ok(())
}

impl FiniteRing {
    /// Raw tables; shapes are checked, axioms are not (see [`validate_ring`]).
    pub fn from_tables(n: usize, add: Vec<u32>, mult: Vec<u32>, zero: usize, one: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRing("empty carrier".into()));
        }
        check_table("addition", &add, n)?;
        check_table("multiplication", &mult, n)?;
        if zero >= n || one >= n {
            return Err(Error::InvalidRing("zero or one out of range".into()));
        }
        Ok(FiniteRing {
            n,
            add,
            mult,
            zero,
            one,
            additive: None,
        })
    }

    /// Multiplication over the addition of `group`; `one` is an element index.
    pub fn from_group(group: &AbGroup, mult: Vec<u32>, one: usize, limits: &Limits) -> Result<Self> {
        let add = group
            .addition_table(limits)?
            .into_iter()
            .map(|v| v as u32)
            .collect();
        let mut r = FiniteRing::from_tables(group.size(), add, mult, 0, one)?;
        r.additive = Some(group.clone());
        Ok(r)
    }

    fn from_group_fn(group: &AbGroup, one: usize, f: impl Fn(&GroupElement, &GroupElement) -> GroupElement) -> Result<Self> {
        let elems: Vec<_> = group.iter().collect();
        let mult = elems
            .iter()
            .cartesian_product(&elems)
            .map(|(a, b)| group.index_of(&f(a, b)) as u32)
            .collect();
        FiniteRing::from_group(group, mult, one, &Limits::default())
    }

    /// `Z/n`.
    pub fn zn(n: u64) -> Result<Self> {
        let g = AbGroup::cyclic(n)?;
        let one = if n == 1 { 0 } else { 1 };
        FiniteRing::from_group_fn(&g, one, |a, b| {
            GroupElement(vec![((a.0[0] as u128 * b.0[0] as u128) % n as u128) as u64])
        })
    }

    /// The prime field `F_p`.
    pub fn fp(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        FiniteRing::zn(p)
    }

    /// `R × S` with componentwise operations, numbered `r · |S| + s`.
    pub fn product(r: &FiniteRing, s: &FiniteRing) -> Result<Self> {
        let (nr, ns) = (r.n, s.n);
        let n = nr * ns;
        let pair = |f: &dyn Fn(&FiniteRing, usize, usize) -> usize| {
            (0..n)
                .cartesian_product(0..n)
                .map(|(a, b)| (f(r, a / ns, b / ns) * ns + f(s, a % ns, b % ns)) as u32)
                .collect::<Vec<_>>()
        };
        let mut out = FiniteRing::from_tables(
            n,
            pair(&|x, a, b| x.add(a, b)),
            pair(&|x, a, b| x.mul(a, b)),
            r.zero * ns + s.zero,
            r.one * ns + s.one,
        )?;
        if let (Some(gr), Some(gs)) = (&r.additive, &s.additive) {
            if r.zero == 0 && s.zero == 0 {
                out.additive = Some(AbGroup::new([gr.orders(), gs.orders()].concat())?);
            }
        }
        Ok(out)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn additive(&self) -> Option<&AbGroup> {
        self.additive.as_ref()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.n + b] as usize
    }

    /// Additive inverse by table lookup; `None` only for invalid tables.
    pub fn neg(&self, a: usize) -> Option<usize> {
        (0..self.n).find(|&b| self.add(a, b) == self.zero)
    }

    pub fn add_table(&self) -> &[u32] {
        &self.add
    }

    pub fn mult_table(&self) -> &[u32] {
        &self.mult
    }

    pub fn set_mult_entry(&mut self, a: usize, b: usize, value: usize) {
        self.mult[a * self.n + b] = value as u32;
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The ring as a truss: `[a, b, c] = a − b + c` with the same product.
    pub fn to_truss(&self) -> Result<FiniteTruss> {
        let neg: Vec<_> = (0..self.n)
            .map(|a| self.neg(a).ok_or_else(|| Error::InvalidRing(format!("{a} has no additive inverse"))))
            .collect::<Result<_>>()?;
        let heap = FiniteHeap::from_fn(self.n, |a, b, c| self.add(self.add(a, neg[b]), c))?;
        FiniteTruss::new(heap, self.mult.clone(), Some(self.one))
    }

    pub fn to_file(&self) -> Option<RingFile> {
        let g = self.additive.as_ref()?;
        Some(RingFile {
            orders: g.orders().to_vec(),
            mult: self.mult.clone(),
            one: g.element_at(self.one).0,
        })
    }
}

/// JSON form `{"orders": [..], "mult": flat table, "one": coords}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFile {
    pub orders: Vec<u64>,
    pub mult: Vec<u32>,
    pub one: Vec<u64>,
}

impl RingFile {
    pub fn to_ring(&self, limits: &Limits) -> Result<FiniteRing> {
        let g = AbGroup::new(self.orders.clone())?;
        let one = g.element(self.one.clone())?;
        FiniteRing::from_group(&g, self.mult.clone(), g.index_of(&one), limits)
    }
}

/// Exhaustive check of the unital ring axioms.
pub fn validate_ring(r: &FiniteRing) -> ValidationReport {
    let n = r.n;
    let mut rep = ValidationReport::default();
    rep.push(exhaustive(Axiom::AddAssociativity, n, 3, |t| {
        r.add(r.add(t[0], t[1]), t[2]) == r.add(t[0], r.add(t[1], t[2]))
    }));
    rep.push(exhaustive(Axiom::AddCommutativity, n, 2, |t| r.add(t[0], t[1]) == r.add(t[1], t[0])));
    rep.push(exhaustive(Axiom::AddIdentity, n, 1, |t| {
        r.add(t[0], r.zero) == t[0] && r.add(r.zero, t[0]) == t[0]
    }));
    rep.push(exhaustive(Axiom::AddInverse, n, 1, |t| r.neg(t[0]).is_some()));
    rep.push(exhaustive(Axiom::MultAssociativity, n, 3, |t| {
        r.mul(r.mul(t[0], t[1]), t[2]) == r.mul(t[0], r.mul(t[1], t[2]))
    }));
    rep.push(exhaustive(Axiom::LeftDistributivity, n, 3, |t| {
        r.mul(t[0], r.add(t[1], t[2])) == r.add(r.mul(t[0], t[1]), r.mul(t[0], t[2]))
    }));
    rep.push(exhaustive(Axiom::RightDistributivity, n, 3, |t| {
        r.mul(r.add(t[0], t[1]), t[2]) == r.add(r.mul(t[0], t[2]), r.mul(t[1], t[2]))
    }));
    rep.push(exhaustive(Axiom::MultUnit, n, 1, |t| {
        r.mul(r.one, t[0]) == t[0] && r.mul(t[0], r.one) == t[0]
    }));
    rep
}

/// Whether `map` (indexed by elements of `r`) is a unital ring isomorphism.
pub fn is_ring_iso(r: &FiniteRing, s: &FiniteRing, map: &[usize]) -> bool {
    if r.n != s.n || map.len() != r.n || map.iter().any(|&v| v >= s.n) {
        return false;
    }
    let mut seen = vec![false; s.n];
    for &v in map {
        if std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    map[r.one] == s.one
        && (0..r.n).cartesian_product(0..r.n).all(|(a, b)| {
            map[r.add(a, b)] == s.add(map[a], map[b]) && map[r.mul(a, b)] == s.mul(map[a], map[b])
        })
}

/// All ring isomorphisms by scanning permutations that fix zero and one.
pub fn find_ring_isos(r: &FiniteRing, s: &FiniteRing, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    if r.n != s.n {
        return Ok(Vec::new());
    }
    let n = r.n;
    if n > limits.max_bijection_search {
        return Err(Error::BoundExceeded {
            what: format!("bijections of a {n}-element ring"),
            needed: (1..=n as u128).product(),
            limit: limits.max_bijection_search as u64,
        });
    }
    let free_src: Vec<_> = (0..n).filter(|&a| a != r.zero && a != r.one).collect();
    let free_tgt: Vec<_> = (0..n).filter(|&a| a != s.zero && a != s.one).collect();
    if free_src.len() != free_tgt.len() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for perm in free_tgt.iter().copied().permutations(free_tgt.len()) {
        let mut map = vec![0; n];
        map[r.zero] = s.zero;
        map[r.one] = s.one;
        for (&a, &b) in free_src.iter().zip(&perm) {
            map[a] = b;
        }
        if is_ring_iso(r, s, &map) {
            out.push(map);
        }
    }
    Ok(out)
}

/// Convenience for reports: the failing axioms of a ring, if any.
pub fn ring_failures(r: &FiniteRing) -> Vec<AxiomCheck> {
    validate_ring(r).failures().cloned().collect()
}
