//! Finite abelian groups presented as direct sums of cyclic groups.
//!
//! A group is stored exactly as the user wrote it, e.g. `[2, 4]` for
//! `Z/2 ⊕ Z/4`; normalization to invariant factors is a separate call.
//! Elements are residue tuples, enumerated lexicographically with the first
//! coordinate most significant, so `index_of` and `element_at` give a dense
//! numbering used by every table in the crate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Largest admissible cyclic order. Keeps every product of two residues
/// inside `u64` and sums of products inside `u128`.
pub const MAX_ORDER: u64 = 1 << 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct AbGroup {
    orders: Vec<u64>,
    cardinality: u64,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    orders: Vec<u64>,
}

impl TryFrom<GroupRepr> for AbGroup {
    type Error = Error;
    fn try_from(r: GroupRepr) -> Result<Self> {
        AbGroup::new(r.orders)
    }
}

impl From<AbGroup> for GroupRepr {
    fn from(g: AbGroup) -> Self {
        GroupRepr { orders: g.orders }
    }
}

/// A residue tuple. Membership in a particular group is checked by
/// [`AbGroup::contains`]; arithmetic goes through the owning group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl AbGroup {
    /// Builds `⊕ Z/nᵢ`. Rejects orders of zero or above [`MAX_ORDER`].
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        let mut cardinality: u64 = 1;
        for &n in &orders {
            if n == 0 || n > MAX_ORDER {
                return Err(Error::InvalidOrder(n));
            }
            cardinality = cardinality
                .checked_mul(n)
                .ok_or_else(|| Error::GroupTooLarge(orders.clone()))?;
        }
        Ok(AbGroup {
            orders,
            cardinality,
        })
    }

    pub fn trivial() -> Self {
        AbGroup {
            orders: Vec::new(),
            cardinality: 1,
        }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        AbGroup::new(vec![n])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of cyclic factors as given (not the minimal rank).
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }

    /// Cardinality as a table dimension. Fails when it does not fit `usize`.
    pub fn size(&self) -> usize {
        self.cardinality as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.cardinality == 1
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    /// The generator of the `i`-th cyclic factor (reduced, so it is zero in `Z/1`).
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut coords = vec![0; self.orders.len()];
        coords[i] = 1 % self.orders[i];
        GroupElement(coords)
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.0.len() == self.orders.len() && a.0.iter().zip(&self.orders).all(|(c, n)| c < n)
    }

    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement> {
        let a = GroupElement(coords);
        self.check(&a)?;
        Ok(a)
    }

    /// Reduces arbitrary integer coordinates modulo the cyclic orders.
    pub fn reduce(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.orders.len() {
            return Err(Error::NotAnElement {
                coords: coords.iter().map(|&c| c as u64).collect(),
                orders: self.orders.clone(),
            });
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(&self.orders)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
                .collect(),
        ))
    }

    pub(crate) fn check(&self, a: &GroupElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::NotAnElement {
                coords: a.0.clone(),
                orders: self.orders.clone(),
            })
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub_unchecked(a, b))
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.neg_unchecked(a))
    }

    /// `k · a` for a (possibly negative) integer `k`.
    pub fn scale(&self, k: i64, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&c, &n)| {
                    let k = k.rem_euclid(n as i64) as u128;
                    ((k * c as u128) % n as u128) as u64
                })
                .collect(),
        ))
    }

    /// The heap bracket `a − b + c`.
    pub fn bracket(
        &self,
        a: &GroupElement,
        b: &GroupElement,
        c: &GroupElement,
    ) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        self.check(c)?;
        Ok(self.bracket_unchecked(a, b, c))
    }

    pub(crate) fn add_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((&x, &y), &n)| add_mod(x, y, n))
                .collect(),
        )
    }

    pub(crate) fn sub_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((&x, &y), &n)| sub_mod(x, y, n))
                .collect(),
        )
    }

    pub(crate) fn neg_unchecked(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &n)| sub_mod(0, x, n))
                .collect(),
        )
    }

    pub(crate) fn bracket_unchecked(
        &self,
        a: &GroupElement,
        b: &GroupElement,
        c: &GroupElement,
    ) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&c.0)
                .zip(&self.orders)
                .map(|(((&x, &y), &z), &n)| add_mod(sub_mod(x, y, n), z, n))
                .collect(),
        )
    }

    /// Position of `a` in the lexicographic enumeration.
    pub fn index_of(&self, a: &GroupElement) -> usize {
        let mut idx: u64 = 0;
        for (&c, &n) in a.0.iter().zip(&self.orders) {
            idx = idx * n + c;
        }
        idx as usize
    }

    /// Inverse of [`AbGroup::index_of`].
    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut coords = vec![0; self.orders.len()];
        for (slot, &n) in coords.iter_mut().zip(&self.orders).rev() {
            *slot = idx as u64 % n;
            idx /= n as usize;
        }
        GroupElement(coords)
    }

    /// Lazily walks all elements in lexicographic order, without a size guard.
    pub fn iter(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size()).map(move |i| self.element_at(i))
    }

    /// All elements in lexicographic order.
    pub fn enumerate_elements(&self, limits: &Limits) -> Result<Vec<GroupElement>> {
        limits.check(format!("elements of {self}"), self.cardinality as u128)?;
        Ok(self.iter().collect())
    }

    /// Addition table on element indices, row-major.
    pub fn addition_table(&self, limits: &Limits) -> Result<Vec<usize>> {
        let n = self.size();
        limits.check(format!("addition table of {self}"), (n as u128) * (n as u128))?;
        let elems: Vec<_> = self.iter().collect();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(self.index_of(&self.add_unchecked(a, b)));
            }
        }
        Ok(table)
    }

    /// Canonical invariant-factor form `d₁ | d₂ | … | dₗ` with every `dᵢ ≥ 2`.
    pub fn invariant_factors(&self) -> AbGroup {
        let orders = crate::invariants::invariant_factors(&self.orders);
        AbGroup::new(orders).expect("invariant factors of a valid group are valid")
    }

    pub fn is_isomorphic(&self, other: &AbGroup) -> bool {
        groups_isomorphic(self, other)
    }

    /// Comma-separated spec, the inverse of [`FromStr`].
    pub fn spec(&self) -> String {
        self.orders
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Decides `g ≅ h` by comparing invariant-factor normal forms.
pub fn groups_isomorphic(g: &AbGroup, h: &AbGroup) -> bool {
    g.invariant_factors().orders == h.invariant_factors().orders
}

pub fn make_group(orders: &[u64]) -> Result<AbGroup> {
    AbGroup::new(orders.to_vec())
}

impl FromStr for AbGroup {
    type Err = Error;

    /// `"2,2"` is `Z/2 ⊕ Z/2`; the empty string is the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(AbGroup::trivial());
        }
        let orders = s
            .split(',')
            .map(|part| {
                let part = part.trim();
                part.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad cyclic order {part:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        AbGroup::new(orders)
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        for (i, n) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "Z/{n}")?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn add_mod(x: u64, y: u64, n: u64) -> u64 {
    ((x as u128 + y as u128) % n as u128) as u64
}

#[inline]
pub(crate) fn sub_mod(x: u64, y: u64, n: u64) -> u64 {
    if x >= y {
        x - y
    } else {
        n - (y - x)
    }
}
