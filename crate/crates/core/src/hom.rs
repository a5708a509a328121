//! Homomorphisms between cyclic decompositions.
//!
//! A homomorphism `⊕ Z/nᵢ → ⊕ Z/mⱼ` is an integer matrix `A[j][i]` giving
//! the image of the `i`-th generator in the `j`-th target coordinate. It is
//! well defined iff `nᵢ · A[j][i] ≡ 0 (mod mⱼ)`, i.e. `A[j][i]` is a multiple
//! of `mⱼ / gcd(nᵢ, mⱼ)`. There are `gcd(nᵢ, mⱼ)` admissible values per entry.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{add_mod, sub_mod, AbGroup, GroupElement};
use crate::invariants::gcd;
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupHom {
    source: AbGroup,
    target: AbGroup,
    matrix: Vec<Vec<u64>>,
}

impl GroupHom {
    /// Validates shape, reduction and the divisibility condition.
    pub fn new(source: AbGroup, target: AbGroup, matrix: Vec<Vec<u64>>) -> Result<Self> {
        if matrix.len() != target.rank() {
            return Err(Error::InvalidMatrix(format!(
                "expected {} rows, got {}",
                target.rank(),
                matrix.len()
            )));
        }
        for (j, row) in matrix.iter().enumerate() {
            let m = target.orders()[j];
            if row.len() != source.rank() {
                return Err(Error::InvalidMatrix(format!(
                    "row {j} has {} entries, expected {}",
                    row.len(),
                    source.rank()
                )));
            }
            for (i, &a) in row.iter().enumerate() {
                let n = source.orders()[i];
                if a >= m {
                    return Err(Error::InvalidMatrix(format!(
                        "entry [{j}][{i}] = {a} not reduced mod {m}"
                    )));
                }
                if (n as u128 * a as u128) % m as u128 != 0 {
                    return Err(Error::InvalidMatrix(format!(
                        "entry [{j}][{i}] = {a}: {n}·{a} is not 0 mod {m}"
                    )));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    pub fn zero(source: &AbGroup, target: &AbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: vec![vec![0; source.rank()]; target.rank()],
        }
    }

    pub fn identity(g: &AbGroup) -> Self {
        let k = g.rank();
        let matrix = (0..k)
            .map(|j| (0..k).map(|i| u64::from(i == j) % g.orders()[j]).collect())
            .collect();
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix,
        }
    }

    /// Multiplication by an integer on `g`.
    pub fn scalar(g: &AbGroup, k: i64) -> Self {
        let mut h = GroupHom::identity(g);
        for (j, row) in h.matrix.iter_mut().enumerate() {
            let n = g.orders()[j] as i64;
            row[j] = (k.rem_euclid(n) as u64 * row[j]) % n as u64;
        }
        h
    }

    /// The homomorphism sending the `i`-th source generator to `images[i]`.
    pub fn from_generator_images(
        source: &AbGroup,
        target: &AbGroup,
        images: &[GroupElement],
    ) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::InvalidMatrix(format!(
                "{} generator images for rank {}",
                images.len(),
                source.rank()
            )));
        }
        for im in images {
            target.check(im)?;
        }
        let matrix = (0..target.rank())
            .map(|j| images.iter().map(|im| im.0[j]).collect())
            .collect();
        GroupHom::new(source.clone(), target.clone(), matrix)
    }

    /// Recovers the homomorphism from its value table (indexed like
    /// `source.iter()`). Fails unless the table is additive.
    pub fn from_table(source: &AbGroup, target: &AbGroup, table: &[GroupElement]) -> Result<Self> {
        if table.len() != source.size() {
            return Err(Error::InvalidTable(format!(
                "table has {} entries for a group of order {}",
                table.len(),
                source.cardinality()
            )));
        }
        for t in table {
            target.check(t)?;
        }
        let n = source.size();
        for a in 0..n {
            for b in a..n {
                let sum = source.index_of(&source.add_unchecked(&source.element_at(a), &source.element_at(b)));
                if table[sum] != target.add_unchecked(&table[a], &table[b]) {
                    return Err(Error::NotAHeapMorphism(format!(
                        "linear part is not additive at {} + {}",
                        source.element_at(a),
                        source.element_at(b)
                    )));
                }
            }
        }
        let images: Vec<_> = (0..source.rank())
            .map(|i| table[source.index_of(&source.generator(i))].clone())
            .collect();
        GroupHom::from_generator_images(source, target, &images)
    }

    pub fn source(&self) -> &AbGroup {
        &self.source
    }

    pub fn target(&self) -> &AbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn apply(&self, a: &GroupElement) -> Result<GroupElement> {
        self.source.check(a)?;
        Ok(self.apply_unchecked(a))
    }

    pub(crate) fn apply_unchecked(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            self.matrix
                .iter()
                .zip(self.target.orders())
                .map(|(row, &m)| {
                    let s: u128 = row
                        .iter()
                        .zip(&a.0)
                        .map(|(&x, &y)| x as u128 * y as u128)
                        .sum();
                    (s % m as u128) as u64
                })
                .collect(),
        )
    }

    /// `self ∘ inner`: applies `inner` first.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.target != self.source {
            return Err(Error::GroupMismatch {
                expected: self.source.orders().to_vec(),
                actual: inner.target.orders().to_vec(),
            });
        }
        Ok(self.compose_unchecked(inner))
    }

    pub(crate) fn compose_unchecked(&self, inner: &GroupHom) -> GroupHom {
        let cols = inner.source.rank();
        let matrix = self
            .matrix
            .iter()
            .zip(self.target.orders())
            .map(|(row, &m)| {
                (0..cols)
                    .map(|i| {
                        let s: u128 = row
                            .iter()
                            .zip(&inner.matrix)
                            .map(|(&f, g_row)| f as u128 * g_row[i] as u128)
                            .sum();
                        (s % m as u128) as u64
                    })
                    .collect()
            })
            .collect();
        GroupHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix,
        }
    }

    fn same_shape(&self, other: &GroupHom) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::GroupMismatch {
                expected: self.target.orders().to_vec(),
                actual: other.target.orders().to_vec(),
            });
        }
        Ok(())
    }

    fn zip_entries(&self, other: &GroupHom, f: impl Fn(u64, u64, u64) -> u64) -> GroupHom {
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .zip(self.target.orders())
            .map(|((r1, r2), &m)| r1.iter().zip(r2).map(|(&x, &y)| f(x, y, m)).collect())
            .collect();
        GroupHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix,
        }
    }

    /// Pointwise sum.
    pub fn add(&self, other: &GroupHom) -> Result<GroupHom> {
        self.same_shape(other)?;
        Ok(self.zip_entries(other, add_mod))
    }

    pub fn sub(&self, other: &GroupHom) -> Result<GroupHom> {
        self.same_shape(other)?;
        Ok(self.zip_entries(other, sub_mod))
    }

    pub fn neg(&self) -> GroupHom {
        self.zip_entries(self, |x, _, m| sub_mod(0, x, m))
    }

    /// Pointwise `f − g + h`.
    pub fn bracket(&self, g: &GroupHom, h: &GroupHom) -> Result<GroupHom> {
        self.sub(g)?.add(h)
    }

    pub(crate) fn bracket_unchecked(&self, g: &GroupHom, h: &GroupHom) -> GroupHom {
        self.zip_entries(g, sub_mod).zip_entries(h, add_mod)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&a| a == 0)
    }

    /// Value table indexed like `source.iter()`.
    pub fn table(&self) -> Vec<GroupElement> {
        self.source.iter().map(|a| self.apply_unchecked(&a)).collect()
    }

    /// Image as a sorted list of element indices of the target.
    pub fn image_indices(&self) -> Vec<usize> {
        let mut seen = vec![false; self.target.size()];
        for a in self.source.iter() {
            seen[self.target.index_of(&self.apply_unchecked(&a))] = true;
        }
        (0..seen.len()).filter(|&i| seen[i]).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.source
            .iter()
            .skip(1)
            .all(|a| self.apply_unchecked(&a) != self.target.zero())
    }

    pub fn is_bijective(&self) -> bool {
        self.source.cardinality() == self.target.cardinality() && self.is_injective()
    }

    pub fn inverse(&self) -> Result<GroupHom> {
        if !self.is_bijective() {
            return Err(Error::NotAnIsomorphism(format!(
                "homomorphism {:?} is not bijective",
                self.matrix
            )));
        }
        let mut preimage = vec![0usize; self.target.size()];
        for (i, a) in self.source.iter().enumerate() {
            preimage[self.target.index_of(&self.apply_unchecked(&a))] = i;
        }
        let images: Vec<_> = (0..self.target.rank())
            .map(|j| {
                let gen = self.target.generator(j);
                self.source.element_at(preimage[self.target.index_of(&gen)])
            })
            .collect();
        GroupHom::from_generator_images(&self.target, &self.source, &images)
    }
}

impl Serialize for GroupHom {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(s)
    }
}

/// Dense numbering of `Hom(G, H)`: entries row-major, each entry running
/// over its admissible multiples in ascending order.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: AbGroup,
    target: AbGroup,
    steps: Vec<u64>,
    radices: Vec<u64>,
    len: u128,
}

impl HomSpace {
    pub fn new(source: &AbGroup, target: &AbGroup) -> Self {
        let mut steps = Vec::new();
        let mut radices = Vec::new();
        for &m in target.orders() {
            for &n in source.orders() {
                let d = gcd(n, m);
                steps.push(m / d);
                radices.push(d);
            }
        }
        let len = radices.iter().map(|&r| r as u128).product();
        HomSpace {
            source: source.clone(),
            target: target.clone(),
            steps,
            radices,
            len,
        }
    }

    /// `∏ᵢⱼ gcd(nᵢ, mⱼ)`.
    pub fn len(&self) -> u128 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn hom_at(&self, mut idx: u128) -> GroupHom {
        let cols = self.source.rank();
        let mut flat = vec![0u64; self.radices.len()];
        for (k, slot) in flat.iter_mut().enumerate().rev() {
            let r = self.radices[k] as u128;
            *slot = (idx % r) as u64 * self.steps[k];
            idx /= r;
        }
        let matrix = if cols == 0 {
            vec![Vec::new(); self.target.rank()]
        } else {
            flat.chunks(cols).map(<[u64]>::to_vec).collect()
        };
        GroupHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix,
        }
    }

    pub fn index_of(&self, f: &GroupHom) -> Option<u128> {
        if f.source != self.source || f.target != self.target {
            return None;
        }
        let mut idx: u128 = 0;
        for (k, &a) in f.matrix.iter().flatten().enumerate() {
            idx = idx * self.radices[k] as u128 + (a / self.steps[k]) as u128;
        }
        Some(idx)
    }

    pub fn iter(&self) -> impl Iterator<Item = GroupHom> + '_ {
        (0..self.len).map(move |i| self.hom_at(i))
    }
}

/// All of `Hom(g, h)` in deterministic order.
pub fn hom_enumerate(g: &AbGroup, h: &AbGroup, limits: &Limits) -> Result<Vec<GroupHom>> {
    let space = HomSpace::new(g, h);
    limits.check(format!("Hom({g}, {h})"), space.len())?;
    Ok(space.iter().collect())
}

/// Group isomorphisms `g → h` in the order of [`hom_enumerate`].
pub fn group_isos(g: &AbGroup, h: &AbGroup, limits: &Limits) -> Result<Vec<GroupHom>> {
    if g.cardinality() != h.cardinality() {
        return Ok(Vec::new());
    }
    Ok(hom_enumerate(g, h, limits)?
        .into_iter()
        .filter(GroupHom::is_bijective)
        .collect())
}

pub fn apply_hom(f: &GroupHom, a: &GroupElement) -> Result<GroupElement> {
    f.apply(a)
}

/// `compose_homs(f, g) = f ∘ g`.
pub fn compose_homs(f: &GroupHom, g: &GroupHom) -> Result<GroupHom> {
    f.compose(g)
}
