//! Heap morphisms between abelian groups in decomposed form `x ↦ φ̃(x) + h₀`,
//! and the endomorphism truss `E(G) ≅ G ⋊ End(G)`.
//!
//! Composition is written `f ∘ g` and means "apply `g` first" everywhere.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{AbGroup, GroupElement};
use crate::heap::FiniteHeap;
use crate::hom::{group_isos, hom_enumerate, GroupHom, HomSpace};
use crate::limits::Limits;
use crate::truss::{left_absorbers, FiniteTruss};

/// A heap morphism `G → H` stored as its linear part and translation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HeapMorphism {
    linear: GroupHom,
    translation: GroupElement,
}

impl HeapMorphism {
    pub fn new(linear: GroupHom, translation: GroupElement) -> Result<Self> {
        linear.target().check(&translation)?;
        Ok(HeapMorphism {
            linear,
            translation,
        })
    }

    pub fn from_hom(linear: GroupHom) -> Self {
        let translation = linear.target().zero();
        HeapMorphism {
            linear,
            translation,
        }
    }

    pub fn identity(g: &AbGroup) -> Self {
        HeapMorphism::from_hom(GroupHom::identity(g))
    }

    /// The constant map `x ↦ a` from `source`.
    pub fn constant(source: &AbGroup, target: &AbGroup, a: GroupElement) -> Result<Self> {
        HeapMorphism::new(GroupHom::zero(source, target), a)
    }

    pub fn linear(&self) -> &GroupHom {
        &self.linear
    }

    pub fn translation(&self) -> &GroupElement {
        &self.translation
    }

    pub fn source(&self) -> &AbGroup {
        self.linear.source()
    }

    pub fn target(&self) -> &AbGroup {
        self.linear.target()
    }

    pub fn is_constant(&self) -> bool {
        self.linear.is_zero()
    }

    pub fn eval(&self, x: &GroupElement) -> Result<GroupElement> {
        self.source().check(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &GroupElement) -> GroupElement {
        self.target()
            .add_unchecked(&self.linear.apply_unchecked(x), &self.translation)
    }

    /// Value table indexed like `source().iter()`.
    pub fn table(&self) -> Vec<GroupElement> {
        self.source().iter().map(|x| self.eval_unchecked(&x)).collect()
    }

    /// `self ∘ inner = (ψ̃φ̃, ψ̃(h₀) + k₀)` for `self = (ψ̃, k₀)`, `inner = (φ̃, h₀)`.
    pub fn compose(&self, inner: &HeapMorphism) -> Result<HeapMorphism> {
        if inner.target() != self.source() {
            return Err(Error::GroupMismatch {
                expected: self.source().orders().to_vec(),
                actual: inner.target().orders().to_vec(),
            });
        }
        Ok(self.compose_unchecked(inner))
    }

    pub(crate) fn compose_unchecked(&self, inner: &HeapMorphism) -> HeapMorphism {
        HeapMorphism {
            linear: self.linear.compose_unchecked(&inner.linear),
            translation: self.eval_unchecked(&inner.translation),
        }
    }

    /// Pointwise bracket `[α, β, γ]`, computed componentwise.
    pub fn bracket(&self, b: &HeapMorphism, c: &HeapMorphism) -> Result<HeapMorphism> {
        if self.source() != b.source()
            || self.source() != c.source()
            || self.target() != b.target()
            || self.target() != c.target()
        {
            return Err(Error::GroupMismatch {
                expected: self.target().orders().to_vec(),
                actual: b.target().orders().to_vec(),
            });
        }
        Ok(self.bracket_unchecked(b, c))
    }

    pub(crate) fn bracket_unchecked(&self, b: &HeapMorphism, c: &HeapMorphism) -> HeapMorphism {
        HeapMorphism {
            linear: self.linear.bracket_unchecked(&b.linear, &c.linear),
            translation: self
                .target()
                .bracket_unchecked(&self.translation, &b.translation, &c.translation),
        }
    }

    pub fn is_bijective(&self) -> bool {
        self.linear.is_bijective()
    }

    /// `y ↦ φ̃⁻¹(y − h₀)`.
    pub fn inverse(&self) -> Result<HeapMorphism> {
        let inv = self.linear.inverse()?;
        let translation = self.source().neg_unchecked(&inv.apply_unchecked(&self.translation));
        Ok(HeapMorphism {
            linear: inv,
            translation,
        })
    }
}

/// Splits a value table into `(φ̃, h₀)` with `h₀ = φ(0)` and
/// `φ̃ = φ − φ(0)`. Fails with `NotAHeapMorphism` unless `φ̃` is additive.
pub fn decompose(source: &AbGroup, target: &AbGroup, table: &[GroupElement]) -> Result<HeapMorphism> {
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
    let h0 = table[0].clone();
    let shifted: Vec<_> = table.iter().map(|y| target.sub_unchecked(y, &h0)).collect();
    let linear = GroupHom::from_table(source, target, &shifted)?;
    Ok(HeapMorphism {
        linear,
        translation: h0,
    })
}

pub fn eval(phi: &HeapMorphism, x: &GroupElement) -> Result<GroupElement> {
    phi.eval(x)
}

/// A constant endomorphism `â`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantMap {
    value: GroupElement,
    morphism: HeapMorphism,
}

impl ConstantMap {
    pub fn value(&self) -> &GroupElement {
        &self.value
    }

    pub fn morphism(&self) -> &HeapMorphism {
        &self.morphism
    }
}

/// `â: G → G, b ↦ a`.
pub fn hat(g: &AbGroup, a: &GroupElement) -> Result<ConstantMap> {
    Ok(ConstantMap {
        value: a.clone(),
        morphism: HeapMorphism::constant(g, g, a.clone())?,
    })
}

/// A truss of heap endomorphisms `x ↦ u(x) + a` of `G` with `u` drawn from a
/// fixed set of endomorphisms closed under the truss operations. With all of
/// `End(G)` this is `E(G)`; the module layer reuses it with `End_R(M)`.
///
/// Elements are numbered `hom_index · |G| + index_of(a)`.
#[derive(Debug)]
pub struct EndoTruss {
    base: AbGroup,
    homs: Vec<GroupHom>,
    hom_index: HashMap<GroupHom, usize>,
    limits: Limits,
    tables: OnceLock<FiniteTruss>,
}

impl Clone for EndoTruss {
    fn clone(&self) -> Self {
        EndoTruss {
            base: self.base.clone(),
            homs: self.homs.clone(),
            hom_index: self.hom_index.clone(),
            limits: self.limits,
            tables: self.tables.clone(),
        }
    }
}

impl PartialEq for EndoTruss {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.homs == other.homs
    }
}

impl EndoTruss {
    /// Packages a list of endomorphisms of `base`. The list must contain the
    /// identity and zero and be closed under composition and pointwise
    /// brackets; this is checked.
    pub fn from_homs(base: &AbGroup, homs: Vec<GroupHom>, limits: &Limits) -> Result<Self> {
        let needed = homs.len() as u128 * base.cardinality() as u128;
        limits.check(format!("endomorphism truss of {base}"), needed)?;
        let mut hom_index = HashMap::with_capacity(homs.len());
        for (i, h) in homs.iter().enumerate() {
            if h.source() != base || h.target() != base {
                return Err(Error::GroupMismatch {
                    expected: base.orders().to_vec(),
                    actual: h.source().orders().to_vec(),
                });
            }
            if hom_index.insert(h.clone(), i).is_some() {
                return Err(Error::InvalidTable("duplicate endomorphism".into()));
            }
        }
        if !hom_index.contains_key(&GroupHom::identity(base)) || !hom_index.contains_key(&GroupHom::zero(base, base)) {
            return Err(Error::InvalidTable("endomorphism set lacks identity or zero".into()));
        }
        let closed = homs.iter().all(|f| {
            homs.iter().all(|g| {
                hom_index.contains_key(&f.compose_unchecked(g)) && hom_index.contains_key(&f.sub(g).unwrap())
            })
        });
        if !closed {
            return Err(Error::InvalidTable("endomorphism set is not a subring".into()));
        }
        Ok(EndoTruss {
            base: base.clone(),
            homs,
            hom_index,
            limits: *limits,
            tables: OnceLock::new(),
        })
    }

    pub fn base(&self) -> &AbGroup {
        &self.base
    }

    pub fn homs(&self) -> &[GroupHom] {
        &self.homs
    }

    pub fn len(&self) -> usize {
        self.homs.len() * self.base.size()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn element(&self, idx: usize) -> HeapMorphism {
        let n = self.base.size();
        HeapMorphism {
            linear: self.homs[idx / n].clone(),
            translation: self.base.element_at(idx % n),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = HeapMorphism> + '_ {
        (0..self.len()).map(move |i| self.element(i))
    }

    pub fn index_of(&self, phi: &HeapMorphism) -> Option<usize> {
        if phi.source() != &self.base || phi.target() != &self.base {
            return None;
        }
        let h = *self.hom_index.get(phi.linear())?;
        Some(h * self.base.size() + self.base.index_of(phi.translation()))
    }

    pub fn hom_index_of(&self, f: &GroupHom) -> Option<usize> {
        self.hom_index.get(f).copied()
    }

    pub fn identity_index(&self) -> usize {
        self.hom_index[&GroupHom::identity(&self.base)] * self.base.size()
    }

    /// Index of `â`.
    pub fn hat_index(&self, a: &GroupElement) -> usize {
        self.hom_index[&GroupHom::zero(&self.base, &self.base)] * self.base.size() + self.base.index_of(a)
    }

    /// Indices of all constants, ordered like the elements of `G`.
    pub fn constants(&self) -> Vec<usize> {
        self.base.iter().map(|a| self.hat_index(&a)).collect()
    }

    pub fn compose_idx(&self, a: usize, b: usize) -> usize {
        if let Some(t) = self.tables.get() {
            return t.mul(a, b);
        }
        let c = self.element(a).compose_unchecked(&self.element(b));
        self.index_of(&c).expect("closed under composition")
    }

    pub fn bracket_idx(&self, a: usize, b: usize, c: usize) -> usize {
        if let Some(t) = self.tables.get() {
            return t.bracket(a, b, c);
        }
        let r = self.element(a).bracket_unchecked(&self.element(b), &self.element(c));
        self.index_of(&r).expect("closed under brackets")
    }

    /// Dense tables, built once. Bounded by the cube of the carrier size.
    pub fn tables(&self) -> Result<&FiniteTruss> {
        if let Some(t) = self.tables.get() {
            return Ok(t);
        }
        let n = self.len();
        self.limits
            .check(format!("truss tables of E({})", self.base), (n as u128).pow(3))?;
        let elems: Vec<_> = self.elements().collect();
        let g = self.base.size();
        // bracket and product decompose along (hom, translation), so build
        // them from the hom tables and group arithmetic
        let nh = self.homs.len();
        let mut hom_bracket = vec![0u32; nh * nh * nh];
        let mut hom_compose = vec![0u32; nh * nh];
        for (i, f) in self.homs.iter().enumerate() {
            for (j, h) in self.homs.iter().enumerate() {
                hom_compose[i * nh + j] = self.hom_index[&f.compose_unchecked(h)] as u32;
                for (k, l) in self.homs.iter().enumerate() {
                    hom_bracket[(i * nh + j) * nh + k] = self.hom_index[&f.bracket_unchecked(h, l)] as u32;
                }
            }
        }
        let gelems: Vec<_> = self.base.iter().collect();
        let heap = FiniteHeap::from_fn(n, |a, b, c| {
            let hb = hom_bracket[((a / g) * nh + b / g) * nh + c / g] as usize;
            let tb = self.base.bracket_unchecked(&gelems[a % g], &gelems[b % g], &gelems[c % g]);
            hb * g + self.base.index_of(&tb)
        })?;
        let mut mult = Vec::with_capacity(n * n);
        for a in &elems {
            let ha = self.hom_index[a.linear()];
            for (bi, b) in elems.iter().enumerate() {
                let hc = hom_compose[ha * nh + bi / g] as usize;
                let t = a.eval_unchecked(b.translation());
                mult.push((hc * g + self.base.index_of(&t)) as u32);
            }
        }
        let truss = FiniteTruss::new(heap, mult, Some(self.identity_index()))?;
        Ok(self.tables.get_or_init(|| truss))
    }
}

/// `E(G)`: all heap endomorphisms, hom-major, translation-minor.
pub fn build_endo_truss(g: &AbGroup, limits: &Limits) -> Result<EndoTruss> {
    let space = HomSpace::new(g, g);
    limits.check(
        format!("E({g})"),
        space.len().saturating_mul(g.cardinality() as u128),
    )?;
    let homs = hom_enumerate(g, g, limits)?;
    EndoTruss::from_homs(g, homs, limits)
}

/// The left absorbers of a materialized truss. For `E(G)` these are exactly
/// the constants.
pub fn endo_left_absorbers(t: &EndoTruss) -> Result<Vec<usize>> {
    Ok(left_absorbers(t.tables()?))
}

/// `Heap(G, H)` as all pairs `(φ̃, h₀)`, hom-major.
pub fn heap_morphisms(g: &AbGroup, h: &AbGroup, limits: &Limits) -> Result<Vec<HeapMorphism>> {
    let space = HomSpace::new(g, h);
    limits.check(
        format!("Heap({g}, {h})"),
        space.len().saturating_mul(h.cardinality() as u128),
    )?;
    let homs = hom_enumerate(g, h, limits)?;
    Ok(homs
        .into_iter()
        .flat_map(|f| {
            h.iter().map(move |t| HeapMorphism {
                linear: f.clone(),
                translation: t,
            })
        })
        .collect())
}

/// Heap isomorphisms `G → H`: pairs with bijective linear part.
pub fn heap_isos(g: &AbGroup, h: &AbGroup, limits: &Limits) -> Result<Vec<HeapMorphism>> {
    let isos = group_isos(g, h, limits)?;
    limits.check(
        format!("heap isomorphisms {g} -> {h}"),
        isos.len() as u128 * h.cardinality() as u128,
    )?;
    Ok(isos
        .into_iter()
        .flat_map(|f| {
            h.iter().map(move |t| HeapMorphism {
                linear: f.clone(),
                translation: t,
            })
        })
        .collect())
}
