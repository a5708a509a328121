//! Finite left modules given by action tables, the heap-of-module action
//! `r ⋅ᵉ m = r·m − r·e + e`, the sets `H_R(M, N)` and the trusses `E_R(M)`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::endo::{EndoTruss, HeapMorphism};
use crate::error::{Error, Result};
use crate::group::{AbGroup, GroupElement};
use crate::hom::{hom_enumerate, GroupHom};
use crate::limits::Limits;
use crate::report::{exhaustive_over, Axiom, ValidationReport};
use crate::ring::{validate_ring, FiniteRing, RingFile};

/// A left module: an abelian group with an action table indexed
/// `r · |M| + m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RModule {
    ring: Arc<FiniteRing>,
    group: AbGroup,
    action: Vec<u32>,
}

impl RModule {
    /// Checks table shape only; see [`validate_module`] for the axioms.
    pub fn from_table(ring: Arc<FiniteRing>, group: AbGroup, action: Vec<u32>) -> Result<Self> {
        let (nr, nm) = (ring.size(), group.size());
        if action.len() != nr * nm {
            return Err(Error::InvalidModule(format!(
                "action table has {} entries, expected {}",
                action.len(),
                nr * nm
            )));
        }
        if let Some(&v) = action.iter().find(|&&v| v as usize >= nm) {
            return Err(Error::InvalidModule(format!("action entry {v} out of range")));
        }
        Ok(RModule { ring, group, action })
    }

    pub fn from_fn(ring: Arc<FiniteRing>, group: AbGroup, f: impl Fn(usize, &GroupElement) -> GroupElement) -> Result<Self> {
        let elems: Vec<_> = group.iter().collect();
        let mut action = Vec::with_capacity(ring.size() * elems.len());
        for r in 0..ring.size() {
            for x in &elems {
                let y = f(r, x);
                group.check(&y)?;
                action.push(group.index_of(&y) as u32);
            }
        }
        RModule::from_table(ring, group, action)
    }

    /// `R` acting on itself by left multiplication.
    pub fn regular(ring: Arc<FiniteRing>) -> Result<Self> {
        let group = ring
            .additive()
            .cloned()
            .ok_or_else(|| Error::InvalidModule("ring has no coordinate form".into()))?;
        let action = ring.mult_table().to_vec();
        RModule::from_table(ring, group, action)
    }

    /// `Z/m` as a `Z/n`-module through reduction; needs `m | n`.
    pub fn zn_quotient(n: u64, m: u64) -> Result<Self> {
        if m == 0 || n % m != 0 {
            return Err(Error::InvalidModule(format!("Z/{m} is not a quotient of Z/{n}")));
        }
        let ring = Arc::new(FiniteRing::zn(n)?);
        let group = AbGroup::cyclic(m)?;
        RModule::from_fn(ring, group, |r, x| {
            GroupElement(vec![((r as u128 * x.0[0] as u128) % m as u128) as u64])
        })
    }

    /// `F_p × 0` (`which = 0`) or `0 × F_p` (`which = 1`) over `F_p × F_p`,
    /// carried by `Z/p`.
    pub fn fp_factor(p: u64, which: usize) -> Result<Self> {
        if which > 1 {
            return Err(Error::InvalidModule(format!("factor index {which} must be 0 or 1")));
        }
        let fp = FiniteRing::fp(p)?;
        let ring = Arc::new(FiniteRing::product(&fp, &fp)?);
        let group = AbGroup::cyclic(p)?;
        let ps = p as usize;
        RModule::from_fn(ring, group, |r, x| {
            let scalar = if which == 0 { r / ps } else { r % ps };
            GroupElement(vec![((scalar as u128 * x.0[0] as u128) % p as u128) as u64])
        })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.group.size()
    }

    /// `r · m` on indices.
    #[inline]
    pub fn act(&self, r: usize, m: usize) -> usize {
        self.action[r * self.group.size() + m] as usize
    }

    pub fn act_element(&self, r: usize, m: &GroupElement) -> GroupElement {
        self.group.element_at(self.act(r, self.group.index_of(m)))
    }

    pub fn action_table(&self) -> &[u32] {
        &self.action
    }

    pub fn set_action_entry(&mut self, r: usize, m: usize, value: usize) {
        let n = self.group.size();
        self.action[r * n + m] = value as u32;
    }

    /// `M` as a module over `End_R(M)`, acting by evaluation.
    pub fn over_end_ring(&self, limits: &Limits) -> Result<(EndRing, RModule)> {
        let end = end_ring(self, limits)?;
        let ring = Arc::new(end.ring.clone());
        let module = RModule::from_fn(ring, self.group.clone(), |u, x| end.homs[u].apply_unchecked(x))?;
        Ok((end, module))
    }

    pub fn to_file(&self) -> Option<ModuleFile> {
        Some(ModuleFile {
            ring: self.ring.to_file()?,
            module: ActionFile {
                orders: self.group.orders().to_vec(),
                action: self.action.clone(),
            },
        })
    }
}

/// JSON form `{"ring": {...}, "module": {"orders": [..], "action": [..]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub ring: RingFile,
    pub module: ActionFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionFile {
    pub orders: Vec<u64>,
    pub action: Vec<u32>,
}

impl ModuleFile {
    pub fn to_module(&self, limits: &Limits) -> Result<RModule> {
        let ring = Arc::new(self.ring.to_ring(limits)?);
        let group = AbGroup::new(self.module.orders.clone())?;
        limits.check("module action table", ring.size() as u128 * group.cardinality() as u128)?;
        RModule::from_table(ring, group, self.module.action.clone())
    }
}

/// `r ⋅ᵉ m = r·m − r·e + e`, on indices.
pub fn action_at(m: &RModule, e: usize, r: usize, x: usize) -> usize {
    let g = &m.group;
    let (rx, re, ee) = (g.element_at(m.act(r, x)), g.element_at(m.act(r, e)), g.element_at(e));
    g.index_of(&g.bracket_unchecked(&rx, &re, &ee))
}

fn check_action(
    rep: &mut ValidationReport,
    ring: &FiniteRing,
    nm: usize,
    add: &(dyn Fn(usize, usize) -> usize + Sync),
    act: &(dyn Fn(usize, usize) -> usize + Sync),
) {
    let nr = ring.size();
    rep.push(exhaustive_over(Axiom::ActionAddsScalars, &[nr, nr, nm], |t| {
        act(ring.add(t[0], t[1]), t[2]) == add(act(t[0], t[2]), act(t[1], t[2]))
    }));
    rep.push(exhaustive_over(Axiom::ActionAddsVectors, &[nr, nm, nm], |t| {
        act(t[0], add(t[1], t[2])) == add(act(t[0], t[1]), act(t[0], t[2]))
    }));
    rep.push(exhaustive_over(Axiom::ActionAssociativity, &[nr, nr, nm], |t| {
        act(ring.mul(t[0], t[1]), t[2]) == act(t[0], act(t[1], t[2]))
    }));
    rep.push(exhaustive_over(Axiom::ActionUnit, &[nm], |t| act(ring.one(), t[0]) == t[0]));
}

/// Exhaustive check of bi-additivity, associativity and unitality of the
/// action. The group axioms hold by construction.
pub fn validate_module(m: &RModule) -> ValidationReport {
    let g = &m.group;
    let elems: Vec<_> = g.iter().collect();
    let add = |a: usize, b: usize| g.index_of(&g.add_unchecked(&elems[a], &elems[b]));
    let mut rep = ValidationReport::default();
    check_action(&mut rep, &m.ring, m.size(), &add, &|r, x| m.act(r, x));
    rep
}

/// Validates `(M, +_e, ⋅ᵉ)` with `x +_e y = x − e + y`, including the group
/// axioms of the retract.
pub fn validate_induced_module(m: &RModule, e: usize) -> ValidationReport {
    let g = &m.group;
    let n = m.size();
    let elems: Vec<_> = g.iter().collect();
    let add = |a: usize, b: usize| g.index_of(&g.bracket_unchecked(&elems[a], &elems[e], &elems[b]));
    let mut rep = ValidationReport::default();
    rep.push(exhaustive_over(Axiom::AddAssociativity, &[n, n, n], |t| {
        add(add(t[0], t[1]), t[2]) == add(t[0], add(t[1], t[2]))
    }));
    rep.push(exhaustive_over(Axiom::AddCommutativity, &[n, n], |t| add(t[0], t[1]) == add(t[1], t[0])));
    rep.push(exhaustive_over(Axiom::AddIdentity, &[n], |t| add(t[0], e) == t[0]));
    rep.push(exhaustive_over(Axiom::AddInverse, &[n], |t| (0..n).any(|y| add(t[0], y) == e)));
    check_action(&mut rep, &m.ring, n, &add, &|r, x| action_at(m, e, r, x));
    rep
}

fn same_ring(m: &RModule, n: &RModule) -> Result<()> {
    if Arc::ptr_eq(&m.ring, &n.ring) || m.ring == n.ring {
        Ok(())
    } else {
        Err(Error::InvalidModule("modules are over different rings".into()))
    }
}

/// `f(r·x) = r·f(x)` for all `r`, `x`.
pub fn is_r_linear(m: &RModule, n: &RModule, f: &GroupHom) -> bool {
    let images: Vec<_> = m.group.iter().map(|x| n.group.index_of(&f.apply_unchecked(&x))).collect();
    (0..m.ring.size()).all(|r| (0..m.size()).all(|x| images[m.act(r, x)] == n.act(r, images[x])))
}

/// `Hom_R(M, N)` by filtering all additive maps.
pub fn hom_r(m: &RModule, n: &RModule, limits: &Limits) -> Result<Vec<GroupHom>> {
    same_ring(m, n)?;
    Ok(hom_enumerate(&m.group, &n.group, limits)?
        .into_iter()
        .filter(|f| is_r_linear(m, n, f))
        .collect())
}

/// `End_R(M)` with pointwise addition and composition; element `i` of
/// `ring` is `homs[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndRing {
    pub homs: Vec<GroupHom>,
    pub ring: FiniteRing,
}

impl EndRing {
    pub fn index_of(&self, f: &GroupHom) -> Option<usize> {
        self.homs.iter().position(|g| g == f)
    }
}

pub fn end_ring(m: &RModule, limits: &Limits) -> Result<EndRing> {
    let homs = hom_r(m, m, limits)?;
    let k = homs.len();
    limits.check("End_R(M) tables", (k as u128).pow(2))?;
    let index: HashMap<&GroupHom, usize> = homs.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let lookup = |f: &GroupHom| -> Result<u32> {
        index
            .get(f)
            .map(|&i| i as u32)
            .ok_or_else(|| Error::Violation("End_R(M) is not closed".into()))
    };
    let mut add = Vec::with_capacity(k * k);
    let mut mult = Vec::with_capacity(k * k);
    for f in &homs {
        for g in &homs {
            add.push(lookup(&f.add(g)?)?);
            mult.push(lookup(&f.compose_unchecked(g))?);
        }
    }
    let zero = lookup(&GroupHom::zero(&m.group, &m.group))? as usize;
    let one = lookup(&GroupHom::identity(&m.group))? as usize;
    let ring = FiniteRing::from_tables(k, add, mult, zero, one)?;
    if let Some(f) = validate_ring(&ring).failures().next() {
        return Err(Error::Violation(format!("End_R(M) fails {:?}", f.axiom)));
    }
    Ok(EndRing { homs, ring })
}

/// A heap morphism `M → N` with `R`-linear linear part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LinearHeapMorphism {
    underlying: HeapMorphism,
}

impl LinearHeapMorphism {
    pub fn new(m: &RModule, n: &RModule, phi: HeapMorphism) -> Result<Self> {
        same_ring(m, n)?;
        if phi.source() != &m.group || phi.target() != &n.group {
            return Err(Error::GroupMismatch {
                expected: m.group.orders().to_vec(),
                actual: phi.source().orders().to_vec(),
            });
        }
        if !satisfies_linearity(m, n, &phi) {
            return Err(Error::NotAHeapMorphism("φ(rm) ≠ rφ(m) − rφ(0) + φ(0)".into()));
        }
        Ok(LinearHeapMorphism { underlying: phi })
    }

    pub fn underlying(&self) -> &HeapMorphism {
        &self.underlying
    }

    /// `(φ(0), φ̃)`.
    pub fn pair(&self) -> (&GroupElement, &GroupHom) {
        (self.underlying.translation(), self.underlying.linear())
    }
}

/// `φ(r·x) = r·φ(x) − r·φ(0) + φ(0)` for all `r`, `x`.
pub fn satisfies_linearity(m: &RModule, n: &RModule, phi: &HeapMorphism) -> bool {
    let h = &n.group;
    let table: Vec<_> = phi.table().iter().map(|y| h.index_of(y)).collect();
    let at0 = table[0];
    (0..m.ring.size()).all(|r| {
        (0..m.size()).all(|x| {
            let rhs = h.bracket_unchecked(
                &h.element_at(n.act(r, table[x])),
                &h.element_at(n.act(r, at0)),
                &h.element_at(at0),
            );
            table[m.act(r, x)] == h.index_of(&rhs)
        })
    })
}

/// `H_R(M, N)` as all pairs `(φ̃, h₀)` with `φ̃ ∈ Hom_R(M, N)`, hom-major.
pub fn linear_heap_morphisms(m: &RModule, n: &RModule, limits: &Limits) -> Result<Vec<LinearHeapMorphism>> {
    let homs = hom_r(m, n, limits)?;
    limits.check("H_R(M, N)", homs.len() as u128 * n.group.cardinality() as u128)?;
    Ok(homs
        .iter()
        .flat_map(|f| {
            n.group.iter().map(move |t| LinearHeapMorphism {
                underlying: HeapMorphism::new(f.clone(), t).expect("translation lies in the target"),
            })
        })
        .collect())
}

/// `E_R(M)` as a sub-truss of `E(M)`.
pub fn build_linear_endo_truss(m: &RModule, limits: &Limits) -> Result<EndoTruss> {
    let homs = hom_r(m, m, limits)?;
    EndoTruss::from_homs(&m.group, homs, limits)
}
