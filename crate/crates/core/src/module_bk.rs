//! Truss isomorphisms `E_R(M) → E_S(N)` versus equivalences of `M` and `N`
//! as modules over their endomorphism rings.
//!
//! An equivalence is a group isomorphism `μ: M → N` together with the ring
//! isomorphism `ρ(u) = μuμ⁻¹` from `End_R(M)` onto `End_S(N)`. It gives the
//! truss isomorphism `α ↦ (ρ(α̃), μ(α(0)))`, and every truss isomorphism
//! arises this way.

use rayon::prelude::*;
use serde::Serialize;

use crate::bk::{require_truss_iso, theta, Certificate, TrussIsoCount};
use crate::endo::EndoTruss;
use crate::error::{Error, Result};
use crate::group::groups_isomorphic;
use crate::hom::{group_isos, GroupHom};
use crate::limits::Limits;
use crate::module::{build_linear_endo_truss, end_ring, hom_r, validate_module, EndRing, RModule};
use crate::ring::is_ring_iso;
use crate::truss::{enumerate_truss_isos, TrussMorphism};

/// A module with its endomorphism ring and `E_R(M)`, whose hom-major
/// numbering agrees with the ring's.
#[derive(Clone, Debug)]
pub struct ModuleContext {
    pub module: RModule,
    pub end: EndRing,
    pub truss: EndoTruss,
}

impl ModuleContext {
    pub fn new(module: RModule, limits: &Limits) -> Result<Self> {
        let end = end_ring(&module, limits)?;
        let truss = build_linear_endo_truss(&module, limits)?;
        debug_assert_eq!(truss.homs(), end.homs.as_slice());
        Ok(ModuleContext { module, end, truss })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleEquivalence {
    pub mu: GroupHom,
    /// `ρ` on indices of `End_R(M)` into `End_S(N)`.
    pub rho: Vec<usize>,
}

fn conjugation(a: &ModuleContext, b: &ModuleContext, mu: &GroupHom) -> Option<Vec<usize>> {
    let inv = mu.inverse().ok()?;
    let rho = a
        .end
        .homs
        .iter()
        .map(|u| b.end.index_of(&mu.compose_unchecked(&u.compose_unchecked(&inv))))
        .collect::<Option<Vec<_>>>()?;
    let mut seen = vec![false; b.end.homs.len()];
    rho.iter().for_each(|&i| seen[i] = true);
    seen.iter().all(|&s| s).then_some(rho)
}

/// Every group isomorphism `μ` whose conjugation maps `End_R(M)` onto
/// `End_S(N)`, in lexicographic order of `μ`.
pub fn module_equivalences(a: &ModuleContext, b: &ModuleContext, limits: &Limits) -> Result<Vec<ModuleEquivalence>> {
    if a.module.size() != b.module.size() || a.end.homs.len() != b.end.homs.len() {
        return Ok(Vec::new());
    }
    Ok(group_isos(a.module.group(), b.module.group(), limits)?
        .into_par_iter()
        .filter_map(|mu| conjugation(a, b, &mu).map(|rho| ModuleEquivalence { mu, rho }))
        .collect())
}

/// The first equivalence in lexicographic order of `μ`, if any.
pub fn find_module_equivalence(
    a: &ModuleContext,
    b: &ModuleContext,
    limits: &Limits,
) -> Result<Option<ModuleEquivalence>> {
    if a.module.size() != b.module.size() || a.end.homs.len() != b.end.homs.len() {
        return Ok(None);
    }
    Ok(group_isos(a.module.group(), b.module.group(), limits)?
        .into_par_iter()
        .find_map_first(|mu| conjugation(a, b, &mu).map(|rho| ModuleEquivalence { mu, rho })))
}

/// `μ` bijective, `ρ` a unital ring isomorphism and `μ(u·m) = ρ(u)·μ(m)`.
pub fn validate_equivalence(a: &ModuleContext, b: &ModuleContext, eq: &ModuleEquivalence) -> Result<()> {
    let bad = |msg: &str| Err(Error::InvalidEquivalence(msg.into()));
    let (gm, gn) = (a.module.group(), b.module.group());
    if eq.mu.source() != gm || eq.mu.target() != gn {
        return bad("μ has the wrong source or target");
    }
    if !eq.mu.is_bijective() {
        return bad("μ is not bijective");
    }
    if !is_ring_iso(&a.end.ring, &b.end.ring, &eq.rho) {
        return bad("ρ is not a ring isomorphism");
    }
    for (u, &ru) in a.end.homs.iter().zip(&eq.rho) {
        for x in gm.iter() {
            let lhs = eq.mu.apply_unchecked(&u.apply_unchecked(&x));
            let rhs = b.end.homs[ru].apply_unchecked(&eq.mu.apply_unchecked(&x));
            if lhs != rhs {
                return bad("μ(u·m) ≠ ρ(u)·μ(m)");
            }
        }
    }
    Ok(())
}

/// `Φ(α) = (ρ(α̃), μ(α(0)))`, validated as a truss isomorphism.
pub fn truss_iso_from_equivalence(
    a: &ModuleContext,
    b: &ModuleContext,
    eq: &ModuleEquivalence,
) -> Result<TrussMorphism> {
    validate_equivalence(a, b, eq)?;
    let (gm, gn) = (a.module.group(), b.module.group());
    let (m, n) = (gm.size(), gn.size());
    let map = (0..a.truss.len())
        .map(|idx| {
            let t = eq.mu.apply_unchecked(&gm.element_at(idx % m));
            eq.rho[idx / m] * n + gn.index_of(&t)
        })
        .collect();
    let phi = TrussMorphism::new(a.truss.len(), b.truss.len(), map)?;
    require_truss_iso(&a.truss, &b.truss, &phi).map_err(|e| Error::Violation(e.to_string()))?;
    Ok(phi)
}

/// `μ = (m ↦ Φ(m̂)(0))˜` and `ρ(u) = ` linear part of `Φ(u)`.
pub fn equivalence_from_truss_iso(
    a: &ModuleContext,
    b: &ModuleContext,
    phi: &TrussMorphism,
) -> Result<ModuleEquivalence> {
    let heap_iso = theta(&a.truss, &b.truss, phi)?;
    let mu = heap_iso.linear().clone();
    let gm = a.module.group();
    let rho = (0..a.end.homs.len())
        .map(|i| {
            let image = b.truss.element(phi.apply(i * gm.size()));
            b.end
                .index_of(image.linear())
                .ok_or_else(|| Error::Violation("Φ(u) leaves E_S(N)".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let eq = ModuleEquivalence { mu, rho };
    validate_equivalence(a, b, &eq).map_err(|e| Error::Violation(e.to_string()))?;
    Ok(eq)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleBkReport {
    pub left_module_size: usize,
    pub right_module_size: usize,
    pub left_truss_size: usize,
    pub right_truss_size: usize,
    pub left_end_ring_size: usize,
    pub right_end_ring_size: usize,
    pub groups_isomorphic: bool,
    pub equivalence: Option<ModuleEquivalence>,
    pub equivalence_count: usize,
    pub truss_iso: Option<TrussMorphism>,
    /// `equivalence_from_truss_iso ∘ truss_iso_from_equivalence` returns the
    /// equivalence it started from.
    pub roundtrip: bool,
    pub truss_iso_count: TrussIsoCount,
    /// Every brute-force truss isomorphism produced a valid equivalence.
    pub enumerated_isos_give_equivalences: bool,
    pub truss_isos_exist: Option<bool>,
    pub certificate: Certificate,
    pub consistent: bool,
}

/// Both directions for one pair of modules. The raw bijection search runs
/// whenever `|E_R(M)|` is within `limits.max_bijection_search`.
pub fn verify_module_bk(m: &RModule, n: &RModule, limits: &Limits) -> Result<ModuleBkReport> {
    let a = ModuleContext::new(m.clone(), limits)?;
    let b = ModuleContext::new(n.clone(), limits)?;
    let equivalences = module_equivalences(&a, &b, limits)?;
    let equivalence = equivalences.first().cloned();

    let mut roundtrip = true;
    let truss_iso = match &equivalence {
        Some(eq) => {
            let phi = truss_iso_from_equivalence(&a, &b, eq)?;
            roundtrip = &equivalence_from_truss_iso(&a, &b, &phi)? == eq;
            Some(phi)
        }
        None => None,
    };

    let mut truss_iso_count = TrussIsoCount::NotEnumerated;
    let mut from_isos = true;
    let (a_len, b_len) = (a.truss.len(), b.truss.len());
    let (truss_isos_exist, certificate) = if a_len != b_len {
        truss_iso_count = TrussIsoCount::Count(0);
        (Some(false), Certificate::Cardinality)
    } else if a_len <= limits.max_bijection_search {
        let found = enumerate_truss_isos(a.truss.tables()?, b.truss.tables()?, limits)?;
        truss_iso_count = TrussIsoCount::Count(found.len() as u64);
        for phi in &found {
            from_isos &= equivalence_from_truss_iso(&a, &b, phi).is_ok();
        }
        (Some(!found.is_empty()), Certificate::BruteForce)
    } else if truss_iso.is_some() {
        (Some(true), Certificate::Construction)
    } else if a.module.size() != b.module.size() {
        // constants are the left absorbers of E_R(M)
        (Some(false), Certificate::AbsorberCount)
    } else {
        (None, Certificate::Undecided)
    };

    let count_ok = match truss_iso_count {
        TrussIsoCount::Count(k) => k == (b.module.size() * equivalences.len()) as u64,
        TrussIsoCount::NotEnumerated => true,
    };
    let consistent = roundtrip
        && from_isos
        && count_ok
        && truss_isos_exist.map_or(true, |e| e == equivalence.is_some());

    Ok(ModuleBkReport {
        left_module_size: a.module.size(),
        right_module_size: b.module.size(),
        left_truss_size: a_len,
        right_truss_size: b_len,
        left_end_ring_size: a.end.homs.len(),
        right_end_ring_size: b.end.homs.len(),
        groups_isomorphic: groups_isomorphic(a.module.group(), b.module.group()),
        equivalence,
        equivalence_count: equivalences.len(),
        truss_iso,
        roundtrip,
        truss_iso_count,
        enumerated_isos_give_equivalences: from_isos,
        truss_isos_exist,
        certificate,
        consistent,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonIsoReport {
    pub p: u64,
    pub ring_size: usize,
    pub modules_valid: bool,
    pub truss_size: usize,
    pub truss_iso: Option<TrussMorphism>,
    pub truss_iso_valid: bool,
    pub hom_r: Vec<GroupHom>,
    pub hom_r_has_bijection: bool,
    pub groups_isomorphic: bool,
    /// A truss isomorphism exists while no module isomorphism does.
    pub holds: bool,
}

/// `R = F_p × F_p`, `M = F_p × 0`, `N = 0 × F_p`: `E_R(M) ≅ E_R(N)` although
/// `Hom_R(M, N)` has no bijection.
pub fn example_non_iso(p: u64, limits: &Limits) -> Result<NonIsoReport> {
    let m = RModule::fp_factor(p, 0)?;
    let n = RModule::fp_factor(p, 1)?;
    let modules_valid = validate_module(&m).is_valid() && validate_module(&n).is_valid();
    let a = ModuleContext::new(m, limits)?;
    let b = ModuleContext::new(n, limits)?;
    let truss_iso = match find_module_equivalence(&a, &b, limits)? {
        Some(eq) => Some(truss_iso_from_equivalence(&a, &b, &eq)?),
        None => None,
    };
    let truss_iso_valid = truss_iso
        .as_ref()
        .is_some_and(|phi| phi.is_isomorphism(a.truss.tables().unwrap(), b.truss.tables().unwrap()));
    let homs = hom_r(&a.module, &b.module, limits)?;
    let hom_r_has_bijection = homs.iter().any(GroupHom::is_bijective);
    Ok(NonIsoReport {
        p,
        ring_size: a.module.ring().size(),
        modules_valid,
        truss_size: a.truss.len(),
        truss_iso,
        truss_iso_valid,
        hom_r: homs,
        hom_r_has_bijection,
        groups_isomorphic: groups_isomorphic(a.module.group(), b.module.group()),
        holds: modules_valid && truss_iso_valid && !hom_r_has_bijection,
    })
}
