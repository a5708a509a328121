//! Truss isomorphisms `E(G) → E(H)` versus heap isomorphisms `G → H`.
//!
//! `theta` reads a heap map off the images of the constants,
//! `φ(a) = Φ(â)(0)`, and `upsilon` conjugates, `Φ(α) = φ ∘ α ∘ φ⁻¹`. The two
//! are mutually inverse. Both work on any [`EndoTruss`] that contains the
//! constants, so the module layer reuses them for `E_R(M)`.

use std::collections::BTreeSet;

use serde::{Serialize, Serializer};

use crate::endo::{build_endo_truss, decompose, heap_isos, EndoTruss, HeapMorphism};
use crate::error::{Error, Result};
use crate::group::{groups_isomorphic, AbGroup};
use crate::hom::{group_isos, GroupHom};
use crate::limits::Limits;
use crate::truss::{enumerate_truss_isos, left_absorbers, TrussMorphism};

/// Rejects anything that is not a bijective truss morphism `src → tgt`.
pub fn require_truss_iso(src: &EndoTruss, tgt: &EndoTruss, phi: &TrussMorphism) -> Result<()> {
    if phi.source_size() != src.len() || phi.target_size() != tgt.len() {
        return Err(Error::NotAnIsomorphism(format!(
            "map {} -> {} does not match trusses of sizes {} and {}",
            phi.source_size(),
            phi.target_size(),
            src.len(),
            tgt.len()
        )));
    }
    if !phi.is_bijective() {
        return Err(Error::NotAnIsomorphism("map is not bijective".into()));
    }
    if let Some(at) = phi.preservation_failure(src.tables()?, tgt.tables()?) {
        return Err(Error::NotAnIsomorphism(format!("operations not preserved at {at:?}")));
    }
    Ok(())
}

/// `Θ(Φ) = Φ(^_)(0)`.
pub fn theta(src: &EndoTruss, tgt: &EndoTruss, phi: &TrussMorphism) -> Result<HeapMorphism> {
    require_truss_iso(src, tgt, phi)?;
    let (g, h) = (src.base(), tgt.base());
    let mut table = Vec::with_capacity(g.size());
    for a in g.iter() {
        let image = tgt.element(phi.apply(src.hat_index(&a)));
        if !image.is_constant() {
            return Err(Error::Violation(format!(
                "truss isomorphism sends the constant at {a} to a non-constant map"
            )));
        }
        table.push(image.translation().clone());
    }
    let heap_map = decompose(g, h, &table)?;
    if !heap_map.is_bijective() {
        return Err(Error::Violation("Θ(Φ) is not bijective".into()));
    }
    Ok(heap_map)
}

/// `Υ(φ)(α) = φ ∘ α ∘ φ⁻¹`, as a map on truss indices. Fails if some
/// conjugate leaves `tgt` (possible for module trusses, never for `E(H)`).
pub fn upsilon(src: &EndoTruss, tgt: &EndoTruss, phi: &HeapMorphism) -> Result<TrussMorphism> {
    if phi.source() != src.base() || phi.target() != tgt.base() {
        return Err(Error::GroupMismatch {
            expected: src.base().orders().to_vec(),
            actual: phi.source().orders().to_vec(),
        });
    }
    let inv = phi
        .inverse()
        .map_err(|_| Error::NotAnIsomorphism("heap morphism is not bijective".into()))?;
    let map = src
        .elements()
        .map(|alpha| {
            let conj = phi.compose(&alpha)?.compose(&inv)?;
            tgt.index_of(&conj).ok_or_else(|| {
                Error::NotAnIsomorphism("conjugate does not lie in the target truss".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let m = TrussMorphism::new(src.len(), tgt.len(), map)?;
    if !m.is_bijective() {
        return Err(Error::NotAnIsomorphism("conjugation is not onto the target truss".into()));
    }
    Ok(m)
}

/// A truss isomorphism together with the heap isomorphism inducing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BKWitness {
    pub phi: TrussMorphism,
    pub heap_iso: HeapMorphism,
    /// `a ↦ φ(a) − φ(0)`.
    pub group_iso: GroupHom,
}

impl BKWitness {
    /// Runs Θ and confirms `Φ(α) = φαφ⁻¹` on every α.
    pub fn from_truss_iso(src: &EndoTruss, tgt: &EndoTruss, phi: &TrussMorphism) -> Result<Self> {
        let heap_iso = theta(src, tgt, phi)?;
        let inv = heap_iso.inverse()?;
        for (i, alpha) in src.elements().enumerate() {
            let conj = heap_iso.compose(&alpha)?.compose(&inv)?;
            if tgt.element(phi.apply(i)) != conj {
                return Err(Error::Violation(format!("Φ differs from conjugation by Θ(Φ) at element {i}")));
            }
        }
        let group_iso = heap_iso.linear().clone();
        Ok(BKWitness {
            phi: phi.clone(),
            heap_iso,
            group_iso,
        })
    }
}

/// Number of truss isomorphisms, or a marker when the brute-force count was
/// not run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrussIsoCount {
    Count(u64),
    NotEnumerated,
}

impl Serialize for TrussIsoCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TrussIsoCount::Count(n) => s.serialize_u64(*n),
            TrussIsoCount::NotEnumerated => s.serialize_str("not_enumerated"),
        }
    }
}

/// How the existence (or not) of a truss isomorphism was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// A truss isomorphism was constructed and validated.
    Construction,
    /// The carriers have different sizes.
    Cardinality,
    /// Left-absorber counts differ; truss isomorphisms preserve absorbers.
    AbsorberCount,
    /// Every bijection was checked.
    BruteForce,
    /// Nothing settles it within the limits.
    Undecided,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BkOptions {
    /// Run the raw bijection search when `|E(G)|` is within
    /// `limits.max_bijection_search`.
    pub brute_force: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BkReport {
    pub left: AbGroup,
    pub right: AbGroup,
    pub heap_iso_count: u64,
    pub truss_iso_count: TrussIsoCount,
    pub theta_upsilon_roundtrip: bool,
    pub groups_isomorphic: bool,
    pub consistent: bool,
    pub left_truss_size: u64,
    pub right_truss_size: u64,
    pub group_iso_count: u64,
    /// Distinct truss isomorphisms obtained as `Υ(φ)`.
    pub structural_truss_iso_count: u64,
    pub upsilon_injective: bool,
    pub upsilon_theta_roundtrip: bool,
    /// `Some(true)` iff a truss isomorphism exists, when settled.
    pub truss_isos_exist: Option<bool>,
    pub certificate: Certificate,
    pub brute_force: BruteForceStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BruteForceStatus {
    NotRequested,
    Ran,
    SkippedOverBound,
    NotNeeded,
}

/// Checks the correspondence for one ordered pair of groups: Θ∘Υ = id on
/// heap isos, Υ injective, Υ∘Θ = id on truss isos, the count
/// `|H| · #Iso(G, H)`, and agreement with `groups_isomorphic`.
pub fn verify_bk(g: &AbGroup, h: &AbGroup, opts: BkOptions, limits: &Limits) -> Result<BkReport> {
    let eg = build_endo_truss(g, limits)?;
    let eh = build_endo_truss(h, limits)?;
    let iso_groups = groups_isomorphic(g, h);
    let group_iso_count = group_isos(g, h, limits)?.len() as u64;
    let heap_iso_list = heap_isos(g, h, limits)?;
    let heap_iso_count = heap_iso_list.len() as u64;

    let mut theta_upsilon = true;
    let mut upsilon_theta = true;
    let mut structural = BTreeSet::new();
    for phi in &heap_iso_list {
        let big_phi = upsilon(&eg, &eh, phi)?;
        let back = theta(&eg, &eh, &big_phi)?;
        theta_upsilon &= &back == phi;
        upsilon_theta &= upsilon(&eg, &eh, &back)? == big_phi;
        structural.insert(big_phi);
    }
    let structural_count = structural.len() as u64;
    let upsilon_injective = structural_count == heap_iso_count;

    let same_size = eg.len() == eh.len();
    let mut truss_iso_count = TrussIsoCount::NotEnumerated;
    let mut brute_force = if opts.brute_force {
        BruteForceStatus::SkippedOverBound
    } else {
        BruteForceStatus::NotRequested
    };
    let (truss_isos_exist, certificate) = if !same_size {
        truss_iso_count = TrussIsoCount::Count(0);
        if opts.brute_force {
            brute_force = BruteForceStatus::NotNeeded;
        }
        (Some(false), Certificate::Cardinality)
    } else if opts.brute_force && eg.len() <= limits.max_bijection_search {
        let found = enumerate_truss_isos(eg.tables()?, eh.tables()?, limits)?;
        brute_force = BruteForceStatus::Ran;
        truss_iso_count = TrussIsoCount::Count(found.len() as u64);
        for big_phi in &found {
            let back = upsilon(&eg, &eh, &theta(&eg, &eh, big_phi)?)?;
            upsilon_theta &= &back == big_phi;
        }
        let found: BTreeSet<_> = found.into_iter().collect();
        upsilon_theta &= found == structural;
        (Some(!found.is_empty()), Certificate::BruteForce)
    } else if structural_count > 0 {
        (Some(true), Certificate::Construction)
    } else if eg.len() <= 4096
        && left_absorbers(eg.tables()?).len() != left_absorbers(eh.tables()?).len()
    {
        (Some(false), Certificate::AbsorberCount)
    } else {
        (None, Certificate::Undecided)
    };

    let count_ok = match truss_iso_count {
        TrussIsoCount::Count(n) => n == h.cardinality() * group_iso_count && n == heap_iso_count,
        TrussIsoCount::NotEnumerated => true,
    };
    let consistent = theta_upsilon
        && upsilon_theta
        && upsilon_injective
        && count_ok
        && heap_iso_count == h.cardinality() * group_iso_count
        && truss_isos_exist.map_or(true, |e| e == iso_groups);

    Ok(BkReport {
        left: g.clone(),
        right: h.clone(),
        heap_iso_count,
        truss_iso_count,
        theta_upsilon_roundtrip: theta_upsilon,
        groups_isomorphic: iso_groups,
        consistent,
        left_truss_size: eg.len() as u64,
        right_truss_size: eh.len() as u64,
        group_iso_count,
        structural_truss_iso_count: structural_count,
        upsilon_injective,
        upsilon_theta_roundtrip: upsilon_theta,
        truss_isos_exist,
        certificate,
        brute_force,
    })
}
