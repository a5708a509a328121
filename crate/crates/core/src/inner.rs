//! Intertwiners of an arbitrary truss morphism `Φ: E(G) → E(H)`.
//!
//! With `Φ(0̂) = (ε, e)`, `ε` is an idempotent endomorphism of `H` killing
//! `e`. The set `Ξ = {ξ ∈ Heap(G, H) | Φ(α)ξ = ξα for all α}` is found by
//! filtering all of `Heap(G, H)`, and `c ↦ ξ_c` with `ξ_c(a) = Φ(â)(c)` is a
//! bijection `e + Im ε → Ξ`.

use itertools::Itertools;
use serde::Serialize;

use crate::endo::{build_endo_truss, decompose, heap_morphisms, EndoTruss, HeapMorphism};
use crate::error::{Error, Result};
use crate::group::{AbGroup, GroupElement};
use crate::hom::GroupHom;
use crate::limits::Limits;
use crate::truss::{enumerate_truss_morphisms, TrussMorphism};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InnerData {
    pub epsilon: GroupHom,
    pub e: GroupElement,
    /// In the hom-major order of `Heap(G, H)`.
    pub xi_set: Vec<HeapMorphism>,
    /// `e + Im ε`, ordered by element index.
    pub coset: Vec<GroupElement>,
}

fn require_morphism(src: &EndoTruss, tgt: &EndoTruss, phi: &TrussMorphism) -> Result<()> {
    if phi.source_size() != src.len() || phi.target_size() != tgt.len() {
        return Err(Error::NotATrussMorphism(format!(
            "map {} -> {} does not match trusses of sizes {} and {}",
            phi.source_size(),
            phi.target_size(),
            src.len(),
            tgt.len()
        )));
    }
    match phi.preservation_failure(src.tables()?, tgt.tables()?) {
        Some(at) => Err(Error::NotATrussMorphism(format!("operations not preserved at {at:?}"))),
        None => Ok(()),
    }
}

/// `Φ(α) ∘ ξ = ξ ∘ α` for every `α ∈ src`.
pub fn intertwines(src: &EndoTruss, tgt: &EndoTruss, phi: &TrussMorphism, xi: &HeapMorphism) -> bool {
    src.elements().enumerate().all(|(i, alpha)| {
        tgt.element(phi.apply(i)).compose_unchecked(xi) == xi.compose_unchecked(&alpha)
    })
}

pub fn inner_data(src: &EndoTruss, tgt: &EndoTruss, phi: &TrussMorphism, limits: &Limits) -> Result<InnerData> {
    require_morphism(src, tgt, phi)?;
    let (g, h) = (src.base(), tgt.base());
    let zero_image = tgt.element(phi.apply(src.hat_index(&g.zero())));
    let epsilon = zero_image.linear().clone();
    let e = zero_image.translation().clone();
    let xi_set = heap_morphisms(g, h, limits)?
        .into_iter()
        .filter(|xi| intertwines(src, tgt, phi, xi))
        .collect();
    Ok(InnerData {
        coset: coset(&epsilon, &e),
        epsilon,
        e,
        xi_set,
    })
}

fn coset(epsilon: &GroupHom, e: &GroupElement) -> Vec<GroupElement> {
    let h = epsilon.target();
    let mut seen = vec![false; h.size()];
    for x in h.iter() {
        let c = h.add_unchecked(&epsilon.apply_unchecked(&x), e);
        seen[h.index_of(&c)] = true;
    }
    seen.iter()
        .enumerate()
        .filter(|&(_, &s)| s)
        .map(|(i, _)| h.element_at(i))
        .collect()
}

/// `ξ_b(a) = Φ(â)(b)`.
pub fn xi_b(src: &EndoTruss, tgt: &EndoTruss, phi: &TrussMorphism, b: &GroupElement) -> Result<HeapMorphism> {
    let (g, h) = (src.base(), tgt.base());
    h.check(b)?;
    let table: Vec<_> = g
        .iter()
        .map(|a| tgt.element(phi.apply(src.hat_index(&a))).eval_unchecked(b))
        .collect();
    decompose(g, h, &table).map_err(|_| Error::Violation(format!("ξ_{b} is not a heap morphism")))
}

/// The table `c ↦ ξ_c` on the coset, with its bijectivity onto `Ξ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vartheta {
    pub table: Vec<(GroupElement, HeapMorphism)>,
    pub injective: bool,
    /// Every `ξ_c` lies in `Ξ` and every member of `Ξ` is hit.
    pub onto_xi: bool,
}

impl Vartheta {
    pub fn is_bijective(&self) -> bool {
        self.injective && self.onto_xi
    }
}

pub fn vartheta(src: &EndoTruss, tgt: &EndoTruss, phi: &TrussMorphism, data: &InnerData) -> Result<Vartheta> {
    let table = data
        .coset
        .iter()
        .map(|c| Ok((c.clone(), xi_b(src, tgt, phi, c)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut images: Vec<_> = table.iter().map(|(_, xi)| xi).collect();
    images.sort();
    images.dedup();
    let injective = images.len() == table.len();
    let onto_xi = images.len() == data.xi_set.len() && images.iter().all(|xi| data.xi_set.contains(xi));
    Ok(Vartheta {
        table,
        injective,
        onto_xi,
    })
}

/// If some `Φ(â)` is constant, the unique intertwiner; `None` when no
/// constant is sent to a constant.
pub fn unique_xi_if_constant(
    src: &EndoTruss,
    tgt: &EndoTruss,
    phi: &TrussMorphism,
    limits: &Limits,
) -> Result<Option<HeapMorphism>> {
    if !sends_some_constant_to_constant(src, tgt, phi) {
        return Ok(None);
    }
    let data = inner_data(src, tgt, phi, limits)?;
    match data.xi_set.as_slice() {
        [xi] => Ok(Some(xi.clone())),
        many => Err(Error::Violation(format!(
            "{} intertwiners although a constant is sent to a constant",
            many.len()
        ))),
    }
}

fn sends_some_constant_to_constant(src: &EndoTruss, tgt: &EndoTruss, phi: &TrussMorphism) -> bool {
    src.constants()
        .into_iter()
        .any(|c| tgt.element(phi.apply(c)).is_constant())
}

/// Every inner property checked for one truss morphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InnerCheck {
    pub map: Vec<usize>,
    pub epsilon_idempotent: bool,
    pub epsilon_kills_e: bool,
    pub xi_nonempty: bool,
    /// Each `ξ_b` intertwines and has `ξ_b(0)` in the coset.
    pub xi_b_in_xi: bool,
    pub vartheta_bijective: bool,
    pub xi_count: usize,
    pub image_size: usize,
    /// Some constant is sent to a constant.
    pub corollary_applies: bool,
    /// `Some(true)` when the corollary applies and `Ξ` is a single
    /// intertwiner.
    pub corollary_holds: Option<bool>,
    /// Every constant is sent to a constant. Not a theorem for non-surjective
    /// morphisms; recorded, not required.
    pub constants_preserved: bool,
    pub surjective: bool,
}

impl InnerCheck {
    pub fn passed(&self) -> bool {
        self.epsilon_idempotent
            && self.epsilon_kills_e
            && self.xi_nonempty
            && self.xi_b_in_xi
            && self.vartheta_bijective
            && self.xi_count == self.image_size
            && self.corollary_holds != Some(false)
            && (!self.surjective || self.constants_preserved)
    }
}

pub fn check_inner(src: &EndoTruss, tgt: &EndoTruss, phi: &TrussMorphism, limits: &Limits) -> Result<InnerCheck> {
    let data = inner_data(src, tgt, phi, limits)?;
    let h = tgt.base();
    let eps = &data.epsilon;
    let epsilon_idempotent = &eps.compose_unchecked(eps) == eps;
    let epsilon_kills_e = eps.apply_unchecked(&data.e) == h.zero();
    let xi_b_in_xi = h.iter().all(|b| match xi_b(src, tgt, phi, &b) {
        Ok(xi) => data.xi_set.contains(&xi) && data.coset.contains(xi.translation()),
        Err(_) => false,
    });
    let vt = vartheta(src, tgt, phi, &data)?;
    let image_size = eps.image_indices().len();
    let corollary_applies = sends_some_constant_to_constant(src, tgt, phi);
    let corollary_holds = corollary_applies
        .then(|| data.xi_set.len() == 1 && intertwines(src, tgt, phi, &data.xi_set[0]));
    let constants_preserved = src
        .constants()
        .into_iter()
        .all(|c| tgt.element(phi.apply(c)).is_constant());
    let mut hit = vec![false; tgt.len()];
    phi.map().iter().for_each(|&i| hit[i] = true);
    Ok(InnerCheck {
        map: phi.map().to_vec(),
        epsilon_idempotent,
        epsilon_kills_e,
        xi_nonempty: !data.xi_set.is_empty(),
        xi_b_in_xi,
        vartheta_bijective: vt.is_bijective(),
        xi_count: data.xi_set.len(),
        image_size,
        corollary_applies,
        corollary_holds,
        constants_preserved,
        surjective: hit.iter().all(|&x| x),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InnerSummary {
    pub left: AbGroup,
    pub right: AbGroup,
    pub candidate_maps: u128,
    pub morphisms: usize,
    pub passed: usize,
    pub corollary_applicable: usize,
    pub constants_preserved: usize,
    pub surjective: usize,
    pub all_passed: bool,
    pub checks: Vec<InnerCheck>,
}

/// Enumerates every truss morphism `E(G) → E(H)` by brute force and checks
/// each one.
pub fn verify_inner(g: &AbGroup, h: &AbGroup, limits: &Limits) -> Result<InnerSummary> {
    let eg = build_endo_truss(g, limits)?;
    let eh = build_endo_truss(h, limits)?;
    let candidate_maps = (eh.len() as u128).checked_pow(eg.len() as u32).unwrap_or(u128::MAX);
    let morphisms = enumerate_truss_morphisms(eg.tables()?, eh.tables()?, limits)?;
    let checks = morphisms
        .iter()
        .map(|phi| check_inner(&eg, &eh, phi, limits))
        .collect::<Result<Vec<_>>>()?;
    let count = |f: fn(&InnerCheck) -> bool| checks.iter().filter(|c| f(c)).count();
    Ok(InnerSummary {
        left: g.clone(),
        right: h.clone(),
        candidate_maps,
        morphisms: checks.len(),
        passed: count(InnerCheck::passed),
        corollary_applicable: count(|c| c.corollary_applies),
        constants_preserved: count(|c| c.constants_preserved),
        surjective: count(|c| c.surjective),
        all_passed: checks.iter().all(InnerCheck::passed),
        checks,
    })
}

/// Counts, over all surjective maps `(E(G), ·) → (E(H), ·)` preserving
/// only the product, those sending every constant to a constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemigroupExperiment {
    pub candidate_maps: u128,
    pub surjective_morphisms: usize,
    pub preserving_constants: usize,
}

pub fn surjective_semigroup_experiment(g: &AbGroup, h: &AbGroup, limits: &Limits) -> Result<SemigroupExperiment> {
    let eg = build_endo_truss(g, limits)?;
    let eh = build_endo_truss(h, limits)?;
    let (ns, nt) = (eg.len(), eh.len());
    let candidate_maps = (nt as u128).checked_pow(ns as u32).unwrap_or(u128::MAX);
    limits.check(format!("maps E({g}) -> E({h})"), candidate_maps)?;
    let (s, t) = (eg.tables()?, eh.tables()?);
    let constants = eg.constants();
    let target_constant: Vec<bool> = eh.elements().map(|a| a.is_constant()).collect();
    let (mut surjective_morphisms, mut preserving_constants) = (0, 0);
    for map in (0..ns).map(|_| 0..nt).multi_cartesian_product() {
        let mut hit = vec![false; nt];
        map.iter().for_each(|&i| hit[i] = true);
        if !hit.iter().all(|&x| x) {
            continue;
        }
        let multiplicative =
            (0..ns).all(|a| (0..ns).all(|b| map[s.mul(a, b)] == t.mul(map[a], map[b])));
        if multiplicative {
            surjective_morphisms += 1;
            preserving_constants += constants.iter().all(|&c| target_constant[map[c]]) as usize;
        }
    }
    Ok(SemigroupExperiment {
        candidate_maps,
        surjective_morphisms,
        preserving_constants,
    })
}
