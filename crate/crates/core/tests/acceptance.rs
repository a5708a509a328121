//! Acceptance run: nine criteria, one line each, non-zero exit on failure.
//!
//! Every expected value here comes from a test-local oracle working on raw
//! index tables (brute-force filters over all maps, permutation scans),
//! never from the library's own enumerations.

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use itertools::Itertools;
use trusskit::bk::{theta, upsilon, verify_bk, BkOptions, TrussIsoCount};
use trusskit::endo::{build_endo_truss, heap_isos, EndoTruss, HeapMorphism};
use trusskit::heap::{heap_from_group, validate_heap, FiniteHeap};
use trusskit::inner::{inner_data, unique_xi_if_constant};
use trusskit::module::{build_linear_endo_truss, linear_heap_morphisms, validate_module, RModule};
use trusskit::module_bk::{
    equivalence_from_truss_iso, example_non_iso, module_equivalences, truss_iso_from_equivalence,
    ModuleContext,
};
use trusskit::ring::FiniteRing;
use trusskit::truss::{enumerate_truss_morphisms, validate_truss, FiniteTruss, TrussMorphism};
use trusskit::{groups_isomorphic, make_group, GroupHom, Limits};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

const GROUPS: [&[u64]; 6] = [&[2], &[3], &[4], &[2, 2], &[5], &[6]];

fn limits() -> Limits {
    Limits {
        max_full_validation: 64,
        ..Limits::default()
    }
}

/// `⊕ Z/nᵢ` on lexicographic indices, first coordinate most significant.
struct Grp {
    orders: Vec<u64>,
    elems: Vec<Vec<u64>>,
}

impl Grp {
    fn new(orders: &[u64]) -> Self {
        let elems = orders.iter().map(|&n| 0..n).multi_cartesian_product().collect();
        Grp {
            orders: orders.to_vec(),
            elems,
        }
    }

    fn n(&self) -> usize {
        self.elems.len()
    }

    fn idx(&self, x: &[u64]) -> usize {
        x.iter()
            .zip(&self.orders)
            .fold(0, |acc, (&c, &o)| acc * o as usize + c as usize)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let s: Vec<u64> = (0..self.orders.len())
            .map(|i| (self.elems[a][i] + self.elems[b][i]) % self.orders[i])
            .collect();
        self.idx(&s)
    }

    fn sub(&self, a: usize, b: usize) -> usize {
        let s: Vec<u64> = (0..self.orders.len())
            .map(|i| (self.elems[a][i] + self.orders[i] - self.elems[b][i]) % self.orders[i])
            .collect();
        self.idx(&s)
    }

    fn br(&self, a: usize, b: usize, c: usize) -> usize {
        self.add(self.sub(a, b), c)
    }
}

fn all_maps(ns: usize, nt: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..ns).map(move |_| 0..nt).multi_cartesian_product()
}

fn is_additive(g: &Grp, h: &Grp, f: &[usize]) -> bool {
    (0..g.n()).all(|a| (0..g.n()).all(|b| f[g.add(a, b)] == h.add(f[a], f[b])))
}

fn is_heap_map(g: &Grp, h: &Grp, f: &[usize]) -> bool {
    (0..g.n()).all(|a| {
        (0..g.n()).all(|b| (0..g.n()).all(|c| f[g.br(a, b, c)] == h.br(f[a], f[b], f[c])))
    })
}

fn is_bijection(f: &[usize]) -> bool {
    f.iter().collect::<BTreeSet<_>>().len() == f.len()
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

/// Raw table of a library heap morphism, in oracle indices.
fn raw(h: &Grp, phi: &HeapMorphism) -> Vec<usize> {
    phi.table().iter().map(|y| h.idx(y.coords())).collect()
}

fn raw_hom(h: &Grp, f: &GroupHom) -> Vec<usize> {
    f.table().iter().map(|y| h.idx(y.coords())).collect()
}

/// `E(G)` rebuilt from scratch: every raw map preserving the bracket, with
/// composition and pointwise bracket tables.
struct OracleTruss {
    maps: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    mul: Vec<usize>,
    br: Vec<usize>,
}

impl OracleTruss {
    fn new(maps: Vec<Vec<usize>>, grp: &Grp) -> Self {
        let n = maps.len();
        let index: HashMap<_, _> = maps.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mul = vec![0; n * n];
        let mut br = vec![0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = index[&compose(&maps[i], &maps[j])];
                for k in 0..n {
                    let pt: Vec<_> = (0..grp.n())
                        .map(|x| grp.br(maps[i][x], maps[j][x], maps[k][x]))
                        .collect();
                    br[(i * n + j) * n + k] = index[&pt];
                }
            }
        }
        OracleTruss { maps, index, mul, br }
    }

    fn endo(grp: &Grp) -> Self {
        let maps = all_maps(grp.n(), grp.n()).filter(|f| is_heap_map(grp, grp, f)).collect();
        OracleTruss::new(maps, grp)
    }

    fn len(&self) -> usize {
        self.maps.len()
    }

    fn preserves(&self, other: &OracleTruss, f: &[usize]) -> bool {
        let (n, m) = (self.len(), other.len());
        (0..n).all(|i| (0..n).all(|j| f[self.mul[i * n + j]] == other.mul[f[i] * m + f[j]]))
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    (0..n).all(|k| f[self.br[(i * n + j) * n + k]] == other.br[(f[i] * m + f[j]) * m + f[k]])
                })
            })
    }

    /// Bijections preserving both operations, scanning all permutations
    /// with the product checked first.
    fn isos(&self, other: &OracleTruss) -> Vec<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return Vec::new();
        }
        (0..n)
            .permutations(n)
            .filter(|f| {
                (0..n).all(|i| (0..n).all(|j| f[self.mul[i * n + j]] == other.mul[f[i] * n + f[j]]))
            })
            .filter(|f| self.preserves(other, f))
            .collect()
    }

    /// Library index `i` ↦ oracle index.
    fn from_library(&self, grp: &Grp, t: &EndoTruss) -> Vec<usize> {
        t.elements().map(|a| self.index[&raw(grp, &a)]).collect()
    }
}

fn criterion_1() -> Outcome {
    let lim = limits();
    let mut sizes = Vec::new();
    for orders in GROUPS {
        let grp = Grp::new(orders);
        let g = make_group(orders).unwrap();
        ensure!(
            g.iter().map(|x| x.coords().to_vec()).collect::<Vec<_>>() == grp.elems,
            "element order of {g} differs from the lexicographic oracle"
        );
        let heap = validate_heap(&heap_from_group(&g, &lim).unwrap(), &lim);
        ensure!(heap.is_valid() && heap.is_exhaustive(), "heap of {g} fails: {:?}", heap.failures().collect::<Vec<_>>());
        let e = build_endo_truss(&g, &lim).unwrap();
        let truss = validate_truss(e.tables().unwrap(), &lim);
        ensure!(truss.is_valid() && truss.is_exhaustive(), "E({g}) fails: {:?}", truss.failures().collect::<Vec<_>>());
        let end = all_maps(grp.n(), grp.n()).filter(|f| is_additive(&grp, &grp, f)).count();
        ensure!(e.len() == grp.n() * end, "|E({g})| = {} but |G|·|End| = {}", e.len(), grp.n() * end);
        ensure!(OracleTruss::endo(&grp).len() == e.len(), "|E({g})| differs from the heap-map count");
        sizes.push(e.len());
    }
    Ok(format!("|E(G)| = {sizes:?}, all exhaustive"))
}

fn criterion_2() -> Outcome {
    let lim = limits();
    let mut pairs = 0;
    let mut total = 0;
    for (go, ho) in GROUPS.iter().cartesian_product(GROUPS.iter()) {
        let (gg, hg) = (Grp::new(go), Grp::new(ho));
        let (g, h) = (make_group(go).unwrap(), make_group(ho).unwrap());
        let (eg, eh) = (build_endo_truss(&g, &lim).unwrap(), build_endo_truss(&h, &lim).unwrap());
        let isos = heap_isos(&g, &h, &lim).unwrap();
        let oracle = if gg.n() == hg.n() {
            (0..hg.n())
                .permutations(hg.n())
                .filter(|f| is_heap_map(&gg, &hg, f))
                .count()
        } else {
            0
        };
        ensure!(isos.len() == oracle, "{g} -> {h}: {} heap isos, oracle {oracle}", isos.len());
        let mut images = BTreeSet::new();
        for phi in &isos {
            let big = upsilon(&eg, &eh, phi).unwrap();
            ensure!(big.is_isomorphism(eg.tables().unwrap(), eh.tables().unwrap()), "Υ(φ) is not a truss iso");
            ensure!(&theta(&eg, &eh, &big).unwrap() == phi, "Θ(Υ(φ)) ≠ φ for {g} -> {h}");
            images.insert(big.map().to_vec());
        }
        ensure!(images.len() == isos.len(), "Υ not injective on {g} -> {h}");
        pairs += 1;
        total += isos.len();
    }

    let z2 = Grp::new(&[2]);
    let e = OracleTruss::endo(&z2);
    let bijections = (0..4).permutations(4).count();
    let found = e.isos(&e).len();
    let aut = (0..2).permutations(2).filter(|f| is_additive(&z2, &z2, f)).count();
    ensure!(bijections == 24 && found == 2 * aut && found == 2, "E(Z/2): {found} truss isos among {bijections}, |Aut| = {aut}");
    Ok(format!("{pairs} ordered pairs, {total} heap isos round-trip; E(Z/2) brute force: {found} of {bijections}"))
}

fn criterion_3() -> Outcome {
    let lim = limits();
    let (g, h) = (make_group(&[4]).unwrap(), make_group(&[2, 2]).unwrap());
    let (gg, hg) = (Grp::new(&[4]), Grp::new(&[2, 2]));
    let oracle_isos = (0..4).permutations(4).filter(|f| is_additive(&gg, &hg, f)).count();
    ensure!(oracle_isos == 0, "oracle found {oracle_isos} group isos");
    ensure!(!groups_isomorphic(&g, &h), "groups reported isomorphic");
    let r = verify_bk(&g, &h, BkOptions { brute_force: true }, &lim).unwrap();
    ensure!((r.left_truss_size, r.right_truss_size) == (16, 64), "sizes {} and {}", r.left_truss_size, r.right_truss_size);
    ensure!(r.truss_iso_count == TrussIsoCount::Count(0) && r.truss_isos_exist == Some(false), "truss isos reported");
    ensure!(r.consistent, "report inconsistent");
    Ok("|E| = 16 vs 64, no group iso, no truss iso".into())
}

struct InnerOracle {
    morphisms: usize,
    applicable: usize,
}

/// Shared by criteria 4 and 5: every truss morphism `E(G) → E(H)` from the
/// raw filter, with the inner structure recomputed by hand.
fn inner_oracle(go: &[u64], ho: &[u64], corollary: bool) -> Result<InnerOracle, String> {
    let lim = limits();
    let (gg, hg) = (Grp::new(go), Grp::new(ho));
    let (g, h) = (make_group(go).unwrap(), make_group(ho).unwrap());
    let (og, oh) = (OracleTruss::endo(&gg), OracleTruss::endo(&hg));
    let (eg, eh) = (build_endo_truss(&g, &lim).unwrap(), build_endo_truss(&h, &lim).unwrap());
    let (g_l2o, h_l2o) = (og.from_library(&gg, &eg), oh.from_library(&hg, &eh));
    let mut g_o2l = vec![0; og.len()];
    g_l2o.iter().enumerate().for_each(|(l, &o)| g_o2l[o] = l);

    let oracle: BTreeSet<Vec<usize>> = all_maps(og.len(), oh.len()).filter(|f| og.preserves(&oh, f)).collect();
    let library = enumerate_truss_morphisms(eg.tables().unwrap(), eh.tables().unwrap(), &lim).unwrap();
    let translated: BTreeSet<Vec<usize>> = library
        .iter()
        .map(|phi| (0..og.len()).map(|j| h_l2o[phi.apply(g_o2l[j])]).collect())
        .collect();
    ensure!(oracle == translated, "{g} -> {h}: truss morphism sets differ ({} vs {})", oracle.len(), translated.len());

    let heap_maps: Vec<Vec<usize>> = all_maps(gg.n(), hg.n()).filter(|f| is_heap_map(&gg, &hg, f)).collect();
    let hat = |a: usize| og.index[&vec![a; gg.n()]];
    let mut applicable = 0;
    for phi in &library {
        let f: Vec<usize> = (0..og.len()).map(|j| h_l2o[phi.apply(g_o2l[j])]).collect();
        let image = |alpha: usize| &oh.maps[f[alpha]];
        let z = image(hat(0));
        let e = z[0];
        let eps: Vec<usize> = (0..hg.n()).map(|x| hg.sub(z[x], e)).collect();
        ensure!(compose(&eps, &eps) == eps, "ε not idempotent for {f:?}");
        ensure!(eps[e] == 0, "ε(e) ≠ 0 for {f:?}");
        let xi: BTreeSet<Vec<usize>> = heap_maps
            .iter()
            .filter(|x| (0..og.len()).all(|a| compose(image(a), x) == compose(x, &og.maps[a])))
            .cloned()
            .collect();
        ensure!(!xi.is_empty(), "Ξ empty for {f:?}");
        let coset: BTreeSet<usize> = (0..hg.n()).map(|x| hg.add(eps[x], e)).collect();
        let xi_c: Vec<Vec<usize>> = coset.iter().map(|&c| (0..gg.n()).map(|a| image(hat(a))[c]).collect()).collect();
        let xi_c_set: BTreeSet<_> = xi_c.iter().cloned().collect();
        ensure!(xi_c_set.len() == coset.len() && xi_c_set == xi, "ϑ is not a bijection onto Ξ for {f:?}");
        let im_eps: BTreeSet<_> = eps.iter().collect();
        ensure!(xi.len() == im_eps.len(), "|Ξ| = {} but |Im ε| = {}", xi.len(), im_eps.len());

        let d = inner_data(&eg, &eh, phi, &lim).unwrap();
        ensure!(raw_hom(&hg, &d.epsilon) == eps && hg.idx(d.e.coords()) == e, "library ε or e differs");
        let lib_xi: BTreeSet<_> = d.xi_set.iter().map(|x| raw(&hg, x)).collect();
        ensure!(lib_xi == xi, "library Ξ differs for {f:?}");

        let some_constant = (0..gg.n()).any(|a| image(hat(a)).iter().all_equal());
        if corollary && some_constant {
            applicable += 1;
            ensure!(xi.len() == 1, "{} intertwiners with a constant image", xi.len());
            let only = xi.iter().next().unwrap();
            ensure!(
                (0..og.len()).all(|a| compose(image(a), only) == compose(only, &og.maps[a])),
                "unique ξ does not intertwine"
            );
            let lib = unique_xi_if_constant(&eg, &eh, phi, &lim).unwrap();
            ensure!(lib.map(|x| raw(&hg, &x)).as_ref() == Some(only), "library unique ξ differs");
        } else if corollary {
            ensure!(unique_xi_if_constant(&eg, &eh, phi, &lim).unwrap().is_none(), "library applies the corollary wrongly");
        }
    }
    Ok(InnerOracle {
        morphisms: library.len(),
        applicable,
    })
}

fn criterion_4() -> Outcome {
    let a = inner_oracle(&[2], &[2], false)?;
    let b = inner_oracle(&[2], &[3], false)?;
    Ok(format!(
        "{} morphisms E(Z/2)->E(Z/2) of 256 maps, {} morphisms E(Z/2)->E(Z/3) of 6561 maps",
        a.morphisms, b.morphisms
    ))
}

fn criterion_5() -> Outcome {
    let a = inner_oracle(&[2], &[2], true)?;
    let b = inner_oracle(&[2], &[3], true)?;
    Ok(format!(
        "unique intertwiner for {} + {} morphisms with a constant image ({} + {} not applicable)",
        a.applicable,
        b.applicable,
        a.morphisms - a.applicable,
        b.morphisms - b.applicable
    ))
}

fn regular(r: FiniteRing) -> RModule {
    RModule::regular(Arc::new(r)).unwrap()
}

/// The for-every-`e` condition on a raw map: a module morphism
/// `(M, +_e, ⋅ᵉ) → (N, +_φ(e), ⋅^φ(e))` for each `e`.
fn every_e_morphism(m: &RModule, n: &RModule, gm: &Grp, gn: &Grp, f: &[usize]) -> bool {
    (0..gm.n()).all(|e| {
        let fe = f[e];
        (0..gm.n()).all(|x| (0..gm.n()).all(|y| f[gm.br(x, e, y)] == gn.br(f[x], fe, f[y])))
            && (0..m.ring().size()).all(|r| {
                (0..gm.n()).all(|x| {
                    f[gm.br(m.act(r, x), m.act(r, e), e)] == gn.br(n.act(r, f[x]), n.act(r, fe), fe)
                })
            })
    })
}

fn criterion_6() -> Outcome {
    let lim = limits();
    let f2 = FiniteRing::fp(2).unwrap();
    let cases = [
        ("Z/4", regular(FiniteRing::zn(4).unwrap()), regular(FiniteRing::zn(4).unwrap())),
        ("F2xF2", RModule::fp_factor(2, 0).unwrap(), RModule::fp_factor(2, 1).unwrap()),
        ("F2xF2 reversed", RModule::fp_factor(2, 1).unwrap(), RModule::fp_factor(2, 0).unwrap()),
        ("Z/2", regular(f2.clone()), regular(f2)),
    ];
    let mut sizes = Vec::new();
    for (name, m, n) in &cases {
        let (gm, gn) = (Grp::new(m.group().orders()), Grp::new(n.group().orders()));
        let oracle: BTreeSet<Vec<usize>> = all_maps(gm.n(), gn.n())
            .filter(|f| every_e_morphism(m, n, &gm, &gn, f))
            .collect();
        let closed: BTreeSet<Vec<usize>> = linear_heap_morphisms(m, n, &lim)
            .unwrap()
            .iter()
            .map(|phi| raw(&gn, phi.underlying()))
            .collect();
        ensure!(oracle == closed, "{name}: closed form has {} maps, filter {}", closed.len(), oracle.len());
        sizes.push(format!("{name}: {}", closed.len()));
    }
    Ok(format!("H_R(M,N) sizes {}", sizes.join(", ")))
}

fn criterion_7() -> Outcome {
    let lim = limits();
    let mut notes = Vec::new();
    for p in [2, 3] {
        let r = example_non_iso(p, &lim).unwrap();
        ensure!(r.holds, "p = {p}: report does not hold");
        let m = RModule::fp_factor(p, 0).unwrap();
        let n = RModule::fp_factor(p, 1).unwrap();
        let (em, en) = (build_linear_endo_truss(&m, &lim).unwrap(), build_linear_endo_truss(&n, &lim).unwrap());
        let g = Grp::new(&[p]);
        let (om, on) = (
            OracleTruss::new(em.elements().map(|a| raw(&g, &a)).collect(), &g),
            OracleTruss::new(en.elements().map(|a| raw(&g, &a)).collect(), &g),
        );
        let phi = r.truss_iso.ok_or("no truss iso")?;
        ensure!(is_bijection(phi.map()) && om.preserves(&on, phi.map()), "p = {p}: witness is not a truss iso");
        let homs: Vec<Vec<usize>> = all_maps(g.n(), g.n())
            .filter(|f| is_additive(&g, &g, f))
            .filter(|f| (0..m.ring().size()).all(|r| (0..g.n()).all(|x| f[m.act(r, x)] == n.act(r, f[x]))))
            .collect();
        ensure!(homs.iter().all(|f| !is_bijection(f)), "p = {p}: Hom_R(M,N) has a bijection");
        ensure!(homs.len() == r.hom_r.len(), "p = {p}: Hom_R(M,N) sizes differ");
        notes.push(format!("p={p}: |E_R| = {}, |Hom_R(M,N)| = {}", em.len(), homs.len()));
    }
    Ok(notes.join("; "))
}

fn criterion_8() -> Outcome {
    let lim = limits();
    let cases = [
        ("Z/4", regular(FiniteRing::zn(4).unwrap()), regular(FiniteRing::zn(4).unwrap())),
        ("F2 factors", RModule::fp_factor(2, 0).unwrap(), RModule::fp_factor(2, 1).unwrap()),
        ("F3 factors", RModule::fp_factor(3, 0).unwrap(), RModule::fp_factor(3, 1).unwrap()),
        ("Z/2", regular(FiniteRing::fp(2).unwrap()), regular(FiniteRing::fp(2).unwrap())),
        ("Z/6", regular(FiniteRing::zn(6).unwrap()), regular(FiniteRing::zn(6).unwrap())),
        ("Z/2 over Z/4 vs F2", RModule::zn_quotient(4, 2).unwrap(), regular(FiniteRing::fp(2).unwrap())),
        ("Z/3 vs Z/2", regular(FiniteRing::fp(3).unwrap()), regular(FiniteRing::fp(2).unwrap())),
        (
            "F2xF2",
            regular(FiniteRing::product(&FiniteRing::fp(2).unwrap(), &FiniteRing::fp(2).unwrap()).unwrap()),
            regular(FiniteRing::product(&FiniteRing::fp(2).unwrap(), &FiniteRing::fp(2).unwrap()).unwrap()),
        ),
    ];
    let mut forward = 0;
    let mut backward = 0;
    for (name, m, n) in cases {
        let (gm, gn) = (Grp::new(m.group().orders()), Grp::new(n.group().orders()));
        let a = ModuleContext::new(m, &lim).unwrap();
        let b = ModuleContext::new(n, &lim).unwrap();
        let eqs = module_equivalences(&a, &b, &lim).unwrap();
        for eq in &eqs {
            let phi = truss_iso_from_equivalence(&a, &b, eq).unwrap();
            let back = equivalence_from_truss_iso(&a, &b, &phi).unwrap();
            let mu = raw_hom(&gn, &back.mu);
            ensure!(mu == raw_hom(&gn, &eq.mu), "{name}: μ not recovered");
            let mut mu_inv = vec![0; mu.len()];
            mu.iter().enumerate().for_each(|(x, &y)| mu_inv[y] = x);
            for (u, &ru) in a.end.homs.iter().zip(&back.rho) {
                let conj = compose(&mu, &compose(&raw_hom(&gm, u), &mu_inv));
                ensure!(raw_hom(&gn, &b.end.homs[ru]) == conj, "{name}: ρ(u) ≠ μuμ⁻¹");
            }
            forward += 1;
        }
        let (la, lb) = (a.truss.len(), b.truss.len());
        if la == lb && la <= 9 {
            let oa = OracleTruss::new(a.truss.elements().map(|x| raw(&gm, &x)).collect(), &gm);
            let ob = OracleTruss::new(b.truss.elements().map(|x| raw(&gn, &x)).collect(), &gn);
            let isos = oa.isos(&ob);
            ensure!(isos.len() == gn.n() * eqs.len(), "{name}: {} truss isos, expected |N|·{}", isos.len(), eqs.len());
            for f in &isos {
                let phi = TrussMorphism::new(la, lb, f.clone()).unwrap();
                let eq = equivalence_from_truss_iso(&a, &b, &phi).map_err(|e| format!("{name}: {e}"))?;
                let mu = raw_hom(&gn, &eq.mu);
                ensure!(is_bijection(&mu), "{name}: μ not bijective");
                ensure!(is_bijection(&eq.rho), "{name}: ρ not bijective");
                for (u, &ru) in a.end.homs.iter().zip(&eq.rho) {
                    let (u, v) = (raw_hom(&gm, u), raw_hom(&gn, &b.end.homs[ru]));
                    ensure!((0..gm.n()).all(|x| mu[u[x]] == v[mu[x]]), "{name}: μ(u·m) ≠ ρ(u)·μ(m)");
                }
                backward += 1;
            }
        } else if la != lb {
            ensure!(eqs.is_empty(), "{name}: equivalence across different truss sizes");
        }
    }
    Ok(format!("{forward} equivalences round-trip; {backward} brute-force truss isos give equivalences"))
}

fn mutate_heaps(h: &FiniteHeap, check: impl Fn(&FiniteHeap) -> bool) -> (usize, usize) {
    let n = h.size();
    let mut total = 0;
    let mut caught = 0;
    for (a, b, c) in itertools::iproduct!(0..n, 0..n, 0..n) {
        let orig = h.bracket(a, b, c);
        for v in (0..n).filter(|&v| v != orig) {
            let mut m = h.clone();
            m.set_entry(a, b, c, v);
            total += 1;
            caught += !check(&m) as usize;
        }
    }
    (caught, total)
}

fn mutate_truss(t: &FiniteTruss, lim: &Limits) -> (usize, usize) {
    let n = t.size();
    let (mut caught, mut total) = mutate_heaps(t.heap(), |h| {
        let mut m = t.clone();
        *m.heap_mut() = h.clone();
        validate_truss(&m, lim).is_valid()
    });
    for (a, b) in itertools::iproduct!(0..n, 0..n) {
        let orig = t.mul(a, b);
        for v in (0..n).filter(|&v| v != orig) {
            let mut m = t.clone();
            m.set_mult_entry(a, b, v);
            total += 1;
            caught += !validate_truss(&m, lim).is_valid() as usize;
        }
    }
    (caught, total)
}

fn criterion_9() -> Outcome {
    let lim = limits();
    let mut rows = Vec::new();
    let mut missed = Vec::new();
    let mut tally = |name: String, (caught, total): (usize, usize)| {
        if caught != total {
            missed.push(format!("{name}: {caught}/{total}"));
        }
        rows.push((caught, total));
    };
    for orders in GROUPS {
        let g = make_group(orders).unwrap();
        let h = heap_from_group(&g, &lim).unwrap();
        tally(format!("heap {g}"), mutate_heaps(&h, |m| validate_heap(m, &lim).is_valid()));
    }
    for orders in [&[2][..], &[3]] {
        let g = make_group(orders).unwrap();
        let e = build_endo_truss(&g, &lim).unwrap();
        tally(format!("E({g})"), mutate_truss(e.tables().unwrap(), &lim));
    }
    let f2 = FiniteRing::fp(2).unwrap();
    for (name, r) in [
        ("Z/4", FiniteRing::zn(4).unwrap()),
        ("F2xF2", FiniteRing::product(&f2, &f2).unwrap()),
    ] {
        tally(format!("ring truss {name}"), mutate_truss(&r.to_truss().unwrap(), &lim));
    }
    let modules = [
        ("Z/4", regular(FiniteRing::zn(4).unwrap())),
        ("Z/2", regular(f2.clone())),
        ("Z/2 over Z/4", RModule::zn_quotient(4, 2).unwrap()),
        ("F2 x 0", RModule::fp_factor(2, 0).unwrap()),
        ("0 x F2", RModule::fp_factor(2, 1).unwrap()),
        ("F3 x 0", RModule::fp_factor(3, 0).unwrap()),
        ("0 x F3", RModule::fp_factor(3, 1).unwrap()),
    ];
    for (name, m) in modules {
        let (nr, nm) = (m.ring().size(), m.size());
        let mut caught = 0;
        let mut total = 0;
        for (r, x) in itertools::iproduct!(0..nr, 0..nm) {
            let orig = m.act(r, x);
            for v in (0..nm).filter(|&v| v != orig) {
                let mut bad = m.clone();
                bad.set_action_entry(r, x, v);
                total += 1;
                caught += !validate_module(&bad).is_valid() as usize;
            }
        }
        tally(format!("module {name}"), (caught, total));
    }
    let caught: usize = rows.iter().map(|r| r.0).sum();
    let total: usize = rows.iter().map(|r| r.1).sum();
    ensure!(missed.is_empty(), "undetected mutations: {}", missed.join(", "));
    Ok(format!("{caught}/{total} single-entry mutations detected"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("axiom suites and |E(G)| = |G|·|End(G)|", criterion_1),
        ("heap isos and truss isos correspond", criterion_2),
        ("non-isomorphic groups, non-isomorphic trusses", criterion_3),
        ("inner structure of truss morphisms", criterion_4),
        ("unique intertwiner when a constant maps to a constant", criterion_5),
        ("closed-form and for-every-e linear heap morphisms agree", criterion_6),
        ("isomorphic trusses of non-isomorphic modules", criterion_7),
        ("module equivalences and truss isos round-trip", criterion_8),
        ("validators detect every single-entry mutation", criterion_9),
    ];
    let mut passed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => {
                passed += 1;
                println!("criterion {}: PASS  {title} ({note}) [{secs:.2}s]", i + 1);
            }
            Err(why) => println!("criterion {}: FAIL  {title}: {why} [{secs:.2}s]", i + 1),
        }
    }
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    if passed == criteria.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
