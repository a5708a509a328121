use serde_json::{json, Value};
use trusskit::bk::{upsilon, verify_bk, BkOptions, Certificate, TrussIsoCount};
use trusskit::endo::{build_endo_truss, heap_isos};
use trusskit::heap::{check_abelian, validate_heap};
use trusskit::inner::verify_inner;
use trusskit::module::validate_module;
use trusskit::module_bk::{example_non_iso, verify_module_bk};
use trusskit::ring::validate_ring;
use trusskit::truss::validate_truss;
use trusskit::{Limits, Result, ValidationReport};

use crate::input::{load_heap, load_module, load_modules, load_truss, parse_group};
use crate::report::{Finding, Report};

#[derive(Clone, Copy, Debug)]
pub enum Structure {
    Heap,
    Truss,
    Module,
}

fn push_validation(report: &mut Report, prefix: &str, v: &ValidationReport) {
    for c in &v.checks {
        let name = serde_json::to_value(c.axiom).unwrap();
        let name = format!("{prefix}{}", name.as_str().unwrap_or_default());
        let value = match &c.counterexample {
            None => json!(c.cases),
            Some(t) => json!(t),
        };
        report.push(Finding::expect(&name, value, c.passed(), c.exhaustive));
    }
}

pub fn validate(kind: Structure, spec: &str, limits: &Limits) -> Result<Report> {
    let label = match kind {
        Structure::Heap => "heap",
        Structure::Truss => "truss",
        Structure::Module => "module",
    };
    let mut report = Report::new("validate", json!({ label: spec }));
    match kind {
        Structure::Heap => {
            let h = load_heap(spec, limits)?;
            report.push(Finding::info("size", h.size(), true));
            push_validation(&mut report, "", &validate_heap(&h, limits));
            let ab = check_abelian(&h);
            report.push(Finding::info("abelian", ab.passed(), ab.exhaustive));
        }
        Structure::Truss => {
            let t = load_truss(spec, limits)?;
            report.push(Finding::info("size", t.size(), true));
            push_validation(&mut report, "", &validate_truss(&t, limits));
        }
        Structure::Module => {
            let modules = load_modules(spec, limits)?;
            let many = modules.len() > 1;
            for (name, m) in &modules {
                let prefix = if many { format!("{name}.") } else { String::new() };
                report.push(Finding::info(&format!("{prefix}size"), m.size(), true));
                push_validation(&mut report, &format!("{prefix}ring."), &validate_ring(m.ring()));
                push_validation(&mut report, &prefix, &validate_module(m));
            }
        }
    }
    Ok(report)
}

pub fn bk(left: &str, right: &str, brute_force: bool, limits: &Limits) -> Result<Report> {
    let (g, h) = (parse_group(left)?, parse_group(right)?);
    let mut report = Report::new("bk", json!({"left": g.spec(), "right": h.spec(), "brute_force": brute_force}));
    let r = verify_bk(&g, &h, BkOptions { brute_force }, limits)?;
    let enumerated = matches!(r.truss_iso_count, TrussIsoCount::Count(_));
    report.push(Finding::info("groups_isomorphic", r.groups_isomorphic, true));
    report.push(Finding::info("left_truss_size", r.left_truss_size, true));
    report.push(Finding::info("right_truss_size", r.right_truss_size, true));
    report.push(Finding::info("group_iso_count", r.group_iso_count, true));
    report.push(Finding::info("heap_iso_count", r.heap_iso_count, true));
    report.push(Finding::expect(
        "truss_iso_count",
        r.truss_iso_count,
        !enumerated || r.truss_iso_count == TrussIsoCount::Count(r.heap_iso_count),
        enumerated,
    ));
    report.push(Finding::check("theta_upsilon_roundtrip", r.theta_upsilon_roundtrip, true));
    report.push(Finding::check("upsilon_theta_roundtrip", r.upsilon_theta_roundtrip, true));
    report.push(Finding::check("upsilon_injective", r.upsilon_injective, true));
    let decided = r.certificate != Certificate::Undecided;
    report.push(Finding::info("truss_isos_exist", r.truss_isos_exist, decided));
    report.push(Finding::info("certificate", r.certificate, decided));
    report.push(Finding::info("brute_force", r.brute_force, true));
    report.push(Finding::check("consistent", r.consistent, decided));

    if let Some(phi) = heap_isos(&g, &h, limits)?.into_iter().next() {
        let big = upsilon(&build_endo_truss(&g, limits)?, &build_endo_truss(&h, limits)?, &phi)?;
        report.witnesses = json!({"heap_iso": phi, "truss_iso": big.map()});
    }
    report.details = serde_json::to_value(&r).unwrap_or(Value::Null);
    Ok(report)
}

pub fn inner(left: &str, right: &str, limits: &Limits) -> Result<Report> {
    let (g, h) = (parse_group(left)?, parse_group(right)?);
    let mut report = Report::new("inner", json!({"left": g.spec(), "right": h.spec()}));
    let s = verify_inner(&g, &h, limits)?;
    let all = |f: &dyn Fn(&trusskit::inner::InnerCheck) -> bool| s.checks.iter().all(f);
    report.push(Finding::info("candidate_maps", s.candidate_maps.to_string(), true));
    report.push(Finding::info("truss_morphisms", s.morphisms, true));
    report.push(Finding::check("epsilon_idempotent", all(&|c| c.epsilon_idempotent), true));
    report.push(Finding::check("epsilon_kills_e", all(&|c| c.epsilon_kills_e), true));
    report.push(Finding::check("xi_nonempty", all(&|c| c.xi_nonempty), true));
    report.push(Finding::check("xi_b_in_xi", all(&|c| c.xi_b_in_xi), true));
    report.push(Finding::check("vartheta_bijective", all(&|c| c.vartheta_bijective), true));
    report.push(Finding::check("xi_count_is_image_size", all(&|c| c.xi_count == c.image_size), true));
    report.push(Finding::info("corollary_applicable", s.corollary_applicable, true));
    report.push(Finding::check("corollary_unique_xi", all(&|c| c.corollary_holds != Some(false)), true));
    report.push(Finding::info("constants_preserved", s.constants_preserved, true));
    report.push(Finding::info("surjective", s.surjective, true));
    report.push(Finding::check(
        "surjective_preserve_constants",
        all(&|c| !c.surjective || c.constants_preserved),
        true,
    ));
    report.details = serde_json::to_value(&s).unwrap_or(Value::Null);
    Ok(report)
}

pub fn module_bk(left: &str, right: Option<&str>, limits: &Limits) -> Result<Report> {
    let mut report = Report::new("module-bk", json!({"left": left, "right": right}));
    let (m, n) = match right {
        Some(r) => (load_module(left, limits)?, load_module(r, limits)?),
        None => {
            let mut pair = load_modules(left, limits)?;
            if pair.len() != 2 {
                return Err(trusskit::Error::Parse(format!(
                    "{left:?} names a single module; give a second one"
                )));
            }
            let n = pair.pop().unwrap().1;
            (pair.pop().unwrap().1, n)
        }
    };
    let r = verify_module_bk(&m, &n, limits)?;
    let enumerated = matches!(r.truss_iso_count, TrussIsoCount::Count(_));
    let decided = r.certificate != Certificate::Undecided;
    report.push(Finding::info("left_module_size", r.left_module_size, true));
    report.push(Finding::info("right_module_size", r.right_module_size, true));
    report.push(Finding::info("left_truss_size", r.left_truss_size, true));
    report.push(Finding::info("right_truss_size", r.right_truss_size, true));
    report.push(Finding::info("left_end_ring_size", r.left_end_ring_size, true));
    report.push(Finding::info("right_end_ring_size", r.right_end_ring_size, true));
    report.push(Finding::info("groups_isomorphic", r.groups_isomorphic, true));
    report.push(Finding::info("equivalence_found", r.equivalence.is_some(), true));
    report.push(Finding::info("equivalence_count", r.equivalence_count, true));
    report.push(Finding::check("roundtrip", r.roundtrip, true));
    report.push(Finding::info("truss_iso_count", r.truss_iso_count, enumerated));
    report.push(Finding::check(
        "enumerated_isos_give_equivalences",
        r.enumerated_isos_give_equivalences,
        enumerated,
    ));
    report.push(Finding::info("truss_isos_exist", r.truss_isos_exist, decided));
    report.push(Finding::info("certificate", r.certificate, decided));
    report.push(Finding::check("consistent", r.consistent, decided));

    let mut witnesses = json!({
        "equivalence": r.equivalence,
        "truss_iso": r.truss_iso.as_ref().map(|t| t.map().to_vec()),
    });
    if let Some(p) = left
        .strip_suffix("-module")
        .unwrap_or(left)
        .strip_prefix("example-non-iso:")
        .filter(|_| right.is_none())
    {
        let p = p.trim().parse().map_err(|_| trusskit::Error::Parse(format!("bad prime {p:?}")))?;
        let x = example_non_iso(p, limits)?;
        report.push(Finding::check("non_iso.modules_valid", x.modules_valid, true));
        report.push(Finding::check("non_iso.truss_iso_valid", x.truss_iso_valid, true));
        report.push(Finding::check("non_iso.hom_r_has_no_bijection", !x.hom_r_has_bijection, true));
        report.push(Finding::info("non_iso.hom_r_size", x.hom_r.len(), true));
        report.push(Finding::check("non_iso.holds", x.holds, true));
        witnesses["hom_r"] = json!(x.hom_r);
    }
    report.witnesses = witnesses;
    report.details = serde_json::to_value(&r).unwrap_or(Value::Null);
    Ok(report)
}
