//! Presets and table files accepted on the command line.

use std::path::Path;
use std::sync::Arc;

use trusskit::endo::build_endo_truss;
use trusskit::heap::{heap_from_group, FiniteHeap};
use trusskit::module::{ModuleFile, RModule};
use trusskit::ring::FiniteRing;
use trusskit::truss::{FiniteTruss, TableFile};
use trusskit::{AbGroup, Error, Limits, Result};

pub fn parse_group(s: &str) -> Result<AbGroup> {
    s.parse()
}

fn parse_u64(s: &str, what: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{what} expects a positive integer, got {s:?}")))
}

/// `name:arg`, with an optional `-module` suffix dropped.
fn split_preset(spec: &str) -> Option<(&str, &str)> {
    let spec = spec.strip_suffix("-module").unwrap_or(spec);
    spec.split_once(':')
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn unknown(kind: &str, spec: &str, known: &str) -> Error {
    Error::Parse(format!(
        "unknown {kind} {spec:?}; expected one of {known}, or a JSON table file"
    ))
}

fn is_file(spec: &str) -> bool {
    !spec.contains(':') || Path::new(spec).is_file()
}

pub fn load_heap(spec: &str, limits: &Limits) -> Result<FiniteHeap> {
    if is_file(spec) {
        return read_json::<TableFile>(Path::new(spec))?.to_heap();
    }
    match split_preset(spec) {
        Some(("from-group", g)) => heap_from_group(&parse_group(g)?, limits),
        Some(("endo", g)) => Ok(build_endo_truss(&parse_group(g)?, limits)?.tables()?.heap().clone()),
        _ => Err(unknown("heap", spec, "from-group:<orders>, endo:<orders>")),
    }
}

pub fn load_truss(spec: &str, limits: &Limits) -> Result<FiniteTruss> {
    if is_file(spec) {
        return read_json::<TableFile>(Path::new(spec))?.to_truss();
    }
    match split_preset(spec) {
        Some(("endo", g)) => Ok(build_endo_truss(&parse_group(g)?, limits)?.tables()?.clone()),
        Some(("zn" | "fp" | "fpxfp", _)) => load_ring(spec)?.to_truss(),
        _ => Err(unknown("truss", spec, "endo:<orders>, zn:<n>, fp:<p>, fpxfp:<p>")),
    }
}

fn load_ring(spec: &str) -> Result<FiniteRing> {
    match split_preset(spec) {
        Some(("zn", n)) => FiniteRing::zn(parse_u64(n, "zn")?),
        Some(("fp", p)) => FiniteRing::fp(parse_u64(p, "fp")?),
        Some(("fpxfp", p)) => {
            let f = FiniteRing::fp(parse_u64(p, "fpxfp")?)?;
            FiniteRing::product(&f, &f)
        }
        _ => Err(unknown("ring", spec, "zn:<n>, fp:<p>, fpxfp:<p>")),
    }
}

/// One or more labelled modules; `example-non-iso:p` gives `F_p × 0` and
/// `0 × F_p`.
pub fn load_modules(spec: &str, limits: &Limits) -> Result<Vec<(String, RModule)>> {
    if is_file(spec) {
        let m = read_json::<ModuleFile>(Path::new(spec))?.to_module(limits)?;
        return Ok(vec![(spec.to_string(), m)]);
    }
    let single = |m: RModule| Ok(vec![(spec.to_string(), m)]);
    match split_preset(spec) {
        Some(("zn" | "fp" | "fpxfp", _)) => single(RModule::regular(Arc::new(load_ring(spec)?))?),
        Some(("fpx0", p)) => single(RModule::fp_factor(parse_u64(p, "fpx0")?, 0)?),
        Some(("0xfp", p)) => single(RModule::fp_factor(parse_u64(p, "0xfp")?, 1)?),
        Some(("example-non-iso", p)) => {
            let p = parse_u64(p, "example-non-iso")?;
            Ok(vec![
                (format!("fpx0:{p}"), RModule::fp_factor(p, 0)?),
                (format!("0xfp:{p}"), RModule::fp_factor(p, 1)?),
            ])
        }
        _ => Err(unknown(
            "module",
            spec,
            "zn:<n>, fp:<p>, fpxfp:<p>, fpx0:<p>, 0xfp:<p>, example-non-iso:<p>",
        )),
    }
}

pub fn load_module(spec: &str, limits: &Limits) -> Result<RModule> {
    let mut all = load_modules(spec, limits)?;
    if all.len() != 1 {
        return Err(Error::Parse(format!("{spec:?} names {} modules, expected one", all.len())));
    }
    Ok(all.remove(0).1)
}
