//! Exact computations with heaps, trusses and endomorphism trusses of finite
//! abelian groups and finite modules.
//!
//! The crate builds `E(G)`, the truss of all heap endomorphisms
//! `x ↦ u(x) + a` of a finite abelian group, and its module analogue
//! `E_R(M)`, and makes the correspondence between truss isomorphisms and
//! heap (or module) isomorphisms constructive in both directions. Every
//! structural claim has a brute-force counterpart used to check it.

pub mod error;
pub mod limits;
pub mod report;

pub mod group;
pub mod hom;
pub mod invariants;

pub mod heap;
pub mod truss;

pub mod endo;

pub mod bk;
pub mod inner;

pub mod ring;
pub mod module;
pub mod module_bk;

pub use error::{Error, Result};
pub use group::{groups_isomorphic, make_group, AbGroup, GroupElement};
pub use hom::{apply_hom, compose_homs, hom_enumerate, GroupHom};
pub use limits::Limits;
pub use report::{Axiom, AxiomCheck, ValidationReport};
