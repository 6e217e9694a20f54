//! Associative conformal algebras, bimodules, and structure-map predicates.
//!
//! All sesquilinear data is stored on basis tuples and extended at evaluation
//! time: a coefficient `f(∂)` in a left slot at formal value `ν` becomes
//! `f(−ν)`, in the last slot it becomes `f(∂ + Σν)`.

mod algebra;
mod bimodule;
mod maps;
mod sesq;

pub use algebra::{base_is_associative, ConformalAlgebra};
pub use bimodule::Bimodule;
pub use maps::{
    check_bimodule_derivation, check_derivation, check_hom, check_structure_map, MapKind,
    Setting, StructureMap,
};
pub use sesq::{lambdas, unit, SesqMap};

use thiserror::Error;

use crate::report::CheckReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConformalError {
    #[error("table shape does not match the carrier")]
    ShapeMismatch,
    #[error("base algebra is not associative")]
    NotAssociativeBase,
    #[error("product is not associative ({} failing triples)", .0.failures.len())]
    NotAssociative(CheckReport),
    #[error("bimodule axioms fail: {}", .0.failed_identities().join(", "))]
    InvalidBimodule(CheckReport),
    #[error("map is not invertible over k[∂]")]
    NotInvertible,
    #[error("structure map predicate fails on {} basis pairs", .0.failures.len())]
    Violation(CheckReport),
}
