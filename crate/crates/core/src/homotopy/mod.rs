//! 2-term strongly homotopy associative conformal algebras (SHAC-algebras),
//! crossed modules, and crossed extensions with their class in `H³`.
//!
//! A 2-term structure is a complex `A₁ → A₀` with a product `m²` and an
//! associator `m³: A₀³ → A₁`. Strict structures (`m³ = 0`) are crossed
//! modules; skeletal ones (`fd = 0`) are 3-cocycles.

mod crossed;
mod extension;
mod shac;

pub use crossed::{check_crossed, crossed_to_shac, shac_to_crossed, CrossedModule};
pub use extension::{
    crossed_extension_theta, skeletal_model, CrossedExtension, ExtensionClass, SectionChange,
    Sections,
};
pub use shac::{
    check_morphism, check_skeletal_equivalence, check_twoterm, cocycle_to_skeletal,
    compose_morphisms, identity_morphism, shac_of_bimodule_map, skeletal_to_cocycle, TwoTermMorphism, TwoTermSHAC,
};

use thiserror::Error;

use crate::report::CheckReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error("table shapes do not fit together")]
    ShapeMismatch,
    #[error("2-term identities fail: {}", .0.failed_identities().join(", "))]
    InvalidShac(CheckReport),
    #[error("crossed module identities fail: {}", .0.failed_identities().join(", "))]
    InvalidCrossedModule(CheckReport),
    #[error("m³ is nonzero")]
    NotStrict,
    #[error("fd is nonzero")]
    NotSkeletal,
    #[error("the 3-cochain is not a cocycle")]
    NotACocycle,
    #[error("sequence is not exact: {0}")]
    NotExact(&'static str),
    #[error("extension data fails: {}", .0.failed_identities().join(", "))]
    InvalidExtension(CheckReport),
    #[error("sections fail: {}", .0.failed_identities().join(", "))]
    InvalidSections(CheckReport),
    #[error("no sections are stored")]
    NotSplit,
    #[error("verification fails: {}", .0.failed_identities().join(", "))]
    VerificationFailed(CheckReport),
}

#[cfg(test)]
mod tests;
