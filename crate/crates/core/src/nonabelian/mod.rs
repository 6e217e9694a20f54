//! Non-abelian 2-cocycles `(▷, ◁, χ)`, the extensions they define, cocycles
//! read off from sections, and equivalence of cocycles.
//!
//! Extensions are always stored on the carrier `A ⊕ B` (A coordinates first).
//! Equivalence `c ≈ c̄` via `δ` takes `c` unbarred and `c̄` barred.

mod cocycle;
mod equivalence;
mod extension;

pub use cocycle::{check_cocycle, NonAbelianCocycle, COCYCLE_IDENTITIES};
pub use equivalence::{
    check_equivalence_witness, equivalence_obstruction, equivalence_residuals,
    equivalence_transform, solve_equivalence, EquivalenceWitness,
};
pub use extension::{
    build_extension, canonical_maps, cocycle_of_extension, extension_algebra, Extension,
};

use thiserror::Error;

use crate::report::CheckReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NonAbelianError {
    #[error("table or map shapes do not match (A, B)")]
    ShapeMismatch,
    #[error("cocycle identities fail: {}", .0.failed_identities().join(", "))]
    InvalidCocycle(CheckReport),
    #[error("extension data fails: {}", .0.failed_identities().join(", "))]
    InvalidExtension(CheckReport),
    #[error("the sequence is not exact or not split over k[∂]")]
    NotExact,
    #[error("γ is not a section of β")]
    NotASection,
    #[error("no witness found with ∂-degree ≤ {degree}")]
    UndecidedWithinBounds { degree: u32 },
    #[error("solvable over the algebraic closure but no rational witness found")]
    NoRationalWitness,
    #[error("solution failed re-verification")]
    VerificationFailed,
}
