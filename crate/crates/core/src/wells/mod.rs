//! Wells maps for pairs of automorphisms and pairs of derivations of an
//! extension `0 → A → E → B → 0`, with lifts built from verified witnesses.
//!
//! Pairs act on the cocycle read off from the stored section. A Wells class is
//! held as its representative difference plus a zero test.

mod aut;
mod der;

pub use aut::{
    check_aut_compatible, check_describe, induce_automorphism, kappa, omega_of_lift, transform_cocycle,
    wells_a, wells_aut, wells_b, AutPair,
};
pub use der::{
    bimodule_of, check_pair_in_g, decompose_split_derivation, extend_derivation, kappa_der,
    lift_unchecked, split_der_decomposition, theta_action, wells_der, DerPair,
};

use thiserror::Error;

use crate::cdmod::CdLinearMap;
use crate::conformal::ConformalError;
use crate::hochschild::Cochain;
use crate::report::CheckReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WellsError {
    #[error("maps do not match the extension's (A, B)")]
    ShapeMismatch,
    #[error("not a structure map of the required kind: {0}")]
    NotAStructureMap(ConformalError),
    #[error("the map does not send A into A")]
    DoesNotPreserveA,
    #[error("witness fails: {}", .0.failed_identities().join(", "))]
    InvalidWitness(CheckReport),
    #[error("A has a nonzero product; the extension is not abelian")]
    NotAbelian,
    #[error("pair is not in g(A, B): {}", .0.failed_identities().join(", "))]
    NotInG(CheckReport),
    #[error("the stored section is not a homomorphism")]
    NotSplit,
}

/// Why a Wells class is known to be nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A residual coordinate that no witness of any degree can reach.
    Obstruction { identity: String, tuple: Vec<usize> },
    /// The bounded system has no solution with ∂-degree at most `degree`.
    NoWitnessWithin { degree: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroStatus {
    /// A verified `ω` (automorphisms) or `f` (derivations), both `B → A`.
    Zero(CdLinearMap),
    NonZero(Certificate),
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellsClass {
    /// `[▷', ◁', χ']` differences for automorphisms, `[Θ(χ)]` for derivations.
    pub representative: Vec<Cochain>,
    pub status: ZeroStatus,
}

impl WellsClass {
    pub fn is_zero(&self) -> bool {
        matches!(self.status, ZeroStatus::Zero(_))
    }

    pub fn witness(&self) -> Option<&CdLinearMap> {
        match &self.status {
            ZeroStatus::Zero(w) => Some(w),
            _ => None,
        }
    }

    /// `Some(true)` when the class vanishes, `Some(false)` for any nonzero
    /// certificate, `None` when undecided.
    pub fn decided(&self) -> Option<bool> {
        match self.status {
            ZeroStatus::Zero(_) => Some(true),
            ZeroStatus::NonZero(_) => Some(false),
            ZeroStatus::Undecided => None,
        }
    }

    /// The bound behind a bounded non-existence result.
    pub fn bound(&self) -> Option<u32> {
        match self.status {
            ZeroStatus::NonZero(Certificate::NoWitnessWithin { degree }) => Some(degree),
            _ => None,
        }
    }
}

/// The escalation step shared by the bounded searches.
pub(crate) fn escalate(d: u32) -> u32 {
    2 * d.max(1)
}
