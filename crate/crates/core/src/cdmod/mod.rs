//! Free k[∂]-modules of finite rank, k[∂]-linear maps as matrices, Smith normal
//! form, and exact solvers over k[∂] and over ℚ.

mod bounded;
pub mod linalg;
mod module;
mod smith;

pub use bounded::{
    bounded_coefficient_solve, PartialUnknowns, PolyEquation, PolyEquations, ScalarEquation,
    UnknownMap,
};
pub use module::{CdLinearMap, FreeCdModule, ModElement};
pub use smith::{
    image_basis, in_span, kernel_basis, same_submodule, smith_normal_form, solve_over_kd,
    verify_smith, KdSolution, SmithDecomposition,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CdError {
    #[error("module mismatch: expected rank {expected}, found {found}")]
    ModuleMismatch { expected: usize, found: usize },
    #[error("matrix shape mismatch")]
    ShapeMismatch,
    #[error("k[∂]-linear map entries may not contain λ")]
    LambdaInMap,
    #[error("duplicate basis name {0}")]
    DuplicateBasisName(String),
    #[error("map is not invertible over k[∂]")]
    NotInvertible,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("equation is not affine in the unknowns")]
    NotAffine,
    #[error("solution failed re-verification")]
    VerificationFailed,
}
