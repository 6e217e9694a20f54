//! Exact polynomial arithmetic in ∂ and λ₁, λ₂, … over ℚ, with a small
//! expression parser. `D` is ∂ and `L<i>` is λᵢ in text form.

mod parse;
mod poly;

pub use parse::parse;
pub use poly::{ratio, scalar, Monomial, Poly, Scalar, VarId};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("syntax error at {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("variable L{index} outside arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("renaming sends two variables to L{index}")]
    IndexCollision { index: usize },
}
