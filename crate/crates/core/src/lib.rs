//! Associative conformal algebras over k[∂] with exact rational arithmetic.
//!
//! The crate covers Hochschild cochains and the Gerstenhaber bracket,
//! non-abelian extensions and their 2-cocycles, the Maurer–Cartan picture of
//! those cocycles, Wells maps for automorphism and derivation pairs, and
//! 2-term strongly homotopy associative conformal algebras. Every identity is
//! checked as an exact polynomial identity.

pub mod symexpr;
pub mod cdmod;
pub mod report;
pub mod conformal;
pub mod hochschild;
pub mod groebner;
pub mod nonabelian;
pub mod mcgauge;
pub mod wells;
pub mod homotopy;
pub mod fixtures;
pub mod witness;
