use crate::cdmod::CdLinearMap;
use crate::report::{check_identity, CheckReport};
use crate::symexpr::Poly;

use super::sesq::unit;
use super::{Bimodule, ConformalAlgebra, ConformalError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Hom,
    Automorphism,
    Derivation,
}

/// Where a structure map lives.
#[derive(Clone, Copy, Debug)]
pub enum Setting<'a> {
    /// `A → B` (homomorphisms) or `A → A` (automorphisms, derivations).
    Algebras(&'a ConformalAlgebra, &'a ConformalAlgebra),
    /// Derivations `A → M` into a bimodule.
    Bimodule(&'a Bimodule),
}

/// A k[∂]-linear map that passed the predicate for its kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMap {
    pub underlying: CdLinearMap,
    pub kind: MapKind,
}

/// `f(a ∘_λ b) = f(a) ∘_λ f(b)`.
pub fn check_hom(f: &CdLinearMap, src: &ConformalAlgebra, tgt: &ConformalAlgebra) -> CheckReport {
    let (r, s) = (src.rank(), tgt.rank());
    assert_eq!((f.rows(), f.cols()), (s, r), "map shape");
    let l = Poly::lambda(1, 1);
    check_identity("hom", &[r, r], |t| {
        let (a, b) = (unit(r, t[0], 1), unit(r, t[1], 1));
        f.on(&src.product(&a, &b, &l))
            .sub(&tgt.product(&f.on(&a), &f.on(&b), &l))
    })
}

/// `d(a ∘_λ b) = d(a) ∘_λ b + a ∘_λ d(b)`.
pub fn check_derivation(d: &CdLinearMap, alg: &ConformalAlgebra) -> CheckReport {
    let r = alg.rank();
    assert_eq!((d.rows(), d.cols()), (r, r), "map shape");
    let l = Poly::lambda(1, 1);
    check_identity("derivation", &[r, r], |t| {
        let (a, b) = (unit(r, t[0], 1), unit(r, t[1], 1));
        d.on(&alg.product(&a, &b, &l))
            .sub(&alg.product(&d.on(&a), &b, &l))
            .sub(&alg.product(&a, &d.on(&b), &l))
    })
}

/// `d(a ∘_λ b) = a ▷_λ d(b) + d(a) ◁_λ b` for `d: A → M`.
pub fn check_bimodule_derivation(d: &CdLinearMap, m: &Bimodule) -> CheckReport {
    let r = m.algebra().rank();
    assert_eq!((d.rows(), d.cols()), (m.rank(), r), "map shape");
    let l = Poly::lambda(1, 1);
    check_identity("derivation", &[r, r], |t| {
        let (a, b) = (unit(r, t[0], 1), unit(r, t[1], 1));
        d.on(&m.algebra().product(&a, &b, &l))
            .sub(&m.act_left(&a, &d.on(&b), &l))
            .sub(&m.act_right(&d.on(&a), &b, &l))
    })
}

/// Verify `f` as a map of the given kind.
pub fn check_structure_map(
    f: &CdLinearMap,
    kind: MapKind,
    setting: Setting<'_>,
) -> Result<StructureMap, ConformalError> {
    let report = match (kind, setting) {
        (MapKind::Hom, Setting::Algebras(a, b)) => {
            shape(f, b.rank(), a.rank())?;
            check_hom(f, a, b)
        }
        (MapKind::Automorphism, Setting::Algebras(a, b)) => {
            if a != b {
                return Err(ConformalError::ShapeMismatch);
            }
            shape(f, a.rank(), a.rank())?;
            f.inverse().map_err(|_| ConformalError::NotInvertible)?;
            check_hom(f, a, a)
        }
        (MapKind::Derivation, Setting::Algebras(a, b)) => {
            if a != b {
                return Err(ConformalError::ShapeMismatch);
            }
            shape(f, a.rank(), a.rank())?;
            check_derivation(f, a)
        }
        (MapKind::Derivation, Setting::Bimodule(m)) => {
            shape(f, m.rank(), m.algebra().rank())?;
            check_bimodule_derivation(f, m)
        }
        _ => return Err(ConformalError::ShapeMismatch),
    };
    if report.passed() {
        Ok(StructureMap {
            underlying: f.clone(),
            kind,
        })
    } else {
        Err(ConformalError::Violation(report))
    }
}

fn shape(f: &CdLinearMap, rows: usize, cols: usize) -> Result<(), ConformalError> {
    if f.rows() == rows && f.cols() == cols {
        Ok(())
    } else {
        Err(ConformalError::ShapeMismatch)
    }
}
