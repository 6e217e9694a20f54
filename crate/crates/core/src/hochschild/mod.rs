//! The Hochschild complex of a conformal algebra with coefficients in a
//! bimodule, the Gerstenhaber bracket, and truncated cohomology.
//!
//! A degree-`n` cochain is a [`SesqMap`] with `n` slots of the algebra's rank
//! and values of arity `n − 1`. Degree 0 holds a representative of `M/∂M`.

mod complex;
mod gerstenhaber;
mod truncation;

pub use complex::{
    check_shape, cochain_map, cochains_equal, differential, equal_mod_partial, evaluate,
    inner_derivation, is_cocycle, map_cochain, zero_cochain,
};
pub use gerstenhaber::{circ_i, dgla_axiom_check, gbracket, gerstenhaber_product, report_nonzero};
pub use truncation::{
    coordinates, default_truncation, random_cochain, solve_coboundary,
    solve_coboundary_escalating, truncated_cohomology_dim, TruncatedCohomology, Truncation,
};

use thiserror::Error;

use crate::conformal::SesqMap;

pub type Cochain = SesqMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HochschildError {
    #[error("expected {expected} arguments, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("cochain shape does not match the algebra/bimodule")]
    ShapeMismatch,
    #[error("insertion slot {slot} out of range for degree {degree}")]
    SlotOutOfRange { slot: usize, degree: usize },
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("no preimage within bounds (∂-degree {ddeg}, λ-degree {ldeg})")]
    UndecidedWithinBounds { ddeg: u32, ldeg: u32 },
    #[error("solution failed re-verification")]
    VerificationFailed,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdmod::{CdLinearMap, FreeCdModule, ModElement};
    use crate::conformal::{unit, Bimodule, ConformalAlgebra};
    use crate::symexpr::{scalar, Poly};

    fn dual_numbers() -> ConformalAlgebra {
        let z = scalar(0);
        let o = scalar(1);
        let t = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]],
        ];
        ConformalAlgebra::cur_of(FreeCdModule::new(["e", "x"]).unwrap(), &t).unwrap()
    }

    fn cur_k() -> ConformalAlgebra {
        ConformalAlgebra::cur_of(FreeCdModule::new(["e"]).unwrap(), &[vec![vec![scalar(1)]]])
            .unwrap()
    }

    #[test]
    fn sesquilinear_evaluation() {
        let a = cur_k();
        let phi = a.mult().clone();
        let e = unit(1, 0, 1);
        let de = e.mul_poly(&Poly::partial(1));
        let v = evaluate(&phi, &[e.clone(), e.clone()]).unwrap();
        assert_eq!(evaluate(&phi, &[de.clone(), e.clone()]).unwrap(), v.mul_poly(&-Poly::lambda(1, 1)));
        assert!(evaluate(&phi, std::slice::from_ref(&e)).is_err());
    }

    #[test]
    fn d0_of_x_vanishes() {
        let a = dual_numbers();
        let m = Bimodule::regular(&a);
        let d = differential(&m, &zero_cochain(&unit(2, 1, 0)));
        assert!(d.is_zero());
    }

    #[test]
    fn d1_identity_is_mult() {
        let a = dual_numbers();
        let m = Bimodule::regular(&a);
        let id = map_cochain(&CdLinearMap::identity(2));
        assert_eq!(differential(&m, &id), *a.mult());
        assert!(is_cocycle(&m, a.mult()).0);
        let (ok, w) = is_cocycle(&Bimodule::regular(&cur_k()), &map_cochain(&CdLinearMap::identity(1)));
        assert!(!ok);
        assert_eq!(w.unwrap().0, vec![0, 0]);
    }

    #[test]
    fn coboundary_of_mult() {
        let a = dual_numbers();
        let m = Bimodule::regular(&a);
        let psi = solve_coboundary(&m, a.mult(), Truncation::new(1, 0)).unwrap();
        assert_eq!(differential(&m, &psi), *a.mult());
        let z = SesqMap::zero(vec![2, 2], 2);
        assert!(solve_coboundary(&m, &z, Truncation::new(1, 0)).unwrap().is_zero());
    }

    #[test]
    fn trivial_cohomology_dims() {
        let b = ConformalAlgebra::trivial(FreeCdModule::numbered("b", 1));
        let m = Bimodule::zero(&b, FreeCdModule::numbered("v", 1));
        let h = truncated_cohomology_dim(&m, 1, Truncation::new(2, 0));
        assert_eq!((h.cocycles, h.coboundaries, h.quotient), (3, 0, 3));
        let h2 = truncated_cohomology_dim(&m, 2, Truncation::new(1, 1));
        assert_eq!(h2.cocycles, h2.cochains);
        assert_eq!(h2.cochains, 2 * 2);
    }

    #[test]
    fn bracket_collapses() {
        let a = dual_numbers();
        let mult = a.mult();
        let id = map_cochain(&CdLinearMap::identity(2));
        assert!(gbracket(mult, mult).unwrap().is_zero());
        assert_eq!(gbracket(mult, &id).unwrap(), *mult);
        assert_eq!(circ_i(&id, mult, 0).unwrap(), *mult);
        assert_eq!(circ_i(mult, &id, 0).unwrap(), *mult);
        let f = CdLinearMap::scalar_poly(2, &Poly::partial(0));
        let g = CdLinearMap::new(
            vec![vec![Poly::zero(0), Poly::one(0)], vec![Poly::zero(0), Poly::zero(0)]],
            2,
            2,
        )
        .unwrap();
        let fg = circ_i(&map_cochain(&f), &map_cochain(&g), 0).unwrap();
        assert_eq!(cochain_map(&fg), f.compose(&g).unwrap());
    }

    #[test]
    fn equality_mod_partial() {
        let v = ModElement::new(vec![Poly::partial(0), Poly::one(0)], 0);
        assert!(equal_mod_partial(&v, &unit(2, 1, 0)));
        assert!(!equal_mod_partial(&v, &unit(2, 0, 0)));
    }

    #[test]
    fn d_squared_and_bracket_on_random_cochains() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let a = dual_numbers();
        let m = Bimodule::regular(&a);
        for n in 0..=3 {
            for _ in 0..3 {
                let phi = random_cochain(&mut rng, vec![2; n], 2, Truncation::new(2, 1), 0.4);
                let dd = differential(&m, &differential(&m, &phi));
                assert!(dd.is_zero(), "d∘d ≠ 0 in degree {n}");
                if n >= 1 {
                    let b = gbracket(a.mult(), &phi).unwrap();
                    let d = differential(&m, &phi);
                    let expect = if n % 2 == 1 { b } else { b.neg() };
                    assert_eq!(d, expect, "degree {n}");
                }
            }
        }
    }
}
