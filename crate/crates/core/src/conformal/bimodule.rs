use crate::cdmod::{FreeCdModule, ModElement};
use crate::report::{check_identity, CheckReport};
use crate::symexpr::Poly;

use super::sesq::{unit, SesqMap};
use super::{ConformalAlgebra, ConformalError};

/// A conformal bimodule `(M, ▷, ◁)` over an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    algebra: ConformalAlgebra,
    carrier: FreeCdModule,
    left: SesqMap,
    right: SesqMap,
}

impl Bimodule {
    /// `left[i][j] = eᵢ ▷_λ vⱼ`, `right[j][i] = vⱼ ◁_λ eᵢ`; verified.
    pub fn new(
        algebra: ConformalAlgebra,
        carrier: FreeCdModule,
        left: Vec<Vec<ModElement>>,
        right: Vec<Vec<ModElement>>,
    ) -> Result<Self, ConformalError> {
        let m = Self::new_unchecked(algebra, carrier, left, right)?;
        let r = m.check();
        if !r.passed() {
            return Err(ConformalError::InvalidBimodule(r));
        }
        Ok(m)
    }

    pub fn new_unchecked(
        algebra: ConformalAlgebra,
        carrier: FreeCdModule,
        left: Vec<Vec<ModElement>>,
        right: Vec<Vec<ModElement>>,
    ) -> Result<Self, ConformalError> {
        let (ra, rm) = (algebra.rank(), carrier.rank());
        let ok = |t: &Vec<Vec<ModElement>>, r1: usize, r2: usize| {
            t.len() == r1 && t.iter().all(|row| row.len() == r2 && row.iter().all(|v| v.rank() == rm))
        };
        if !ok(&left, ra, rm) || !ok(&right, rm, ra) {
            return Err(ConformalError::ShapeMismatch);
        }
        let left = SesqMap::from_fn(vec![ra, rm], rm, |t| left[t[0]][t[1]].with_arity(1));
        let right = SesqMap::from_fn(vec![rm, ra], rm, |t| right[t[0]][t[1]].with_arity(1));
        Ok(Bimodule {
            algebra,
            carrier,
            left,
            right,
        })
    }

    pub fn from_maps(
        algebra: ConformalAlgebra,
        carrier: FreeCdModule,
        left: SesqMap,
        right: SesqMap,
    ) -> Self {
        let (ra, rm) = (algebra.rank(), carrier.rank());
        assert_eq!(left.slots(), &[ra, rm]);
        assert_eq!(right.slots(), &[rm, ra]);
        assert_eq!(left.target(), rm);
        assert_eq!(right.target(), rm);
        Bimodule {
            algebra,
            carrier,
            left,
            right,
        }
    }

    /// `A` acting on itself by its product.
    pub fn regular(algebra: &ConformalAlgebra) -> Self {
        Bimodule {
            carrier: algebra.carrier().clone(),
            left: algebra.mult().clone(),
            right: algebra.mult().clone(),
            algebra: algebra.clone(),
        }
    }

    /// Zero actions on `carrier`.
    pub fn zero(algebra: &ConformalAlgebra, carrier: FreeCdModule) -> Self {
        let (ra, rm) = (algebra.rank(), carrier.rank());
        Bimodule {
            left: SesqMap::zero(vec![ra, rm], rm),
            right: SesqMap::zero(vec![rm, ra], rm),
            algebra: algebra.clone(),
            carrier,
        }
    }

    pub fn algebra(&self) -> &ConformalAlgebra {
        &self.algebra
    }

    pub fn carrier(&self) -> &FreeCdModule {
        &self.carrier
    }

    pub fn rank(&self) -> usize {
        self.carrier.rank()
    }

    pub fn left(&self) -> &SesqMap {
        &self.left
    }

    pub fn right(&self) -> &SesqMap {
        &self.right
    }

    /// `a ▷_ν v`.
    pub fn act_left(&self, a: &ModElement, v: &ModElement, nu: &Poly) -> ModElement {
        self.left.eval(&[a.clone(), v.clone()], std::slice::from_ref(nu))
    }

    /// `v ◁_ν a`.
    pub fn act_right(&self, v: &ModElement, a: &ModElement, nu: &Poly) -> ModElement {
        self.right.eval(&[v.clone(), a.clone()], std::slice::from_ref(nu))
    }

    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }

    pub fn with_right_negated(&self) -> Bimodule {
        Bimodule {
            right: self.right.neg(),
            ..self.clone()
        }
    }

    /// The five module axioms and the two sesquilinearity rules of each action
    /// that are not already forced by evaluation, checked on basis tuples:
    /// `left-sesq-1`, `left-sesq-2`, `left-assoc`, `right-sesq-1`,
    /// `right-sesq-2`, `right-assoc`, `compatibility`.
    pub fn check(&self) -> CheckReport {
        let (ra, rm) = (self.algebra.rank(), self.rank());
        let l1 = Poly::lambda(1, 1);
        let d1 = Poly::partial(1);
        let mut rep = CheckReport::pass();
        rep.merge(check_identity("left-sesq-1", &[ra, rm], |t| {
            let (a, v) = (unit(ra, t[0], 1), unit(rm, t[1], 1));
            self.act_left(&a.mul_poly(&d1), &v, &l1)
                .add(&self.act_left(&a, &v, &l1).mul_poly(&l1))
        }));
        rep.merge(check_identity("left-sesq-2", &[ra, rm], |t| {
            let (a, v) = (unit(ra, t[0], 1), unit(rm, t[1], 1));
            self.act_left(&a, &v.mul_poly(&d1), &l1)
                .sub(&self.act_left(&a, &v, &l1).mul_poly(&(&d1 + &l1)))
        }));
        rep.merge(check_identity("left-assoc", &[ra, ra, rm], |t| {
            let (l, m) = (Poly::lambda(2, 1), Poly::lambda(2, 2));
            let (a, b, v) = (unit(ra, t[0], 2), unit(ra, t[1], 2), unit(rm, t[2], 2));
            let lhs = self.act_left(&self.algebra.product(&a, &b, &l), &v, &(&l + &m));
            let rhs = self.act_left(&a, &self.act_left(&b, &v, &m), &l);
            lhs.sub(&rhs)
        }));
        rep.merge(check_identity("right-sesq-1", &[rm, ra], |t| {
            let (v, a) = (unit(rm, t[0], 1), unit(ra, t[1], 1));
            self.act_right(&v.mul_poly(&d1), &a, &l1)
                .add(&self.act_right(&v, &a, &l1).mul_poly(&l1))
        }));
        rep.merge(check_identity("right-sesq-2", &[rm, ra], |t| {
            let (v, a) = (unit(rm, t[0], 1), unit(ra, t[1], 1));
            self.act_right(&v, &a.mul_poly(&d1), &l1)
                .sub(&self.act_right(&v, &a, &l1).mul_poly(&(&d1 + &l1)))
        }));
        rep.merge(check_identity("right-assoc", &[rm, ra, ra], |t| {
            let (l, m) = (Poly::lambda(2, 1), Poly::lambda(2, 2));
            let (v, a, b) = (unit(rm, t[0], 2), unit(ra, t[1], 2), unit(ra, t[2], 2));
            let lhs = self.act_right(&self.act_right(&v, &a, &l), &b, &(&l + &m));
            let rhs = self.act_right(&v, &self.algebra.product(&a, &b, &m), &l);
            lhs.sub(&rhs)
        }));
        rep.merge(check_identity("compatibility", &[ra, rm, ra], |t| {
            let (l, m) = (Poly::lambda(2, 1), Poly::lambda(2, 2));
            let (a, v, b) = (unit(ra, t[0], 2), unit(rm, t[1], 2), unit(ra, t[2], 2));
            let lhs = self.act_right(&self.act_left(&a, &v, &l), &b, &(&l + &m));
            let rhs = self.act_left(&a, &self.act_right(&v, &b, &m), &l);
            lhs.sub(&rhs)
        }));
        rep
    }
}
