use crate::cdmod::ModElement;
use crate::conformal::{unit, ConformalAlgebra, SesqMap};
use crate::report::{check_identity, CheckReport};
use crate::symexpr::Poly;

use super::NonAbelianError;

/// A triple `(▷, ◁, χ)` on `B` with values in `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonAbelianCocycle {
    a: ConformalAlgebra,
    b: ConformalAlgebra,
    left: SesqMap,
    right: SesqMap,
    chi: SesqMap,
}

/// Labels of the cocycle identities, in checking order.
pub const COCYCLE_IDENTITIES: [&str; 7] = ["coh1", "coh2", "coh3", "coh4", "coh4'", "coh4''", "coh5"];

impl NonAbelianCocycle {
    /// Build and verify all cocycle identities.
    pub fn new(
        a: ConformalAlgebra,
        b: ConformalAlgebra,
        left: SesqMap,
        right: SesqMap,
        chi: SesqMap,
    ) -> Result<Self, NonAbelianError> {
        let c = Self::new_unchecked(a, b, left, right, chi)?;
        let r = c.check();
        if !r.passed() {
            return Err(NonAbelianError::InvalidCocycle(r));
        }
        Ok(c)
    }

    /// Build with shape checks only.
    pub fn new_unchecked(
        a: ConformalAlgebra,
        b: ConformalAlgebra,
        left: SesqMap,
        right: SesqMap,
        chi: SesqMap,
    ) -> Result<Self, NonAbelianError> {
        let (ra, rb) = (a.rank(), b.rank());
        let ok = left.slots() == [rb, ra]
            && left.target() == ra
            && right.slots() == [ra, rb]
            && right.target() == ra
            && chi.slots() == [rb, rb]
            && chi.target() == ra;
        if !ok {
            return Err(NonAbelianError::ShapeMismatch);
        }
        Ok(NonAbelianCocycle {
            a,
            b,
            left,
            right,
            chi,
        })
    }

    /// Zero actions and zero `χ`.
    pub fn zero(a: ConformalAlgebra, b: ConformalAlgebra) -> Self {
        let (ra, rb) = (a.rank(), b.rank());
        NonAbelianCocycle {
            left: SesqMap::zero(vec![rb, ra], ra),
            right: SesqMap::zero(vec![ra, rb], ra),
            chi: SesqMap::zero(vec![rb, rb], ra),
            a,
            b,
        }
    }

    /// The actions of a `B`-bimodule on the carrier of `A`, with the given `χ`.
    pub fn from_bimodule(
        a: ConformalAlgebra,
        m: &crate::conformal::Bimodule,
        chi: SesqMap,
    ) -> Result<Self, NonAbelianError> {
        if m.rank() != a.rank() {
            return Err(NonAbelianError::ShapeMismatch);
        }
        Self::new_unchecked(
            a,
            m.algebra().clone(),
            m.left().clone(),
            m.right().clone(),
            chi,
        )
    }

    pub fn a(&self) -> &ConformalAlgebra {
        &self.a
    }

    pub fn b(&self) -> &ConformalAlgebra {
        &self.b
    }

    pub fn left(&self) -> &SesqMap {
        &self.left
    }

    pub fn right(&self) -> &SesqMap {
        &self.right
    }

    pub fn chi(&self) -> &SesqMap {
        &self.chi
    }

    pub fn with_chi(&self, chi: SesqMap) -> Result<Self, NonAbelianError> {
        Self::new_unchecked(
            self.a.clone(),
            self.b.clone(),
            self.left.clone(),
            self.right.clone(),
            chi,
        )
    }

    /// `b ▷_ν a`.
    pub fn act_left(&self, b: &ModElement, a: &ModElement, nu: &Poly) -> ModElement {
        self.left.eval(&[b.clone(), a.clone()], std::slice::from_ref(nu))
    }

    /// `a ◁_ν b`.
    pub fn act_right(&self, a: &ModElement, b: &ModElement, nu: &Poly) -> ModElement {
        self.right.eval(&[a.clone(), b.clone()], std::slice::from_ref(nu))
    }

    /// `χ_ν(b₁, b₂)`.
    pub fn chi_at(&self, b1: &ModElement, b2: &ModElement, nu: &Poly) -> ModElement {
        self.chi.eval(&[b1.clone(), b2.clone()], std::slice::from_ref(nu))
    }

    /// Whether the two cocycles live over the same pair of algebras.
    pub fn same_pair(&self, other: &NonAbelianCocycle) -> bool {
        self.a == other.a && self.b == other.b
    }

    /// The seven cocycle identities on basis triples, in formal λ, μ.
    pub fn check(&self) -> CheckReport {
        check_cocycle(self)
    }
}

/// Check `coh1`, `coh2`, `coh3`, `coh4`, `coh4'`, `coh4''` and `coh5`. Each
/// failure carries LHS − RHS on one basis triple.
///
/// `coh5` is taken in the form forced by associativity of the extension:
/// `b₁ ▷_λ χ_μ(b₂, b₃) + χ_λ(b₁, b₂ ∘_μ b₃) = χ_{λ+μ}(b₁ ∘_λ b₂, b₃) + χ_λ(b₁, b₂) ◁_{λ+μ} b₃`.
pub fn check_cocycle(c: &NonAbelianCocycle) -> CheckReport {
    let (ra, rb) = (c.a.rank(), c.b.rank());
    let (l, m) = (Poly::lambda(2, 1), Poly::lambda(2, 2));
    let lm = &l + &m;
    let ua = |i: usize| unit(ra, i, 2);
    let ub = |i: usize| unit(rb, i, 2);
    let ma = |x: &ModElement, y: &ModElement, nu: &Poly| c.a.product(x, y, nu);
    let mb = |x: &ModElement, y: &ModElement, nu: &Poly| c.b.product(x, y, nu);
    let mut rep = CheckReport::pass();

    rep.merge(check_identity("coh1", &[rb, rb, ra], |t| {
        let (b1, b2, a) = (ub(t[0]), ub(t[1]), ua(t[2]));
        c.act_left(&b1, &c.act_left(&b2, &a, &m), &l)
            .sub(&c.act_left(&mb(&b1, &b2, &l), &a, &lm))
            .sub(&ma(&c.chi_at(&b1, &b2, &l), &a, &lm))
    }));
    rep.merge(check_identity("coh2", &[ra, rb, rb], |t| {
        let (a, b1, b2) = (ua(t[0]), ub(t[1]), ub(t[2]));
        c.act_right(&c.act_right(&a, &b1, &l), &b2, &lm)
            .sub(&c.act_right(&a, &mb(&b1, &b2, &m), &l))
            .sub(&ma(&a, &c.chi_at(&b1, &b2, &m), &l))
    }));
    rep.merge(check_identity("coh3", &[rb, ra, rb], |t| {
        let (b1, a, b2) = (ub(t[0]), ua(t[1]), ub(t[2]));
        c.act_left(&b1, &c.act_right(&a, &b2, &m), &l)
            .sub(&c.act_right(&c.act_left(&b1, &a, &l), &b2, &lm))
    }));
    rep.merge(check_identity("coh4", &[ra, ra, rb], |t| {
        let (a1, a2, b) = (ua(t[0]), ua(t[1]), ub(t[2]));
        c.act_right(&ma(&a1, &a2, &l), &b, &lm)
            .sub(&ma(&a1, &c.act_right(&a2, &b, &m), &l))
    }));
    rep.merge(check_identity("coh4'", &[rb, ra, ra], |t| {
        let (b, a1, a2) = (ub(t[0]), ua(t[1]), ua(t[2]));
        c.act_left(&b, &ma(&a1, &a2, &m), &l)
            .sub(&ma(&c.act_left(&b, &a1, &l), &a2, &lm))
    }));
    rep.merge(check_identity("coh4''", &[ra, rb, ra], |t| {
        let (a1, b, a2) = (ua(t[0]), ub(t[1]), ua(t[2]));
        ma(&c.act_right(&a1, &b, &l), &a2, &lm).sub(&ma(&a1, &c.act_left(&b, &a2, &m), &l))
    }));
    rep.merge(check_identity("coh5", &[rb, rb, rb], |t| {
        let (b1, b2, b3) = (ub(t[0]), ub(t[1]), ub(t[2]));
        c.act_left(&b1, &c.chi_at(&b2, &b3, &m), &l)
            .add(&c.chi_at(&b1, &mb(&b2, &b3, &m), &l))
            .sub(&c.chi_at(&mb(&b1, &b2, &l), &b3, &lm))
            .sub(&c.act_right(&c.chi_at(&b1, &b2, &l), &b3, &lm))
    }));
    rep
}
