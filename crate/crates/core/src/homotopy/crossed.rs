use crate::cdmod::{CdLinearMap, ModElement};
use crate::conformal::{check_hom, unit, Bimodule, ConformalAlgebra, SesqMap};
use crate::report::{check_identity, CheckReport};
use crate::symexpr::Poly;

use super::{HomotopyError, TwoTermSHAC};

/// `(Y, X, ρ, ▷, ◁)`: `X` acts on `Y` and `ρ: Y → X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    x: ConformalAlgebra,
    y: ConformalAlgebra,
    rho: CdLinearMap,
    left: SesqMap,
    right: SesqMap,
}

impl CrossedModule {
    pub fn new(
        x: ConformalAlgebra,
        y: ConformalAlgebra,
        rho: CdLinearMap,
        left: SesqMap,
        right: SesqMap,
    ) -> Result<Self, HomotopyError> {
        let c = Self::new_unchecked(x, y, rho, left, right)?;
        let rep = check_crossed(&c);
        if rep.passed() {
            Ok(c)
        } else {
            Err(HomotopyError::InvalidCrossedModule(rep))
        }
    }

    pub fn new_unchecked(
        x: ConformalAlgebra,
        y: ConformalAlgebra,
        rho: CdLinearMap,
        left: SesqMap,
        right: SesqMap,
    ) -> Result<Self, HomotopyError> {
        let (rx, ry) = (x.rank(), y.rank());
        let ok = (rho.rows(), rho.cols()) == (rx, ry)
            && left.slots() == [rx, ry]
            && left.target() == ry
            && right.slots() == [ry, rx]
            && right.target() == ry;
        if !ok {
            return Err(HomotopyError::ShapeMismatch);
        }
        Ok(CrossedModule {
            x,
            y,
            rho,
            left,
            right,
        })
    }

    pub fn x(&self) -> &ConformalAlgebra {
        &self.x
    }

    pub fn y(&self) -> &ConformalAlgebra {
        &self.y
    }

    pub fn rho(&self) -> &CdLinearMap {
        &self.rho
    }

    /// `▷: X × Y → Y`.
    pub fn left(&self) -> &SesqMap {
        &self.left
    }

    /// `◁: Y × X → Y`.
    pub fn right(&self) -> &SesqMap {
        &self.right
    }

    /// `Y` as an `X`-bimodule.
    pub fn action(&self) -> Bimodule {
        Bimodule::from_maps(
            self.x.clone(),
            self.y.carrier().clone(),
            self.left.clone(),
            self.right.clone(),
        )
    }

    pub(super) fn act_left(&self, x: &ModElement, y: &ModElement, nu: &Poly) -> ModElement {
        self.left.eval(&[x.clone(), y.clone()], std::slice::from_ref(nu))
    }

    pub(super) fn act_right(&self, y: &ModElement, x: &ModElement, nu: &Poly) -> ModElement {
        self.right.eval(&[y.clone(), x.clone()], std::slice::from_ref(nu))
    }
}

fn relabel(mut rep: CheckReport, name: &str) -> CheckReport {
    for f in &mut rep.failures {
        f.identity = name.to_string();
    }
    rep
}

/// Associativity of `X` and `Y` (`x-assoc`, `y-assoc`), the bimodule axioms,
/// the action axioms `act1` … `act3`, the crossed identities `cross1`,
/// `cross2`, `cross3-left`, `cross3-right`, and `rho-hom`.
pub fn check_crossed(c: &CrossedModule) -> CheckReport {
    let (rx, ry) = (c.x.rank(), c.y.rank());
    let mut rep = relabel(c.x.check_associativity(), "x-assoc");
    rep.merge(relabel(c.y.check_associativity(), "y-assoc"));
    rep.merge(c.action().check());

    let (l, m) = (Poly::lambda(2, 1), Poly::lambda(2, 2));
    let lm = &l + &m;
    let yp = |a: &ModElement, b: &ModElement, nu: &Poly| c.y.product(a, b, nu);
    rep.merge(check_identity("act1", &[rx, ry, ry], |t| {
        let (x, y1, y2) = (unit(rx, t[0], 2), unit(ry, t[1], 2), unit(ry, t[2], 2));
        yp(&c.act_left(&x, &y1, &l), &y2, &lm).sub(&c.act_left(&x, &yp(&y1, &y2, &m), &l))
    }));
    rep.merge(check_identity("act2", &[ry, rx, ry], |t| {
        let (y1, x, y2) = (unit(ry, t[0], 2), unit(rx, t[1], 2), unit(ry, t[2], 2));
        yp(&c.act_right(&y1, &x, &l), &y2, &lm).sub(&yp(&y1, &c.act_left(&x, &y2, &m), &l))
    }));
    rep.merge(check_identity("act3", &[ry, ry, rx], |t| {
        let (y1, y2, x) = (unit(ry, t[0], 2), unit(ry, t[1], 2), unit(rx, t[2], 2));
        c.act_right(&yp(&y1, &y2, &l), &x, &lm).sub(&yp(&y1, &c.act_right(&y2, &x, &m), &l))
    }));

    let l = Poly::lambda(1, 1);
    let rho = &c.rho;
    rep.merge(check_identity("cross1", &[rx, ry], |t| {
        let (x, y) = (unit(rx, t[0], 1), unit(ry, t[1], 1));
        rho.on(&c.act_left(&x, &y, &l)).sub(&c.x.product(&x, &rho.on(&y), &l))
    }));
    rep.merge(check_identity("cross2", &[ry, rx], |t| {
        let (y, x) = (unit(ry, t[0], 1), unit(rx, t[1], 1));
        rho.on(&c.act_right(&y, &x, &l)).sub(&c.x.product(&rho.on(&y), &x, &l))
    }));
    rep.merge(check_identity("cross3-left", &[ry, ry], |t| {
        let (y1, y2) = (unit(ry, t[0], 1), unit(ry, t[1], 1));
        c.act_left(&rho.on(&y1), &y2, &l).sub(&yp(&y1, &y2, &l))
    }));
    rep.merge(check_identity("cross3-right", &[ry, ry], |t| {
        let (y1, y2) = (unit(ry, t[0], 1), unit(ry, t[1], 1));
        yp(&y1, &y2, &l).sub(&c.act_right(&y1, &rho.on(&y2), &l))
    }));
    rep.merge(relabel(check_hom(rho, &c.y, &c.x), "rho-hom"));
    rep
}

/// The strict structure `Y →ρ X` with `m²` given by the product of `X` and
/// the two actions.
pub fn crossed_to_shac(c: &CrossedModule) -> TwoTermSHAC {
    let ry = c.y.rank();
    TwoTermSHAC::new_unchecked(
        c.y.carrier().clone(),
        c.x.carrier().clone(),
        c.rho.clone(),
        c.x.mult().clone(),
        c.left.clone(),
        c.right.clone(),
        SesqMap::zero(vec![c.x.rank(); 3], ry),
    )
    .expect("crossed module shapes")
}

/// The crossed module of a strict structure, with `y₁ ∘ y₂ = m²(fd y₁, y₂)`.
pub fn shac_to_crossed(t: &TwoTermSHAC) -> Result<CrossedModule, HomotopyError> {
    if !t.is_strict() {
        return Err(HomotopyError::NotStrict);
    }
    let r1 = t.a1().rank();
    let l = Poly::lambda(1, 1);
    let ymult = SesqMap::from_fn(vec![r1, r1], r1, |x| {
        let (y1, y2) = (unit(r1, x[0], 1), unit(r1, x[1], 1));
        t.m2_01().eval(&[t.fd().on(&y1), y2], std::slice::from_ref(&l))
    });
    CrossedModule::new_unchecked(
        ConformalAlgebra::from_mult(t.a0().clone(), t.m2_00().clone()),
        ConformalAlgebra::from_mult(t.a1().clone(), ymult),
        t.fd().clone(),
        t.m2_01().clone(),
        t.m2_10().clone(),
    )
}
