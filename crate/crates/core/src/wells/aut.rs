use crate::cdmod::{CdLinearMap, ModElement};
use crate::conformal::{check_structure_map, unit, ConformalAlgebra, MapKind, Setting, SesqMap, StructureMap};
use crate::nonabelian::{
    cocycle_of_extension, equivalence_obstruction, solve_equivalence, Extension, NonAbelianCocycle,
    NonAbelianError,
};
use crate::report::{check_identity, CheckReport};
use crate::symexpr::Poly;
use crate::witness;

use super::{escalate, Certificate, WellsClass, WellsError, ZeroStatus};

/// `(g, h) ∈ Aut(A) × Aut(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutPair {
    g: StructureMap,
    h: StructureMap,
}

fn automorphism(f: &CdLinearMap, alg: &ConformalAlgebra) -> Result<StructureMap, WellsError> {
    check_structure_map(f, MapKind::Automorphism, Setting::Algebras(alg, alg))
        .map_err(WellsError::NotAStructureMap)
}

impl AutPair {
    pub fn new(
        g: &CdLinearMap,
        h: &CdLinearMap,
        a: &ConformalAlgebra,
        b: &ConformalAlgebra,
    ) -> Result<Self, WellsError> {
        Ok(AutPair {
            g: automorphism(g, a)?,
            h: automorphism(h, b)?,
        })
    }

    pub fn identity(a: &ConformalAlgebra, b: &ConformalAlgebra) -> Self {
        Self::new(&CdLinearMap::identity(a.rank()), &CdLinearMap::identity(b.rank()), a, b)
            .expect("identity")
    }

    pub fn g(&self) -> &CdLinearMap {
        &self.g.underlying
    }

    pub fn h(&self) -> &CdLinearMap {
        &self.h.underlying
    }

    /// `(g₁g₂, h₁h₂)` for `self = (g₁, h₁)`.
    pub fn compose(&self, other: &AutPair) -> Result<AutPair, WellsError> {
        let g = self.g().compose(other.g()).map_err(|_| WellsError::ShapeMismatch)?;
        let h = self.h().compose(other.h()).map_err(|_| WellsError::ShapeMismatch)?;
        Ok(AutPair {
            g: StructureMap { underlying: g, kind: MapKind::Automorphism },
            h: StructureMap { underlying: h, kind: MapKind::Automorphism },
        })
    }

    pub fn inverse(&self) -> AutPair {
        let inv = |f: &CdLinearMap| StructureMap {
            underlying: f.inverse().expect("verified automorphism"),
            kind: MapKind::Automorphism,
        };
        AutPair {
            g: inv(self.g()),
            h: inv(self.h()),
        }
    }

    fn acts_on(&self, c: &NonAbelianCocycle) -> Result<(), WellsError> {
        if self.g().rows() != c.a().rank() || self.h().rows() != c.b().rank() {
            return Err(WellsError::ShapeMismatch);
        }
        Ok(())
    }
}

/// `▷'(b, a) = g(h⁻¹b ▷ g⁻¹a)`, `◁'(a, b) = g(g⁻¹a ◁ h⁻¹b)`,
/// `χ'(b₁, b₂) = g χ(h⁻¹b₁, h⁻¹b₂)`.
pub fn transform_cocycle(p: &AutPair, c: &NonAbelianCocycle) -> Result<NonAbelianCocycle, WellsError> {
    p.acts_on(c)?;
    let (ra, rb) = (c.a().rank(), c.b().rank());
    let inv = p.inverse();
    let (g, gi, hi) = (p.g(), inv.g(), inv.h());
    let l = Poly::lambda(1, 1);
    let ga = |j: usize| gi.on(&unit(ra, j, 1));
    let hb = |i: usize| hi.on(&unit(rb, i, 1));
    let left = SesqMap::from_fn(vec![rb, ra], ra, |t| g.on(&c.act_left(&hb(t[0]), &ga(t[1]), &l)));
    let right = SesqMap::from_fn(vec![ra, rb], ra, |t| g.on(&c.act_right(&ga(t[0]), &hb(t[1]), &l)));
    let chi = SesqMap::from_fn(vec![rb, rb], ra, |t| g.on(&c.chi_at(&hb(t[0]), &hb(t[1]), &l)));
    NonAbelianCocycle::new_unchecked(c.a().clone(), c.b().clone(), left, right, chi)
        .map_err(|_| WellsError::ShapeMismatch)
}

/// The three identities `ω` must satisfy for `(g, h)` to be induced:
///
/// - `g(b▷a) = h(b)▷g(a) − ω(hb)∘g(a)`
/// - `g(a◁b) = g(a)◁h(b) − g(a)∘ω(hb)`
/// - `gχ(b₁,b₂) = χ(hb₁,hb₂) − hb₁▷ω(hb₂) + ω(hb₁∘hb₂) − ω(hb₁)◁hb₂ + ω(hb₁)∘ω(hb₂)`
pub fn check_describe(
    p: &AutPair,
    c: &NonAbelianCocycle,
    omega: &CdLinearMap,
) -> Result<CheckReport, WellsError> {
    p.acts_on(c)?;
    let (ra, rb) = (c.a().rank(), c.b().rank());
    if (omega.rows(), omega.cols()) != (ra, rb) {
        return Err(WellsError::ShapeMismatch);
    }
    let (g, h) = (p.g(), p.h());
    let (a, b) = (c.a(), c.b());
    let l = Poly::lambda(1, 1);
    let ua = |i: usize| unit(ra, i, 1);
    let ub = |i: usize| unit(rb, i, 1);
    let mut rep = check_identity("describe-left", &[rb, ra], |t| {
        let (y, x) = (h.on(&ub(t[0])), ua(t[1]));
        let gx = g.on(&x);
        g.on(&c.act_left(&ub(t[0]), &x, &l))
            .sub(&c.act_left(&y, &gx, &l))
            .add(&a.product(&omega.on(&y), &gx, &l))
    });
    rep.merge(check_identity("describe-right", &[ra, rb], |t| {
        let (x, y) = (ua(t[0]), h.on(&ub(t[1])));
        let gx = g.on(&x);
        g.on(&c.act_right(&x, &ub(t[1]), &l))
            .sub(&c.act_right(&gx, &y, &l))
            .add(&a.product(&gx, &omega.on(&y), &l))
    }));
    rep.merge(check_identity("describe-chi", &[rb, rb], |t| {
        let (y1, y2) = (h.on(&ub(t[0])), h.on(&ub(t[1])));
        let (w1, w2) = (omega.on(&y1), omega.on(&y2));
        let rhs = c
            .chi_at(&y1, &y2, &l)
            .sub(&c.act_left(&y1, &w2, &l))
            .add(&omega.on(&b.product(&y1, &y2, &l)))
            .sub(&c.act_right(&w1, &y2, &l))
            .add(&a.product(&w1, &w2, &l));
        g.on(&c.chi_at(&ub(t[0]), &ub(t[1]), &l)).sub(&rhs)
    }));
    Ok(rep)
}

/// Membership in `Aut_{▷,◁}(A, B)`: `g(b▷a) = h(b)▷g(a)` and
/// `g(a◁b) = g(a)◁h(b)`. Meaningful when `A` is abelian.
pub fn check_aut_compatible(p: &AutPair, c: &NonAbelianCocycle) -> Result<CheckReport, WellsError> {
    p.acts_on(c)?;
    let (ra, rb) = (c.a().rank(), c.b().rank());
    let (g, h) = (p.g(), p.h());
    let l = Poly::lambda(1, 1);
    let mut rep = check_identity("compatible-left", &[rb, ra], |t| {
        let (y, x) = (unit(rb, t[0], 1), unit(ra, t[1], 1));
        g.on(&c.act_left(&y, &x, &l)).sub(&c.act_left(&h.on(&y), &g.on(&x), &l))
    });
    rep.merge(check_identity("compatible-right", &[ra, rb], |t| {
        let (x, y) = (unit(ra, t[0], 1), unit(rb, t[1], 1));
        g.on(&c.act_right(&x, &y, &l)).sub(&c.act_right(&g.on(&x), &h.on(&y), &l))
    }));
    Ok(rep)
}

fn differences(t: &NonAbelianCocycle, c: &NonAbelianCocycle) -> Vec<SesqMap> {
    vec![
        t.left().sub(c.left()),
        t.right().sub(c.right()),
        t.chi().sub(c.chi()),
    ]
}

/// `𝒲(g, h) = [c^{g,h} − c]` with its zero test: a witness `ω` with
/// `c^{g,h} ≈ c` via `ω`, searched at ∂-degree `degree` and then once more
/// at the escalated bound.
pub fn wells_aut(p: &AutPair, e: &Extension, degree: u32) -> Result<WellsClass, WellsError> {
    let c = cocycle_of_extension(e);
    let t = transform_cocycle(p, &c)?;
    let representative = differences(&t, &c);
    if let Some((identity, tuple)) = equivalence_obstruction(&t, &c) {
        return Ok(WellsClass {
            representative,
            status: ZeroStatus::NonZero(Certificate::Obstruction {
                identity: identity.to_string(),
                tuple,
            }),
        });
    }
    let mut status = ZeroStatus::Undecided;
    for d in [degree, escalate(degree)] {
        match solve_equivalence(&t, &c, d) {
            Ok(Some(w)) => {
                let ok = check_describe(p, &c, &w.delta)?.passed();
                status = if witness::record(ok) {
                    ZeroStatus::Zero(w.delta)
                } else {
                    ZeroStatus::Undecided
                };
                break;
            }
            Ok(None) => unreachable!("obstruction handled above"),
            Err(NonAbelianError::UndecidedWithinBounds { degree }) => {
                status = ZeroStatus::NonZero(Certificate::NoWitnessWithin { degree });
            }
            Err(_) => {
                status = ZeroStatus::Undecided;
                break;
            }
        }
    }
    Ok(WellsClass {
        representative,
        status,
    })
}

/// `𝒲_A(g) = 𝒲(g, id)`.
pub fn wells_a(g: &CdLinearMap, e: &Extension, degree: u32) -> Result<WellsClass, WellsError> {
    let p = AutPair::new(g, &CdLinearMap::identity(e.b().rank()), e.a(), e.b())?;
    wells_aut(&p, e, degree)
}

/// `𝒲_B(h) = 𝒲(id, h)`.
pub fn wells_b(h: &CdLinearMap, e: &Extension, degree: u32) -> Result<WellsClass, WellsError> {
    let p = AutPair::new(&CdLinearMap::identity(e.a().rank()), h, e.a(), e.b())?;
    wells_aut(&p, e, degree)
}

/// The automorphism of `E` that is `(a, b) ↦ (g(a) − ω(h(b)), h(b))` in the
/// coordinates `θ: A ⊕ B → E`.
pub fn induce_automorphism(
    p: &AutPair,
    omega: &CdLinearMap,
    e: &Extension,
) -> Result<StructureMap, WellsError> {
    let c = cocycle_of_extension(e);
    let rep = check_describe(p, &c, omega)?;
    if !rep.passed() {
        return Err(WellsError::InvalidWitness(rep));
    }
    let (ra, rb) = (e.a().rank(), e.b().rank());
    let corner = p.h().then(omega).neg();
    let inner = CdLinearMap::block(p.g(), &corner, &CdLinearMap::zero(rb, ra), p.h());
    let theta = e.theta();
    let f = theta
        .compose(&inner)
        .and_then(|m| m.compose(&theta.inverse()?))
        .map_err(|_| WellsError::ShapeMismatch)?;
    automorphism(&f, e.e())
}

/// `κ(f) = (f|_A, β∘f∘γ)` for an automorphism `f` of `E` with `f(A) ⊆ A`.
pub fn kappa(f: &CdLinearMap, e: &Extension) -> Result<AutPair, WellsError> {
    let re = e.e().rank();
    if (f.rows(), f.cols()) != (re, re) {
        return Err(WellsError::ShapeMismatch);
    }
    automorphism(f, e.e())?;
    let (g, h) = restrict(f, e)?;
    AutPair::new(&g, &h, e.a(), e.b())
}

/// The diagonal blocks of `θ⁻¹ f θ`; the lower-left block must vanish.
pub(super) fn restrict(f: &CdLinearMap, e: &Extension) -> Result<(CdLinearMap, CdLinearMap), WellsError> {
    let (ra, rb) = (e.a().rank(), e.b().rank());
    let theta = e.theta();
    let m = theta
        .inverse()
        .and_then(|ti| ti.compose(f))
        .and_then(|x| x.compose(&theta))
        .map_err(|_| WellsError::ShapeMismatch)?;
    if !m.sub_block(ra, rb, 0, ra).is_zero() {
        return Err(WellsError::DoesNotPreserveA);
    }
    Ok((m.sub_block(0, ra, 0, ra), m.sub_block(ra, rb, ra, rb)))
}

/// `ω(b) = γ(b) − f(γ(h⁻¹b))`, read in `A`; the witness a lift `f` of
/// `(g, h)` produces.
pub fn omega_of_lift(f: &CdLinearMap, h: &CdLinearMap, e: &Extension) -> CdLinearMap {
    let (ra, rb) = (e.a().rank(), e.b().rank());
    let hi = h.inverse().expect("automorphism");
    let diff = e.gamma().sub(&hi.then(e.gamma()).then(f));
    let inv = e.theta().inverse().expect("validated extension");
    let cols: Vec<ModElement> = (0..rb)
        .map(|j| {
            let v = inv.on(&diff.column(j));
            debug_assert!(v.slice(ra, rb).is_zero());
            v.slice(0, ra)
        })
        .collect();
    CdLinearMap::from_columns(&cols, ra)
}
