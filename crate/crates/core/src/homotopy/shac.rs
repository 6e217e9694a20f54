use crate::cdmod::{CdLinearMap, FreeCdModule, ModElement};
use crate::conformal::{lambdas, unit, Bimodule, ConformalAlgebra, SesqMap};
use crate::hochschild::{check_shape, differential, is_cocycle, Cochain};
use crate::report::{check_identity, CheckReport};
use crate::symexpr::Poly;

use super::HomotopyError;

/// `A₁ →fd A₀` with `m²` on the three slot types that may be nonzero and
/// `m³: A₀³ → A₁`. The product on `A₁ × A₁` is zero and not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermSHAC {
    a1: FreeCdModule,
    a0: FreeCdModule,
    fd: CdLinearMap,
    m00: SesqMap,
    m01: SesqMap,
    m10: SesqMap,
    m3: SesqMap,
}

impl TwoTermSHAC {
    /// Build and verify all eight identities.
    pub fn new(
        a1: FreeCdModule,
        a0: FreeCdModule,
        fd: CdLinearMap,
        m00: SesqMap,
        m01: SesqMap,
        m10: SesqMap,
        m3: SesqMap,
    ) -> Result<Self, HomotopyError> {
        let t = Self::new_unchecked(a1, a0, fd, m00, m01, m10, m3)?;
        let rep = check_twoterm(&t);
        if rep.passed() {
            Ok(t)
        } else {
            Err(HomotopyError::InvalidShac(rep))
        }
    }

    /// Shape checks only.
    pub fn new_unchecked(
        a1: FreeCdModule,
        a0: FreeCdModule,
        fd: CdLinearMap,
        m00: SesqMap,
        m01: SesqMap,
        m10: SesqMap,
        m3: SesqMap,
    ) -> Result<Self, HomotopyError> {
        let (r1, r0) = (a1.rank(), a0.rank());
        let ok = (fd.rows(), fd.cols()) == (r0, r1)
            && m00.slots() == [r0, r0]
            && m00.target() == r0
            && m01.slots() == [r0, r1]
            && m01.target() == r1
            && m10.slots() == [r1, r0]
            && m10.target() == r1
            && m3.slots() == [r0, r0, r0]
            && m3.target() == r1;
        if !ok {
            return Err(HomotopyError::ShapeMismatch);
        }
        Ok(TwoTermSHAC {
            a1,
            a0,
            fd,
            m00,
            m01,
            m10,
            m3,
        })
    }

    pub fn a1(&self) -> &FreeCdModule {
        &self.a1
    }

    pub fn a0(&self) -> &FreeCdModule {
        &self.a0
    }

    pub fn fd(&self) -> &CdLinearMap {
        &self.fd
    }

    /// `m²` on `A₀ × A₀`.
    pub fn m2_00(&self) -> &SesqMap {
        &self.m00
    }

    /// `m²` on `A₀ × A₁`.
    pub fn m2_01(&self) -> &SesqMap {
        &self.m01
    }

    /// `m²` on `A₁ × A₀`.
    pub fn m2_10(&self) -> &SesqMap {
        &self.m10
    }

    pub fn m3(&self) -> &SesqMap {
        &self.m3
    }

    pub fn is_skeletal(&self) -> bool {
        self.fd.is_zero()
    }

    pub fn is_strict(&self) -> bool {
        self.m3.is_zero()
    }

    fn p00(&self, a: &ModElement, b: &ModElement, nu: &Poly) -> ModElement {
        self.m00.eval(&[a.clone(), b.clone()], std::slice::from_ref(nu))
    }

    fn p01(&self, a: &ModElement, b: &ModElement, nu: &Poly) -> ModElement {
        self.m01.eval(&[a.clone(), b.clone()], std::slice::from_ref(nu))
    }

    fn p10(&self, b: &ModElement, a: &ModElement, nu: &Poly) -> ModElement {
        self.m10.eval(&[b.clone(), a.clone()], std::slice::from_ref(nu))
    }

    fn p3(&self, args: [&ModElement; 3], l1: &Poly, l2: &Poly) -> ModElement {
        self.m3
            .eval(&args.map(ModElement::clone), &[l1.clone(), l2.clone()])
    }
}

/// Eqs. 2-t1 to 2-t8 on basis tuples with formal λ's, labelled `2-t1` … `2-t8`.
pub fn check_twoterm(t: &TwoTermSHAC) -> CheckReport {
    let (r0, r1) = (t.a0.rank(), t.a1.rank());
    let fd = &t.fd;
    let mut rep = CheckReport::pass();
    let l = Poly::lambda(1, 1);
    rep.merge(check_identity("2-t1", &[r0, r1], |x| {
        let (a, b) = (unit(r0, x[0], 1), unit(r1, x[1], 1));
        fd.on(&t.p01(&a, &b, &l)).sub(&t.p00(&a, &fd.on(&b), &l))
    }));
    rep.merge(check_identity("2-t2", &[r1, r0], |x| {
        let (b, a) = (unit(r1, x[0], 1), unit(r0, x[1], 1));
        fd.on(&t.p10(&b, &a, &l)).sub(&t.p00(&fd.on(&b), &a, &l))
    }));
    rep.merge(check_identity("2-t3", &[r1, r1], |x| {
        let (b1, b2) = (unit(r1, x[0], 1), unit(r1, x[1], 1));
        t.p01(&fd.on(&b1), &b2, &l).sub(&t.p10(&b1, &fd.on(&b2), &l))
    }));

    let (l1, l2) = (Poly::lambda(2, 1), Poly::lambda(2, 2));
    let l12 = &l1 + &l2;
    rep.merge(check_identity("2-t4", &[r0, r0, r0], |x| {
        let [a1, a2, a3] = [x[0], x[1], x[2]].map(|i| unit(r0, i, 2));
        let assoc = t
            .p00(&t.p00(&a1, &a2, &l1), &a3, &l12)
            .sub(&t.p00(&a1, &t.p00(&a2, &a3, &l2), &l1));
        fd.on(&t.p3([&a1, &a2, &a3], &l1, &l2)).sub(&assoc)
    }));
    rep.merge(check_identity("2-t5", &[r1, r0, r0], |x| {
        let b = unit(r1, x[0], 2);
        let (a2, a3) = (unit(r0, x[1], 2), unit(r0, x[2], 2));
        let assoc = t
            .p10(&t.p10(&b, &a2, &l1), &a3, &l12)
            .sub(&t.p10(&b, &t.p00(&a2, &a3, &l2), &l1));
        t.p3([&fd.on(&b), &a2, &a3], &l1, &l2).sub(&assoc)
    }));
    rep.merge(check_identity("2-t6", &[r0, r1, r0], |x| {
        let (a1, a3) = (unit(r0, x[0], 2), unit(r0, x[2], 2));
        let b = unit(r1, x[1], 2);
        let assoc = t
            .p10(&t.p01(&a1, &b, &l1), &a3, &l12)
            .sub(&t.p01(&a1, &t.p10(&b, &a3, &l2), &l1));
        t.p3([&a1, &fd.on(&b), &a3], &l1, &l2).sub(&assoc)
    }));
    rep.merge(check_identity("2-t7", &[r0, r0, r1], |x| {
        let (a1, a2) = (unit(r0, x[0], 2), unit(r0, x[1], 2));
        let b = unit(r1, x[2], 2);
        let assoc = t
            .p01(&t.p00(&a1, &a2, &l1), &b, &l12)
            .sub(&t.p01(&a1, &t.p01(&a2, &b, &l2), &l1));
        t.p3([&a1, &a2, &fd.on(&b)], &l1, &l2).sub(&assoc)
    }));

    let ls = lambdas(3, 3);
    let (k1, k2, k3) = (&ls[0], &ls[1], &ls[2]);
    let k12 = k1 + k2;
    let k23 = k2 + k3;
    let k123 = &k12 + k3;
    rep.merge(check_identity("2-t8", &[r0, r0, r0, r0], |x| {
        let [a1, a2, a3, a4] = [x[0], x[1], x[2], x[3]].map(|i| unit(r0, i, 3));
        let lhs = t
            .p10(&t.p3([&a1, &a2, &a3], k1, k2), &a4, &k123)
            .add(&t.p01(&a1, &t.p3([&a2, &a3, &a4], k2, k3), k1));
        let rhs = t
            .p3([&t.p00(&a1, &a2, k1), &a3, &a4], &k12, k3)
            .sub(&t.p3([&a1, &t.p00(&a2, &a3, k2), &a4], k1, &k23))
            .add(&t.p3([&a1, &a2, &t.p00(&a3, &a4, k3)], k1, k2));
        lhs.sub(&rhs)
    }));
    rep
}

/// `(A₀, A₁, m³)` of a skeletal structure.
pub fn skeletal_to_cocycle(
    t: &TwoTermSHAC,
) -> Result<(ConformalAlgebra, Bimodule, Cochain), HomotopyError> {
    if !t.is_skeletal() {
        return Err(HomotopyError::NotSkeletal);
    }
    let a = ConformalAlgebra::from_mult(t.a0.clone(), t.m00.clone());
    let m = Bimodule::from_maps(a.clone(), t.a1.clone(), t.m01.clone(), t.m10.clone());
    Ok((a, m, t.m3.clone()))
}

/// The skeletal structure `M →0 A` with `m³ = ζ`.
pub fn cocycle_to_skeletal(m: &Bimodule, zeta: &Cochain) -> Result<TwoTermSHAC, HomotopyError> {
    if zeta.degree() != 3 || check_shape(m, zeta).is_err() {
        return Err(HomotopyError::ShapeMismatch);
    }
    if !is_cocycle(m, zeta).0 {
        return Err(HomotopyError::NotACocycle);
    }
    let a = m.algebra();
    TwoTermSHAC::new(
        m.carrier().clone(),
        a.carrier().clone(),
        CdLinearMap::zero(a.rank(), m.rank()),
        a.mult().clone(),
        m.left().clone(),
        m.right().clone(),
        zeta.clone(),
    )
}

/// `m'³ = m³ + d₂σ` between two skeletal structures with the same `m²`:
/// labels `same-product`, `skeletal` and `equivalence`.
pub fn check_skeletal_equivalence(
    t: &TwoTermSHAC,
    t2: &TwoTermSHAC,
    sigma: &Cochain,
) -> CheckReport {
    let (Ok((_, m, z)), Ok((_, m2, z2))) = (skeletal_to_cocycle(t), skeletal_to_cocycle(t2)) else {
        return CheckReport::fail("skeletal", vec![], unit(1, 0, 0));
    };
    if m != m2 || t.a0 != t2.a0 || t.a1 != t2.a1 {
        return CheckReport::fail("same-product", vec![], unit(1, 0, 0));
    }
    let r0 = t.a0.rank();
    let ds = differential(&m, sigma);
    check_identity("equivalence", &[r0, r0, r0], |x| {
        z2.get(x).sub(z.get(x)).sub(ds.get(x))
    })
}

/// `(f⁰, f¹, f²)` with `f²: A₀ × A₀ → A'₁` of arity 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermMorphism {
    pub f0: CdLinearMap,
    pub f1: CdLinearMap,
    pub f2: SesqMap,
}

/// `(id, id, 0)`.
pub fn identity_morphism(t: &TwoTermSHAC) -> TwoTermMorphism {
    let (r0, r1) = (t.a0.rank(), t.a1.rank());
    TwoTermMorphism {
        f0: CdLinearMap::identity(r0),
        f1: CdLinearMap::identity(r1),
        f2: SesqMap::zero(vec![r0, r0], r1),
    }
}

/// `(g∘f)² = g²(f⁰·, f⁰·) + g¹ f²`.
pub fn compose_morphisms(g: &TwoTermMorphism, f: &TwoTermMorphism) -> TwoTermMorphism {
    let r0 = f.f0.cols();
    let l = Poly::lambda(1, 1);
    let f2 = SesqMap::from_fn(vec![r0, r0], g.f1.rows(), |x| {
        let (a1, a2) = (f.f0.column(x[0]).with_arity(1), f.f0.column(x[1]).with_arity(1));
        g.f2.eval(&[a1, a2], std::slice::from_ref(&l))
            .add(&g.f1.on(f.f2.get(x)))
    });
    TwoTermMorphism {
        f0: f.f0.then(&g.f0),
        f1: f.f1.then(&g.f1),
        f2,
    }
}

/// The chain-map condition (`chain`) and the four morphism identities
/// (`mor1` … `mor4`).
///
/// `mor4` reads `f²(m²(a₁,a₂),a₃) − f²(a₁,m²(a₂,a₃)) − m'²(f⁰a₁, f²(a₂,a₃))
/// = f¹m³ − m'³(f⁰a₁,f⁰a₂,f⁰a₃) − m'²(f²(a₁,a₂), f⁰a₃)`. With `+` on both
/// action terms, `fd'` of the identity contradicts `mor1` and 2-t4. In this
/// form `(id, id, σ)` is the skeletal equivalence `m'³ = m³ + d₂σ`.
///
/// Panics when the shapes do not fit `source → target`.
pub fn check_morphism(m: &TwoTermMorphism, s: &TwoTermSHAC, t: &TwoTermSHAC) -> CheckReport {
    let (r0, r1) = (s.a0.rank(), s.a1.rank());
    let (q0, q1) = (t.a0.rank(), t.a1.rank());
    assert_eq!((m.f0.rows(), m.f0.cols()), (q0, r0), "f0 shape");
    assert_eq!((m.f1.rows(), m.f1.cols()), (q1, r1), "f1 shape");
    assert_eq!((m.f2.slots(), m.f2.target()), (&[r0, r0][..], q1), "f2 shape");
    let (f0, f1) = (&m.f0, &m.f1);
    let f2 = |x: &ModElement, y: &ModElement, nu: &Poly| {
        m.f2.eval(&[x.clone(), y.clone()], std::slice::from_ref(nu))
    };
    let mut rep = check_identity("chain", &[r1], |x| {
        let b = unit(r1, x[0], 0);
        t.fd.on(&f1.on(&b)).sub(&f0.on(&s.fd.on(&b)))
    });
    let l = Poly::lambda(1, 1);
    rep.merge(check_identity("mor1", &[r0, r0], |x| {
        let (a1, a2) = (unit(r0, x[0], 1), unit(r0, x[1], 1));
        t.fd.on(&f2(&a1, &a2, &l))
            .sub(&f0.on(&s.p00(&a1, &a2, &l)))
            .add(&t.p00(&f0.on(&a1), &f0.on(&a2), &l))
    }));
    rep.merge(check_identity("mor2", &[r0, r1], |x| {
        let (a, b) = (unit(r0, x[0], 1), unit(r1, x[1], 1));
        f2(&a, &s.fd.on(&b), &l)
            .sub(&f1.on(&s.p01(&a, &b, &l)))
            .add(&t.p01(&f0.on(&a), &f1.on(&b), &l))
    }));
    rep.merge(check_identity("mor3", &[r1, r0], |x| {
        let (b, a) = (unit(r1, x[0], 1), unit(r0, x[1], 1));
        f2(&s.fd.on(&b), &a, &l)
            .sub(&f1.on(&s.p10(&b, &a, &l)))
            .add(&t.p10(&f1.on(&b), &f0.on(&a), &l))
    }));
    let (l1, l2) = (Poly::lambda(2, 1), Poly::lambda(2, 2));
    let l12 = &l1 + &l2;
    rep.merge(check_identity("mor4", &[r0, r0, r0], |x| {
        let [a1, a2, a3] = [x[0], x[1], x[2]].map(|i| unit(r0, i, 2));
        let [b1, b2, b3] = [&a1, &a2, &a3].map(|a| f0.on(a));
        let lhs = f2(&s.p00(&a1, &a2, &l1), &a3, &l12)
            .sub(&f2(&a1, &s.p00(&a2, &a3, &l2), &l1))
            .sub(&t.p01(&b1, &f2(&a2, &a3, &l2), &l1));
        let rhs = f1
            .on(&s.p3([&a1, &a2, &a3], &l1, &l2))
            .sub(&t.p3([&b1, &b2, &b3], &l1, &l2))
            .sub(&t.p10(&f2(&a1, &a2, &l1), &b3, &l12));
        lhs.sub(&rhs)
    }));
    rep
}

/// The strict structure `M₁ → A ⊕ M₀` of an `A`-bimodule map `f: M₁ → M₀`:
/// `m²((a,u),(b,v)) = (ab, a▷v + u◁b)`, `m²((a,u), w) = a▷w`,
/// `m²(w, (a,u)) = w◁a`, `fd(w) = (0, f(w))`, `m³ = 0`.
pub fn shac_of_bimodule_map(
    m1: &Bimodule,
    m0: &Bimodule,
    f: &CdLinearMap,
) -> Result<TwoTermSHAC, HomotopyError> {
    let a = m1.algebra();
    let (ra, r1, r0) = (a.rank(), m1.rank(), m0.rank());
    if m0.algebra() != a || (f.rows(), f.cols()) != (r0, r1) {
        return Err(HomotopyError::ShapeMismatch);
    }
    let n = ra + r0;
    let za = || ModElement::zero(ra, 1);
    let m00 = SesqMap::from_fn(vec![n, n], n, |t| match (t[0] < ra, t[1] < ra) {
        (true, true) => a.mult().get(t).concat(&ModElement::zero(r0, 1)),
        (true, false) => za().concat(m0.left().get(&[t[0], t[1] - ra])),
        (false, true) => za().concat(m0.right().get(&[t[0] - ra, t[1]])),
        (false, false) => ModElement::zero(n, 1),
    });
    let m01 = SesqMap::from_fn(vec![n, r1], r1, |t| {
        if t[0] < ra {
            m1.left().get(t).clone()
        } else {
            ModElement::zero(r1, 1)
        }
    });
    let m10 = SesqMap::from_fn(vec![r1, n], r1, |t| {
        if t[1] < ra {
            m1.right().get(t).clone()
        } else {
            ModElement::zero(r1, 1)
        }
    });
    let fd = CdLinearMap::block(
        &CdLinearMap::zero(ra, 0),
        &CdLinearMap::zero(ra, r1),
        &CdLinearMap::zero(r0, 0),
        f,
    );
    TwoTermSHAC::new(
        m1.carrier().clone(),
        a.carrier().direct_sum(m0.carrier()),
        fd,
        m00,
        m01,
        m10,
        SesqMap::zero(vec![n; 3], r1),
    )
}
