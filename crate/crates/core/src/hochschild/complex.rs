use crate::cdmod::{solve_over_kd, CdLinearMap, ModElement};
use crate::conformal::{lambdas, unit, Bimodule, SesqMap};
use crate::symexpr::Poly;

use super::{Cochain, HochschildError};

/// Check that `phi` is shaped as a cochain of `m` (degree inferred).
pub fn check_shape(m: &Bimodule, phi: &Cochain) -> Result<(), HochschildError> {
    let ra = m.algebra().rank();
    if phi.target() != m.rank() || phi.slots().iter().any(|&s| s != ra) {
        return Err(HochschildError::ShapeMismatch);
    }
    Ok(())
}

/// `φ_{λ₁,…,λₙ₋₁}(a₁, …, aₙ)` at formal λ's. Arguments of arity below `n − 1`
/// are lifted.
pub fn evaluate(phi: &Cochain, args: &[ModElement]) -> Result<ModElement, HochschildError> {
    let n = phi.degree();
    if args.len() != n {
        return Err(HochschildError::DegreeMismatch {
            expected: n,
            found: args.len(),
        });
    }
    if n == 0 {
        return Ok(phi.values()[0].clone());
    }
    let ctx = args.iter().map(ModElement::arity).max().unwrap().max(n - 1);
    let args: Vec<ModElement> = args.iter().map(|a| a.with_arity(ctx)).collect();
    Ok(phi.eval(&args, &lambdas(ctx, n - 1)))
}

/// The degree-0 cochain represented by `v ∈ M`.
pub fn zero_cochain(v: &ModElement) -> Cochain {
    SesqMap::constant(v.with_arity(0))
}

/// `dₙ φ`.
pub fn differential(m: &Bimodule, phi: &Cochain) -> Cochain {
    check_shape(m, phi).expect("cochain shape");
    let alg = m.algebra();
    let (ra, rm) = (alg.rank(), m.rank());
    let n = phi.degree();
    if n == 0 {
        let v = phi.values()[0].with_arity(1);
        let l = Poly::lambda(1, 1);
        let shifted = -&(&l + &Poly::partial(1));
        return SesqMap::from_fn(vec![ra], rm, |t| {
            let a = unit(ra, t[0], 1);
            m.act_left(&a, &v, &shifted)
                .sub(&m.act_right(&v, &a, &l))
                .subst_lambdas(&[Poly::zero(0)], 0)
        });
    }
    SesqMap::from_fn(vec![ra; n + 1], rm, |t| {
        let ls = lambdas(n, n);
        let a: Vec<ModElement> = t.iter().map(|&i| unit(ra, i, n)).collect();
        let mut out = m.act_left(&a[0], &phi.eval(&a[1..], &ls[1..]), &ls[0]);
        for i in 1..=n {
            let prod = alg.product(&a[i - 1], &a[i], &ls[i - 1]);
            let mut args: Vec<ModElement> = a[..i - 1].to_vec();
            args.push(prod);
            args.extend_from_slice(&a[i + 1..]);
            let mut subs: Vec<Poly> = ls[..i - 1].to_vec();
            subs.push(&ls[i - 1] + &ls.get(i).cloned().unwrap_or_else(|| Poly::zero(n)));
            subs.extend_from_slice(&ls[(i + 1).min(n)..]);
            subs.truncate(n - 1);
            let term = phi.eval(&args, &subs);
            if i % 2 == 0 {
                out.add_assign(&term);
            } else {
                out.sub_assign(&term);
            }
        }
        let total = Poly::lambda_sum(n, 1..=n);
        let last = m.act_right(&phi.eval(&a[..n], &ls[..n - 1]), &a[n], &total);
        if (n + 1).is_multiple_of(2) {
            out.add_assign(&last);
        } else {
            out.sub_assign(&last);
        }
        out
    })
}

/// `dφ = 0`, with the first nonzero basis-tuple value as witness otherwise.
pub fn is_cocycle(m: &Bimodule, phi: &Cochain) -> (bool, Option<(Vec<usize>, ModElement)>) {
    let w = differential(m, phi).first_nonzero();
    (w.is_none(), w)
}

/// Degree-0 equality: `v − w ∈ ∂M`.
pub fn equal_mod_partial(v: &ModElement, w: &ModElement) -> bool {
    let diff = v.sub(w).with_arity(0);
    let d = CdLinearMap::scalar_poly(diff.rank(), &Poly::partial(0));
    solve_over_kd(&d, &diff).is_some()
}

/// Equality of cochains, modulo `∂M` in degree 0.
pub fn cochains_equal(a: &Cochain, b: &Cochain) -> bool {
    if a.degree() == 0 && b.degree() == 0 {
        return equal_mod_partial(&a.values()[0], &b.values()[0]);
    }
    a == b
}

/// The inner derivation `f_v(a) = a ▷_{−∂} v − v ◁_0 a`.
pub fn inner_derivation(m: &Bimodule, v: &ModElement) -> Cochain {
    let ra = m.algebra().rank();
    let v = v.with_arity(0);
    SesqMap::from_fn(vec![ra], m.rank(), |t| {
        let a = unit(ra, t[0], 0);
        m.act_left(&a, &v, &-Poly::partial(0))
            .sub(&m.act_right(&v, &a, &Poly::zero(0)))
    })
}

/// The degree-1 cochain of a k[∂]-linear map `A → M`.
pub fn map_cochain(f: &CdLinearMap) -> Cochain {
    SesqMap::from_fn(vec![f.cols()], f.rows(), |t| f.column(t[0]))
}

/// The k[∂]-linear map of a degree-1 cochain.
pub fn cochain_map(phi: &Cochain) -> CdLinearMap {
    assert_eq!(phi.degree(), 1);
    CdLinearMap::from_columns(phi.values(), phi.target())
}
