use crate::cdmod::{CdLinearMap, ModElement, PolyEquations, UnknownMap};
use crate::conformal::{unit, SesqMap};
use crate::groebner::{decide, Decision, PolySystem};
use crate::hochschild::report_nonzero;
use crate::report::CheckReport;
use crate::symexpr::{Poly, Scalar};
use crate::witness;

use super::{NonAbelianCocycle, NonAbelianError};

/// A k[∂]-linear `δ: B → A` relating two cocycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub delta: CdLinearMap,
}

fn check_delta(c: &NonAbelianCocycle, delta: &CdLinearMap) -> Result<(), NonAbelianError> {
    if (delta.rows(), delta.cols()) != (c.a().rank(), c.b().rank()) {
        return Err(NonAbelianError::ShapeMismatch);
    }
    Ok(())
}

/// `(coh6, coh7, coh8)` as LHS − RHS with `c` unbarred and `cbar` barred.
pub fn equivalence_residuals(
    c: &NonAbelianCocycle,
    cbar: &NonAbelianCocycle,
    delta: &CdLinearMap,
) -> [SesqMap; 3] {
    let (ra, rb) = (c.a().rank(), c.b().rank());
    let l = Poly::lambda(1, 1);
    let a = c.a();
    let d = |i: usize| delta.on(&unit(rb, i, 1));
    let coh6 = SesqMap::from_fn(vec![rb, ra], ra, |t| {
        let (b, x) = (unit(rb, t[0], 1), unit(ra, t[1], 1));
        cbar.act_left(&b, &x, &l)
            .sub(&c.act_left(&b, &x, &l))
            .sub(&a.product(&d(t[0]), &x, &l))
    });
    let coh7 = SesqMap::from_fn(vec![ra, rb], ra, |t| {
        let (x, b) = (unit(ra, t[0], 1), unit(rb, t[1], 1));
        cbar.act_right(&x, &b, &l)
            .sub(&c.act_right(&x, &b, &l))
            .sub(&a.product(&x, &d(t[1]), &l))
    });
    let coh8 = SesqMap::from_fn(vec![rb, rb], ra, |t| {
        let (b1, b2) = (unit(rb, t[0], 1), unit(rb, t[1], 1));
        let (d1, d2) = (d(t[0]), d(t[1]));
        let rhs = cbar
            .act_left(&b1, &d2, &l)
            .sub(&delta.on(&c.b().product(&b1, &b2, &l)))
            .add(&cbar.act_right(&d1, &b2, &l))
            .sub(&a.product(&d1, &d2, &l));
        cbar.chi_at(&b1, &b2, &l).sub(&c.chi_at(&b1, &b2, &l)).sub(&rhs)
    });
    [coh6, coh7, coh8]
}

/// Verify `coh6`–`coh8` for `c ≈ cbar` via `w`.
pub fn check_equivalence_witness(
    c: &NonAbelianCocycle,
    cbar: &NonAbelianCocycle,
    w: &EquivalenceWitness,
) -> Result<CheckReport, NonAbelianError> {
    if !c.same_pair(cbar) {
        return Err(NonAbelianError::ShapeMismatch);
    }
    check_delta(c, &w.delta)?;
    let [r6, r7, r8] = equivalence_residuals(c, cbar, &w.delta);
    let mut rep = report_nonzero("coh6", &r6);
    rep.merge(report_nonzero("coh7", &r7));
    rep.merge(report_nonzero("coh8", &r8));
    Ok(rep)
}

/// The unique cocycle `c` with `c ≈ cbar` via `δ`:
/// `▷ = ▷̄ − δ(b)∘a`, `◁ = ◁̄ − a∘δ(b)` and
/// `χ = χ̄ − b₁▷̄δ(b₂) + δ(b₁∘b₂) − δ(b₁)◁̄b₂ + δ(b₁)∘δ(b₂)`.
pub fn equivalence_transform(
    cbar: &NonAbelianCocycle,
    delta: &CdLinearMap,
) -> Result<NonAbelianCocycle, NonAbelianError> {
    check_delta(cbar, delta)?;
    let (ra, rb) = (cbar.a().rank(), cbar.b().rank());
    let l = Poly::lambda(1, 1);
    let a = cbar.a();
    let d = |i: usize| delta.on(&unit(rb, i, 1));
    let left = SesqMap::from_fn(vec![rb, ra], ra, |t| {
        let x = unit(ra, t[1], 1);
        cbar.act_left(&unit(rb, t[0], 1), &x, &l)
            .sub(&a.product(&d(t[0]), &x, &l))
    });
    let right = SesqMap::from_fn(vec![ra, rb], ra, |t| {
        let x = unit(ra, t[0], 1);
        cbar.act_right(&x, &unit(rb, t[1], 1), &l)
            .sub(&a.product(&x, &d(t[1]), &l))
    });
    let chi = SesqMap::from_fn(vec![rb, rb], ra, |t| {
        let (b1, b2) = (unit(rb, t[0], 1), unit(rb, t[1], 1));
        let (d1, d2) = (d(t[0]), d(t[1]));
        cbar.chi_at(&b1, &b2, &l)
            .sub(&cbar.act_left(&b1, &d2, &l))
            .add(&delta.on(&cbar.b().product(&b1, &b2, &l)))
            .sub(&cbar.act_right(&d1, &b2, &l))
            .add(&a.product(&d1, &d2, &l))
    });
    NonAbelianCocycle::new_unchecked(cbar.a().clone(), cbar.b().clone(), left, right, chi)
}

fn flatten(maps: &[SesqMap]) -> Vec<Poly> {
    maps.iter()
        .flat_map(|m| m.values().iter().flat_map(|v| v.coeffs().iter().cloned()))
        .collect()
}

fn coordinate_free(v: &ModElement, j: usize) -> bool {
    v.coeff(j).is_zero()
}

/// A residual coordinate that is nonzero at `δ = 0` and into which no choice
/// of `δ` can feed: this certifies that no witness exists in any degree.
fn certified_obstruction(c: &NonAbelianCocycle, cbar: &NonAbelianCocycle) -> Option<(&'static str, Vec<usize>)> {
    let (ra, rb) = (c.a().rank(), c.b().rank());
    let l = Poly::lambda(1, 1);
    let a = c.a();
    let ua = |i: usize| unit(ra, i, 1);
    let ub = |i: usize| unit(rb, i, 1);
    let zero = CdLinearMap::zero(ra, rb);
    let [r6, r7, r8] = equivalence_residuals(c, cbar, &zero);
    for t in r6.tuples() {
        let v = r6.get(&t);
        for j in 0..ra {
            if !v.coeff(j).is_zero()
                && (0..ra).all(|k| coordinate_free(&a.product(&ua(k), &ua(t[1]), &l), j))
            {
                return Some(("coh6", t));
            }
        }
    }
    for t in r7.tuples() {
        let v = r7.get(&t);
        for j in 0..ra {
            if !v.coeff(j).is_zero()
                && (0..ra).all(|k| coordinate_free(&a.product(&ua(t[0]), &ua(k), &l), j))
            {
                return Some(("coh7", t));
            }
        }
    }
    for t in r8.tuples() {
        let v = r8.get(&t);
        let bb = c.b().product(&ub(t[0]), &ub(t[1]), &l);
        for j in 0..ra {
            if v.coeff(j).is_zero() || !bb.is_zero() {
                continue;
            }
            let free = (0..ra).all(|k| {
                coordinate_free(&cbar.act_left(&ub(t[0]), &ua(k), &l), j)
                    && coordinate_free(&cbar.act_right(&ua(k), &ub(t[1]), &l), j)
                    && (0..ra).all(|m| coordinate_free(&a.product(&ua(k), &ua(m), &l), j))
            });
            if free {
                return Some(("coh8", t));
            }
        }
    }
    None
}

/// Search for `δ` of ∂-degree at most `degree` with `c1 ≈ c2` via `δ`.
///
/// `Ok(None)` means some residual coordinate is nonzero and independent of `δ`,
/// so the cocycles are inequivalent. The affine part (`coh6`, `coh7`) is solved
/// exactly; the remaining parameters enter `coh8` quadratically and go to
/// [`decide`] unless the system is affine.
pub fn solve_equivalence(
    c1: &NonAbelianCocycle,
    c2: &NonAbelianCocycle,
    degree: u32,
) -> Result<Option<EquivalenceWitness>, NonAbelianError> {
    if !c1.same_pair(c2) {
        return Err(NonAbelianError::ShapeMismatch);
    }
    if certified_obstruction(c1, c2).is_some() {
        return Ok(None);
    }
    let undecided = NonAbelianError::UndecidedWithinBounds { degree };
    let unknown = UnknownMap {
        rows: c1.a().rank(),
        cols: c1.b().rank(),
        degree,
    };
    let n = unknown.n_scalars();
    let affine = PolyEquations::affine_from_fn(n, |u| {
        let [r6, r7, _] = equivalence_residuals(c1, c2, &unknown.to_map(u));
        flatten(&[r6, r7])
    })
    .expect("coh6 and coh7 are affine in δ");
    let Some(base) = affine.affine_solutions().expect("affine") else {
        return Err(undecided);
    };
    let k = base.nullspace.len();
    let point = |t: &[Scalar]| -> Vec<Scalar> {
        let mut u = base.particular.clone();
        for (tj, v) in t.iter().zip(&base.nullspace) {
            for (x, y) in u.iter_mut().zip(v) {
                *x += tj * y;
            }
        }
        u
    };
    let quad = PolyEquations::quadratic_from_fn(k, |t| {
        let [_, _, r8] = equivalence_residuals(c1, c2, &unknown.to_map(&point(t)));
        flatten(&[r8])
    });
    let t = if quad.is_affine() {
        match quad.affine_solutions().expect("affine") {
            Some(s) => s.particular,
            None => return Err(undecided),
        }
    } else {
        let sys = PolySystem::from_scalar_equations(k, &quad.coefficient_match());
        match decide(&sys) {
            Decision::RationalWitness(t) => t,
            Decision::InconsistentOverClosure => return Err(undecided),
            Decision::SolvableNoRationalWitness => return Err(NonAbelianError::NoRationalWitness),
        }
    };
    let w = EquivalenceWitness {
        delta: unknown.to_map(&point(&t)),
    };
    let ok = check_equivalence_witness(c1, c2, &w)?.passed();
    if !witness::record(ok) {
        return Err(NonAbelianError::VerificationFailed);
    }
    Ok(Some(w))
}

/// Public form of the obstruction test used by [`solve_equivalence`]: the
/// violated identity and basis tuple, if any.
pub fn equivalence_obstruction(
    c1: &NonAbelianCocycle,
    c2: &NonAbelianCocycle,
) -> Option<(&'static str, Vec<usize>)> {
    certified_obstruction(c1, c2)
}
