use crate::conformal::{lambdas, unit, SesqMap};
use crate::report::{CheckReport, Failure};
use crate::symexpr::{scalar, Poly};

use super::{Cochain, HochschildError};

fn self_valued_rank(f: &Cochain) -> Result<usize, HochschildError> {
    let r = f.target();
    if f.degree() == 0 || f.slots().iter().any(|&s| s != r) {
        return Err(HochschildError::ShapeMismatch);
    }
    Ok(r)
}

/// `f •ᵢ g`: insert `g` into slot `i` (0-based) of `f`.
pub fn circ_i(f: &Cochain, g: &Cochain, i: usize) -> Result<Cochain, HochschildError> {
    let r = self_valued_rank(f)?;
    if self_valued_rank(g)? != r {
        return Err(HochschildError::ShapeMismatch);
    }
    let (m, n) = (f.degree(), g.degree());
    if i >= m {
        return Err(HochschildError::SlotOutOfRange { slot: i, degree: m });
    }
    let k = m + n - 2;
    Ok(SesqMap::from_fn(vec![r; m + n - 1], r, |t| {
        let ls = lambdas(k, k);
        let a: Vec<_> = t.iter().map(|&j| unit(r, j, k)).collect();
        let inner = g.eval(&a[i..i + n], &ls[i..i + n - 1]);
        let mut args = a[..i].to_vec();
        args.push(inner);
        args.extend_from_slice(&a[i + n..]);
        let mut subs = ls[..i].to_vec();
        if i + 1 < m {
            subs.push(Poly::lambda_sum(k, i + 1..=i + n));
            subs.extend_from_slice(&ls[i + n..]);
        }
        f.eval(&args, &subs)
    }))
}

/// `f • g = Σᵢ (−1)^{(n−1)i} f •ᵢ g`.
pub fn gerstenhaber_product(f: &Cochain, g: &Cochain) -> Result<Cochain, HochschildError> {
    let (m, n) = (f.degree(), g.degree());
    let mut acc: Option<Cochain> = None;
    for i in 0..m {
        let term = circ_i(f, g, i)?;
        let term = if (n - 1) * i % 2 == 1 { term.neg() } else { term };
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    acc.ok_or(HochschildError::ShapeMismatch)
}

/// `[f, g] = f • g − (−1)^{(m−1)(n−1)} g • f`.
pub fn gbracket(f: &Cochain, g: &Cochain) -> Result<Cochain, HochschildError> {
    let (m, n) = (f.degree(), g.degree());
    let fg = gerstenhaber_product(f, g)?;
    let gf = gerstenhaber_product(g, f)?;
    Ok(if (m - 1) * (n - 1) % 2 == 0 {
        fg.sub(&gf)
    } else {
        fg.add(&gf)
    })
}

/// Nonzero values of a cochain as failures of `identity`.
pub fn report_nonzero(identity: &str, c: &Cochain) -> CheckReport {
    CheckReport {
        failures: c
            .tuples()
            .into_iter()
            .zip(c.values())
            .filter(|(_, v)| !v.is_zero())
            .map(|(tuple, v)| Failure {
                identity: identity.to_string(),
                tuple,
                difference: v.clone(),
            })
            .collect(),
    }
}

fn sign(k: usize) -> crate::symexpr::Scalar {
    scalar(if k.is_multiple_of(2) { 1 } else { -1 })
}

/// Graded antisymmetry, graded Jacobi and the graded Leibniz rule of
/// `d̄ = [𝔪, −]` on a triple, in the shifted grading `|f| = deg f − 1`.
pub fn dgla_axiom_check(
    mult: &Cochain,
    f: &Cochain,
    g: &Cochain,
    h: &Cochain,
) -> Result<CheckReport, HochschildError> {
    let (df, dg, dh) = (f.degree() - 1, g.degree() - 1, h.degree() - 1);
    let mut rep = CheckReport::pass();

    let fg = gbracket(f, g)?;
    let gf = gbracket(g, f)?;
    rep.merge(report_nonzero("antisymmetry", &fg.add(&gf.scale(&sign(df * dg)))));

    let j1 = gbracket(f, &gbracket(g, h)?)?.scale(&sign(df * dh));
    let j2 = gbracket(g, &gbracket(h, f)?)?.scale(&sign(dg * df));
    let j3 = gbracket(h, &fg)?.scale(&sign(dh * dg));
    rep.merge(report_nonzero("jacobi", &j1.add(&j2).add(&j3)));

    let dbar = |x: &Cochain| gbracket(mult, x);
    let lhs = dbar(&fg)?;
    let rhs = gbracket(&dbar(f)?, g)?.add(&gbracket(f, &dbar(g)?)?.scale(&sign(df)));
    rep.merge(report_nonzero("leibniz", &lhs.sub(&rhs)));
    Ok(rep)
}
