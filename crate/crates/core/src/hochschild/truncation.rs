use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;

use crate::cdmod::{linalg, ModElement};
use crate::conformal::{Bimodule, SesqMap};
use crate::symexpr::{Poly, Scalar};
use crate::witness;

use super::{differential, is_cocycle, Cochain, HochschildError};

/// Degree bounds for cochain values: every monomial `∂^a λ^β` has `a ≤ ddeg`
/// and `|β| ≤ ldeg`. Degree-0 cochains use constant representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub ddeg: u32,
    pub ldeg: u32,
}

impl Truncation {
    pub fn new(ddeg: u32, ldeg: u32) -> Self {
        Truncation { ddeg, ldeg }
    }

    /// The bounds after one escalation step.
    pub fn escalated(&self) -> Self {
        Truncation {
            ddeg: 2 * self.ddeg.max(1),
            ldeg: 2 * self.ldeg.max(1),
        }
    }

    /// Exponent vectors `[a, β₁, …, β_k]` within the bounds, in a fixed order.
    pub fn monomials(&self, nlambda: usize) -> Vec<Vec<u32>> {
        let mut betas = vec![vec![]];
        for _ in 0..nlambda {
            let mut next = Vec::new();
            for b in &betas {
                let used: u32 = b.iter().sum();
                for e in 0..=self.ldeg - used {
                    let mut c = b.clone();
                    c.push(e);
                    next.push(c);
                }
            }
            betas = next;
        }
        let mut out = Vec::new();
        for a in 0..=self.ddeg {
            for b in &betas {
                let mut e = vec![a];
                e.extend_from_slice(b);
                out.push(e);
            }
        }
        out
    }

    /// A ℚ-basis of the bounded degree-`n` cochains of `m`.
    pub fn cochain_basis(&self, m: &Bimodule, n: usize) -> Vec<Cochain> {
        let (ra, rm) = (m.algebra().rank(), m.rank());
        if n == 0 {
            return (0..rm)
                .map(|k| SesqMap::constant(ModElement::basis(rm, k, 0)))
                .collect();
        }
        let arity = n - 1;
        let monos = self.monomials(arity);
        let template = SesqMap::zero(vec![ra; n], rm);
        let mut out = Vec::new();
        for t in template.tuples() {
            for k in 0..rm {
                for e in &monos {
                    let mut c = template.clone();
                    let mut v = ModElement::zero(rm, arity);
                    v.set(k, Poly::monomial(arity, e.clone(), Scalar::one()));
                    c.set(&t, v);
                    out.push(c);
                }
            }
        }
        out
    }
}

type Key = (usize, usize, Vec<u32>);

/// Flatten a cochain to its nonzero rational coordinates.
pub fn coordinates(c: &Cochain) -> BTreeMap<Key, Scalar> {
    let mut out = BTreeMap::new();
    for (vi, v) in c.values().iter().enumerate() {
        for (k, p) in v.coeffs().iter().enumerate() {
            for (mono, s) in p.terms() {
                out.insert((vi, k, mono.exps().to_vec()), s.clone());
            }
        }
    }
    out
}

/// Dense rows over a shared coordinate index.
fn dense(vectors: &[BTreeMap<Key, Scalar>]) -> (Vec<Vec<Scalar>>, usize) {
    let mut index: BTreeMap<&Key, usize> = BTreeMap::new();
    for v in vectors {
        for k in v.keys() {
            let n = index.len();
            index.entry(k).or_insert(n);
        }
    }
    let ncols = index.len();
    let rows = vectors
        .iter()
        .map(|v| {
            let mut row = vec![Scalar::zero(); ncols];
            for (k, s) in v {
                row[index[k]] = s.clone();
            }
            row
        })
        .collect();
    (rows, ncols)
}

fn rank_of(vectors: &[BTreeMap<Key, Scalar>]) -> usize {
    let (rows, ncols) = dense(vectors);
    linalg::rank(&rows, ncols)
}

/// Dimensions of the truncated spaces in degree `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncatedCohomology {
    /// `dim Cⁿ_t`.
    pub cochains: usize,
    /// `dim Zⁿ_t = dim ker(dₙ on Cⁿ_t)`.
    pub cocycles: usize,
    /// `dim dₙ₋₁(Cⁿ⁻¹_t)`.
    pub coboundaries: usize,
    /// `dim (dₙ₋₁(Cⁿ⁻¹_t) ∩ Cⁿ_t)`.
    pub coboundaries_in_bounds: usize,
    /// `cocycles − coboundaries_in_bounds`.
    pub quotient: usize,
}

/// Exact ℚ-dimensions of the truncated cocycle and coboundary spaces. This is
/// a finite approximation of `Hⁿ`, not `Hⁿ` itself.
pub fn truncated_cohomology_dim(m: &Bimodule, n: usize, t: Truncation) -> TruncatedCohomology {
    let basis = t.cochain_basis(m, n);
    let images: Vec<_> = basis.iter().map(|c| coordinates(&differential(m, c))).collect();
    let cochains = basis.len();
    let cocycles = cochains - rank_of(&images);
    let (coboundaries, coboundaries_in_bounds) = if n == 0 {
        (0, 0)
    } else {
        let prev: Vec<_> = t
            .cochain_basis(m, n - 1)
            .iter()
            .map(|c| coordinates(&differential(m, c)))
            .collect();
        let b = rank_of(&prev);
        let own: Vec<_> = basis.iter().map(coordinates).collect();
        let mut both = prev;
        both.extend(own);
        let sum = rank_of(&both);
        (b, b + cochains - sum)
    };
    TruncatedCohomology {
        cochains,
        cocycles,
        coboundaries,
        coboundaries_in_bounds,
        quotient: cocycles - coboundaries_in_bounds,
    }
}

/// Find `ψ` within the bounds with `dψ = φ`; the result is re-verified.
pub fn solve_coboundary(
    m: &Bimodule,
    phi: &Cochain,
    t: Truncation,
) -> Result<Cochain, HochschildError> {
    super::complex::check_shape(m, phi)?;
    let n = phi.degree();
    if n == 0 {
        return Err(HochschildError::DegreeMismatch {
            expected: 1,
            found: 0,
        });
    }
    if !is_cocycle(m, phi).0 {
        return Err(HochschildError::NotACocycle);
    }
    let basis = t.cochain_basis(m, n - 1);
    let images: Vec<_> = basis.iter().map(|c| coordinates(&differential(m, c))).collect();
    let target = coordinates(phi);
    let mut all = images.clone();
    all.push(target);
    let (rows, ncols) = dense(&all);
    // Columns of the system are the basis images; rows are coordinates.
    let a: Vec<Vec<Scalar>> = (0..ncols)
        .map(|j| (0..basis.len()).map(|i| rows[i][j].clone()).collect())
        .collect();
    let b: Vec<Scalar> = (0..ncols).map(|j| rows[basis.len()][j].clone()).collect();
    let Some(sol) = linalg::solve(&a, &b, basis.len()) else {
        return Err(HochschildError::UndecidedWithinBounds {
            ddeg: t.ddeg,
            ldeg: t.ldeg,
        });
    };
    let mut psi = SesqMap::zero(vec![m.algebra().rank(); n - 1], m.rank());
    for (c, s) in basis.iter().zip(&sol.particular) {
        if !s.is_zero() {
            psi = psi.add(&c.scale(s));
        }
    }
    if !witness::record(&differential(m, &psi) == phi) {
        return Err(HochschildError::VerificationFailed);
    }
    Ok(psi)
}

/// [`solve_coboundary`] at `t`, then once more at `t.escalated()`.
pub fn solve_coboundary_escalating(
    m: &Bimodule,
    phi: &Cochain,
    t: Truncation,
) -> Result<Cochain, HochschildError> {
    match solve_coboundary(m, phi, t) {
        Err(HochschildError::UndecidedWithinBounds { .. }) => solve_coboundary(m, phi, t.escalated()),
        r => r,
    }
}

/// Default bounds for a coboundary search: the largest ∂-degree among the
/// structure and `φ` plus two, and the λ-degree of `φ`.
pub fn default_truncation(m: &Bimodule, phi: &Cochain) -> Truncation {
    let d = [
        m.algebra().mult().partial_degree(),
        m.left().partial_degree(),
        m.right().partial_degree(),
        phi.partial_degree(),
    ]
    .into_iter()
    .flatten()
    .max()
    .unwrap_or(0);
    let l = phi
        .values()
        .iter()
        .flat_map(|v| v.coeffs().iter().filter_map(Poly::lambda_degree))
        .max()
        .unwrap_or(0);
    Truncation::new(d + 2, l)
}

/// A random cochain with small integer coefficients; each monomial within the
/// bounds is present with probability `density`.
pub fn random_cochain<R: Rng>(
    rng: &mut R,
    slots: Vec<usize>,
    target: usize,
    t: Truncation,
    density: f64,
) -> Cochain {
    let n = slots.len();
    let arity = n.saturating_sub(1);
    let monos = if n == 0 {
        vec![vec![0]]
    } else {
        t.monomials(arity)
    };
    let mut c = SesqMap::zero(slots, target);
    for tuple in c.tuples() {
        let mut v = ModElement::zero(target, arity);
        for k in 0..target {
            let mut p = Poly::zero(arity);
            for e in &monos {
                if rng.gen_bool(density) {
                    let x: i64 = rng.gen_range(-3..=3);
                    p += &Poly::monomial(arity, e.clone(), Scalar::from_integer(x.into()));
                }
            }
            v.set(k, p);
        }
        c.set(&tuple, v);
    }
    c
}
