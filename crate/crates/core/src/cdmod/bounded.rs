//! Bounded-degree coefficient matching: unknown ∂-polynomials of degree ≤ D are
//! expanded into scalar unknowns and every monomial coefficient of the residual
//! is required to vanish.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::symexpr::{Monomial, Poly, Scalar};

use super::linalg::{self, QSolution};
use super::{CdLinearMap, SolveError};

/// One residual equation `constant + Σ uₖ·linear[k] + Σ uₖu_l·q = 0` with
/// polynomial coefficients.
#[derive(Clone, Debug)]
pub struct PolyEquation {
    pub constant: Poly,
    pub linear: Vec<Poly>,
    pub quadratic: BTreeMap<(usize, usize), Poly>,
}

/// Residual equations in `n` scalar unknowns.
#[derive(Clone, Debug)]
pub struct PolyEquations {
    pub n: usize,
    pub eqs: Vec<PolyEquation>,
}

/// A coefficient-matched scalar equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarEquation {
    pub constant: Scalar,
    pub linear: Vec<Scalar>,
    pub quadratic: BTreeMap<(usize, usize), Scalar>,
}

fn unit(n: usize, k: usize, s: Scalar) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[k] = s;
    v
}

fn diff(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl PolyEquations {
    /// Read off an affine map by evaluating at 0 and at each unit vector.
    /// A probe at `(2, 3, …, n+1)` rejects anything non-affine.
    pub fn affine_from_fn(
        n: usize,
        f: impl Fn(&[Scalar]) -> Vec<Poly>,
    ) -> Result<PolyEquations, SolveError> {
        let f0 = f(&vec![Scalar::zero(); n]);
        let cols: Vec<Vec<Poly>> = (0..n)
            .map(|k| diff(&f(&unit(n, k, Scalar::one())), &f0))
            .collect();
        let sys = Self::assemble(n, f0, cols, BTreeMap::new());
        let probe: Vec<Scalar> = (2..=n as i64 + 1).map(crate::symexpr::scalar).collect();
        if sys.evaluate(&probe) != f(&probe) {
            return Err(SolveError::NotAffine);
        }
        Ok(sys)
    }

    /// Read off a map of degree ≤ 2 by polarisation.
    pub fn quadratic_from_fn(n: usize, f: impl Fn(&[Scalar]) -> Vec<Poly>) -> PolyEquations {
        let zero = vec![Scalar::zero(); n];
        let f0 = f(&zero);
        let mut lin = Vec::with_capacity(n);
        let mut diag = Vec::with_capacity(n);
        let half = Scalar::new(1.into(), 2.into());
        for k in 0..n {
            let fp = f(&unit(n, k, Scalar::one()));
            let fm = f(&unit(n, k, -Scalar::one()));
            lin.push(
                fp.iter()
                    .zip(&fm)
                    .map(|(a, b)| (a - b).scale(&half))
                    .collect::<Vec<_>>(),
            );
            diag.push(
                fp.iter()
                    .zip(&fm)
                    .zip(&f0)
                    .map(|((a, b), c)| &(a + b).scale(&half) - c)
                    .collect::<Vec<_>>(),
            );
        }
        let mut quad: BTreeMap<(usize, usize), Vec<Poly>> = BTreeMap::new();
        for k in 0..n {
            if diag[k].iter().any(|p| !p.is_zero()) {
                quad.insert((k, k), diag[k].clone());
            }
            for l in k + 1..n {
                let mut pt = vec![Scalar::zero(); n];
                pt[k] = Scalar::one();
                pt[l] = Scalar::one();
                let fkl = f(&pt);
                let q: Vec<Poly> = (0..f0.len())
                    .map(|e| {
                        &(&(&(&(&fkl[e] - &f0[e]) - &lin[k][e]) - &lin[l][e]) - &diag[k][e])
                            - &diag[l][e]
                    })
                    .collect();
                if q.iter().any(|p| !p.is_zero()) {
                    quad.insert((k, l), q);
                }
            }
        }
        let sys = Self::assemble(n, f0, lin, quad);
        let probe: Vec<Scalar> = (2..=n as i64 + 1).map(crate::symexpr::scalar).collect();
        assert_eq!(sys.evaluate(&probe), f(&probe), "system has degree above 2");
        sys
    }

    fn assemble(
        n: usize,
        f0: Vec<Poly>,
        lin: Vec<Vec<Poly>>,
        quad: BTreeMap<(usize, usize), Vec<Poly>>,
    ) -> PolyEquations {
        let eqs = f0
            .into_iter()
            .enumerate()
            .map(|(e, constant)| PolyEquation {
                linear: lin.iter().map(|c| c[e].clone()).collect(),
                quadratic: quad
                    .iter()
                    .filter(|(_, v)| !v[e].is_zero())
                    .map(|(k, v)| (*k, v[e].clone()))
                    .collect(),
                constant,
            })
            .collect();
        PolyEquations { n, eqs }
    }

    pub fn is_affine(&self) -> bool {
        self.eqs.iter().all(|e| e.quadratic.is_empty())
    }

    pub fn evaluate(&self, u: &[Scalar]) -> Vec<Poly> {
        self.eqs
            .iter()
            .map(|e| {
                let mut acc = e.constant.clone();
                for (k, p) in e.linear.iter().enumerate() {
                    if !u[k].is_zero() {
                        acc += &p.scale(&u[k]);
                    }
                }
                for ((k, l), p) in &e.quadratic {
                    acc += &p.scale(&(&u[*k] * &u[*l]));
                }
                acc
            })
            .collect()
    }

    /// One scalar equation per (residual, monomial) pair.
    pub fn coefficient_match(&self) -> Vec<ScalarEquation> {
        let mut out = Vec::new();
        for e in &self.eqs {
            let mut monos: Vec<&Monomial> = e.constant.terms().map(|(m, _)| m).collect();
            for p in e.linear.iter().chain(e.quadratic.values()) {
                monos.extend(p.terms().map(|(m, _)| m));
            }
            monos.sort();
            monos.dedup();
            for m in monos {
                let ex = m.exps();
                out.push(ScalarEquation {
                    constant: e.constant.coeff(ex),
                    linear: e.linear.iter().map(|p| p.coeff(ex)).collect(),
                    quadratic: e
                        .quadratic
                        .iter()
                        .map(|(k, p)| (*k, p.coeff(ex)))
                        .filter(|(_, c)| !c.is_zero())
                        .collect(),
                });
            }
        }
        out
    }

    /// Full ℚ-solution space of an affine system.
    pub fn affine_solutions(&self) -> Result<Option<QSolution>, SolveError> {
        if !self.is_affine() {
            return Err(SolveError::NotAffine);
        }
        let rows = self.coefficient_match();
        let a: Vec<Vec<Scalar>> = rows.iter().map(|r| r.linear.clone()).collect();
        let b: Vec<Scalar> = rows.iter().map(|r| -r.constant.clone()).collect();
        Ok(linalg::solve(&a, &b, self.n))
    }
}

/// Unknown ∂-polynomials of degree ≤ `degree`, flattened to scalar unknowns.
#[derive(Clone, Copy, Debug)]
pub struct PartialUnknowns {
    pub count: usize,
    pub degree: u32,
}

impl PartialUnknowns {
    pub fn n_scalars(&self) -> usize {
        self.count * (self.degree as usize + 1)
    }

    pub fn polys(&self, values: &[Scalar], arity: usize) -> Vec<Poly> {
        let w = self.degree as usize + 1;
        (0..self.count)
            .map(|i| Poly::from_partial_coeffs(arity, &values[i * w..(i + 1) * w]))
            .collect()
    }
}

/// An unknown `rows × cols` k[∂]-matrix with entries of ∂-degree ≤ `degree`.
#[derive(Clone, Copy, Debug)]
pub struct UnknownMap {
    pub rows: usize,
    pub cols: usize,
    pub degree: u32,
}

impl UnknownMap {
    pub fn n_scalars(&self) -> usize {
        self.rows * self.cols * (self.degree as usize + 1)
    }

    pub fn to_map(&self, values: &[Scalar]) -> CdLinearMap {
        let pu = PartialUnknowns {
            count: self.rows * self.cols,
            degree: self.degree,
        };
        let polys = pu.polys(values, 0);
        let entries = (0..self.rows)
            .map(|i| polys[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        CdLinearMap::new(entries, self.rows, self.cols).expect("shape")
    }
}

/// Solve affine polynomial equations in unknown ∂-polynomials of bounded degree.
/// Returns the unknown polynomials (arity 0) or `None` when the bounded system
/// is inconsistent.
pub fn bounded_coefficient_solve(
    unknowns: &PartialUnknowns,
    equations: impl Fn(&[Poly]) -> Vec<Poly>,
) -> Result<Option<Vec<Poly>>, SolveError> {
    let n = unknowns.n_scalars();
    let sys = PolyEquations::affine_from_fn(n, |u| equations(&unknowns.polys(u, 0)))?;
    let Some(sol) = sys.affine_solutions()? else {
        return Ok(None);
    };
    let polys = unknowns.polys(&sol.particular, 0);
    if equations(&polys).iter().any(|p| !p.is_zero()) {
        return Err(SolveError::VerificationFailed);
    }
    Ok(Some(polys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse;

    #[test]
    fn coefficient_match_example() {
        let u = PartialUnknowns { count: 1, degree: 1 };
        let d = Poly::partial(0);
        let sol = bounded_coefficient_solve(&u, |x| vec![&(&x[0] * &d) - &d.pow(2)])
            .unwrap()
            .unwrap();
        assert_eq!(sol[0], d);
    }

    #[test]
    fn inconsistent_and_trivial() {
        let u = PartialUnknowns { count: 1, degree: 2 };
        let r = bounded_coefficient_solve(&u, |x| {
            vec![&(&x[0] * &Poly::partial(0)) - &Poly::one(0)]
        })
        .unwrap();
        assert!(r.is_none());
        let u = PartialUnknowns { count: 0, degree: 2 };
        let r = bounded_coefficient_solve(&u, |_| vec![Poly::zero(0)]).unwrap();
        assert_eq!(r, Some(vec![]));
    }

    #[test]
    fn quadratic_is_rejected() {
        let u = PartialUnknowns { count: 1, degree: 0 };
        let r = bounded_coefficient_solve(&u, |x| vec![&(&x[0] * &x[0]) - &Poly::one(0)]);
        assert!(matches!(r, Err(SolveError::NotAffine)));
    }

    #[test]
    fn polarisation_recovers_quadratic_terms() {
        let f = |u: &[Scalar]| {
            let x = Poly::constant(1, u[0].clone());
            let y = Poly::constant(1, u[1].clone());
            vec![&(&(&x * &y) * &parse("L1", 1).unwrap()) + &(&x - &Poly::int(1, 2))]
        };
        let sys = PolyEquations::quadratic_from_fn(2, f);
        assert!(!sys.is_affine());
        assert!(sys.eqs[0].quadratic.contains_key(&(0, 1)));
        let pt = vec![crate::symexpr::scalar(3), crate::symexpr::scalar(-5)];
        assert_eq!(sys.evaluate(&pt), f(&pt));
    }
}
