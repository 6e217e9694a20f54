use crate::symexpr::{Poly, Scalar};
use num_traits::One;

use super::{CdLinearMap, ModElement};

/// `left · m · right = diag(diagonal, 0, …)`, with monic invariant factors
/// satisfying `dᵢ | dᵢ₊₁`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub left: CdLinearMap,
    pub right: CdLinearMap,
    pub diagonal: Vec<Poly>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct Work {
    m: Vec<Vec<Poly>>,
    l: Vec<Vec<Poly>>,
    r: Vec<Vec<Poly>>,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap(a, b);
        self.l.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in self.m.iter_mut().chain(self.r.iter_mut()) {
            row.swap(a, b);
        }
    }

    /// row_i += q · row_t
    fn add_row(&mut self, i: usize, t: usize, q: &Poly) {
        for mat in [&mut self.m, &mut self.l] {
            let src = mat[t].clone();
            for (x, s) in mat[i].iter_mut().zip(&src) {
                if !s.is_zero() {
                    *x += &(q * s);
                }
            }
        }
    }

    /// col_j += q · col_t
    fn add_col(&mut self, j: usize, t: usize, q: &Poly) {
        for mat in [&mut self.m, &mut self.r] {
            for row in mat.iter_mut() {
                if !row[t].is_zero() {
                    let add = q * &row[t];
                    row[j] += &add;
                }
            }
        }
    }

    fn scale_row(&mut self, t: usize, c: &Scalar) {
        for mat in [&mut self.m, &mut self.l] {
            for x in mat[t].iter_mut() {
                *x = x.scale(c);
            }
        }
    }
}

fn identity(n: usize) -> Vec<Vec<Poly>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Poly::one(0) } else { Poly::zero(0) })
                .collect()
        })
        .collect()
}

/// Smith normal form over k[∂]. Pivots on the entry of least ∂-degree,
/// ties broken row-major.
pub fn smith_normal_form(m: &CdLinearMap) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        m: m.entries().to_vec(),
        l: identity(rows),
        r: identity(cols),
    };
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(u32, usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if let Some(d) = w.m[i][j].partial_degree() {
                        if best.is_none_or(|(bd, _, _)| d < bd) {
                            best = Some((d, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                break;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let pivot = w.m[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if w.m[i][t].is_zero() {
                    continue;
                }
                let (q, rem) = w.m[i][t].div_rem_partial(&pivot);
                w.add_row(i, t, &-q);
                if !rem.is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if w.m[t][j].is_zero() {
                    continue;
                }
                let (q, rem) = w.m[t][j].div_rem_partial(&pivot);
                w.add_col(j, t, &-q);
                if !rem.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let mut bad_row = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !w.m[i][j].div_rem_partial(&pivot).1.is_zero() {
                        bad_row = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad_row {
                Some(i) => w.add_row(t, i, &Poly::one(0)),
                None => break,
            }
        }
        if w.m[t][t].is_zero() {
            break;
        }
        let lc = w.m[t][t].partial_lead_coeff();
        w.scale_row(t, &(Scalar::one() / lc));
        diagonal.push(w.m[t][t].clone());
    }
    let decomposition = SmithDecomposition {
        left: CdLinearMap::new(w.l, rows, rows).expect("shape"),
        right: CdLinearMap::new(w.r, cols, cols).expect("shape"),
        diagonal,
    };
    debug_assert!(verify_smith(m, &decomposition));
    decomposition
}

/// Re-multiply and compare with the diagonal form.
pub fn verify_smith(m: &CdLinearMap, s: &SmithDecomposition) -> bool {
    let prod = s.left.compose(m).and_then(|x| x.compose(&s.right));
    let Ok(prod) = prod else { return false };
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let expect = if i == j && i < s.diagonal.len() {
                s.diagonal[i].clone()
            } else {
                Poly::zero(0)
            };
            if *prod.entry(i, j) != expect {
                return false;
            }
        }
    }
    s.diagonal
        .windows(2)
        .all(|w| w[1].div_rem_partial(&w[0]).1.is_zero())
}

/// Solution of `m · x = b` over k[∂]; `b` may carry λ-variables, which are
/// treated as parameters.
#[derive(Clone, Debug)]
pub struct KdSolution {
    pub particular: ModElement,
    pub kernel: Vec<ModElement>,
}

pub fn solve_over_kd(m: &CdLinearMap, b: &ModElement) -> Option<KdSolution> {
    assert_eq!(b.rank(), m.rows(), "right-hand side length");
    let s = smith_normal_form(m);
    let a = b.arity();
    let c = s.left.on(b);
    let r = s.rank();
    let mut y = ModElement::zero(m.cols(), a);
    for i in 0..m.rows() {
        if i < r {
            let (q, rem) = c.coeff(i).div_rem_partial(&s.diagonal[i]);
            if !rem.is_zero() {
                return None;
            }
            y.set(i, q);
        } else if !c.coeff(i).is_zero() {
            return None;
        }
    }
    let particular = s.right.on(&y);
    let kernel = (r..m.cols()).map(|j| s.right.column(j)).collect();
    Some(KdSolution { particular, kernel })
}

/// A k[∂]-basis of the image of `m`, as columns.
pub fn image_basis(m: &CdLinearMap) -> Vec<ModElement> {
    let s = smith_normal_form(m);
    // m = L⁻¹ D R⁻¹, so the image is spanned by dᵢ·(column i of L⁻¹).
    let linv = s.left.inverse().expect("unimodular");
    (0..s.rank())
        .map(|i| linv.column(i).mul_poly(&s.diagonal[i]))
        .collect()
}

/// A k[∂]-basis of the kernel of `m`.
pub fn kernel_basis(m: &CdLinearMap) -> Vec<ModElement> {
    let s = smith_normal_form(m);
    (s.rank()..m.cols()).map(|j| s.right.column(j)).collect()
}

/// Whether the submodule spanned by `gens` contains `v`.
pub fn in_span(gens: &[ModElement], v: &ModElement) -> bool {
    if gens.is_empty() {
        return v.is_zero();
    }
    let m = CdLinearMap::from_columns(gens, v.rank());
    solve_over_kd(&m, v).is_some()
}

/// Equality of the submodules spanned by two generating sets.
pub fn same_submodule(u: &[ModElement], v: &[ModElement]) -> bool {
    u.iter().all(|x| in_span(v, x)) && v.iter().all(|x| in_span(u, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse;

    fn mat(rows: &[&[&str]]) -> CdLinearMap {
        let e: Vec<Vec<Poly>> = rows
            .iter()
            .map(|r| r.iter().map(|s| parse(s, 0).unwrap()).collect())
            .collect();
        let (n, m) = (e.len(), e[0].len());
        CdLinearMap::new(e, n, m).unwrap()
    }

    #[test]
    fn diagonal_examples() {
        let s = smith_normal_form(&mat(&[&["D", "0"], &["0", "D^2"]]));
        assert_eq!(s.diagonal, vec![parse("D", 0).unwrap(), parse("D^2", 0).unwrap()]);
        let s = smith_normal_form(&mat(&[&["2"]]));
        assert_eq!(s.diagonal, vec![Poly::one(0)]);
        let m = mat(&[&["D", "1"], &["0", "D"]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal, vec![Poly::one(0), parse("D^2", 0).unwrap()]);
        assert!(verify_smith(&m, &s));
    }

    #[test]
    fn solve_examples() {
        let b = ModElement::new(vec![parse("D+3", 0).unwrap(), parse("1", 0).unwrap()], 0);
        let sol = solve_over_kd(&CdLinearMap::identity(2), &b).unwrap();
        assert_eq!(sol.particular, b);
        let d = mat(&[&["D"]]);
        assert!(solve_over_kd(&d, &ModElement::basis(1, 0, 0)).is_none());
        let sol = solve_over_kd(&d, &ModElement::new(vec![parse("D^2", 0).unwrap()], 0)).unwrap();
        assert_eq!(sol.particular.coeff(0), &parse("D", 0).unwrap());
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn lambda_parameters_pass_through() {
        let d = mat(&[&["D+1"]]);
        let rhs = parse("L1*D + L1 + D^2 + D", 1).unwrap();
        let sol = solve_over_kd(&d, &ModElement::new(vec![rhs.clone()], 1)).unwrap();
        assert_eq!(&(sol.particular.coeff(0) * &parse("D+1", 1).unwrap()), &rhs);
    }

    #[test]
    fn image_and_kernel() {
        let m = mat(&[&["1", "D"], &["D", "D^2"]]);
        let im = image_basis(&m);
        assert_eq!(im.len(), 1);
        assert!(in_span(&im, &m.column(0)));
        assert!(in_span(&im, &m.column(1)));
        let ker = kernel_basis(&m);
        assert_eq!(ker.len(), 1);
        assert!(m.on(&ker[0]).is_zero());
    }
}
