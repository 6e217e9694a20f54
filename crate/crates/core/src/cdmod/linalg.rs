//! Dense Gaussian elimination over ℚ.

use num_traits::{One, Zero};

use crate::symexpr::Scalar;

/// Reduce `rows` in place to reduced row-echelon form; returns pivot columns.
pub fn rref(rows: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Scalar::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Solutions of `a · x = b`: one particular solution and a nullspace basis.
#[derive(Clone, Debug)]
pub struct QSolution {
    pub particular: Vec<Scalar>,
    pub nullspace: Vec<Vec<Scalar>>,
}

pub fn solve(a: &[Vec<Scalar>], b: &[Scalar], ncols: usize) -> Option<QSolution> {
    assert_eq!(a.len(), b.len());
    let mut aug: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut particular = vec![Scalar::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = aug[i][ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = Scalar::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -aug[i][f].clone();
            }
            v
        })
        .collect();
    Some(QSolution {
        particular,
        nullspace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::scalar;

    fn row(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| scalar(x)).collect()
    }

    #[test]
    fn solves_and_reports_nullspace() {
        let a = vec![row(&[1, 2, 3]), row(&[2, 4, 6])];
        let sol = solve(&a, &row(&[1, 2]), 3).unwrap();
        assert_eq!(sol.nullspace.len(), 2);
        let dot = |r: &Vec<Scalar>, v: &Vec<Scalar>| -> Scalar {
            r.iter().zip(v).map(|(a, b)| a * b).sum()
        };
        assert_eq!(dot(&a[0], &sol.particular), scalar(1));
        for n in &sol.nullspace {
            assert!(dot(&a[0], n).is_zero());
        }
        assert!(solve(&a, &row(&[1, 3]), 3).is_none());
        assert_eq!(rank(&a, 3), 1);
    }
}
