use std::fmt;

use crate::symexpr::{Poly, Scalar};

use super::CdError;

/// A free k[∂]-module of finite rank with named basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCdModule {
    basis_names: Vec<String>,
}

impl FreeCdModule {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, CdError> {
        let basis_names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in basis_names.iter().enumerate() {
            if basis_names[..i].contains(n) {
                return Err(CdError::DuplicateBasisName(n.clone()));
            }
        }
        Ok(FreeCdModule { basis_names })
    }

    /// Basis named `{prefix}1, {prefix}2, …`.
    pub fn numbered(prefix: &str, rank: usize) -> Self {
        FreeCdModule {
            basis_names: (1..=rank).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis_names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|n| n == name)
    }

    /// Concatenated basis, first `self` then `other`.
    pub fn direct_sum(&self, other: &FreeCdModule) -> FreeCdModule {
        let mut names = self.basis_names.clone();
        for n in &other.basis_names {
            let mut m = n.clone();
            while names.contains(&m) {
                m.push('\'');
            }
            names.push(m);
        }
        FreeCdModule { basis_names: names }
    }
}

/// An element of a free module with coefficients in k[∂, λ₁, …, λₖ].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModElement {
    coeffs: Vec<Poly>,
    arity: usize,
}

impl ModElement {
    pub fn new(coeffs: Vec<Poly>, arity: usize) -> Self {
        for c in &coeffs {
            assert_eq!(c.arity(), arity, "coefficient arity");
        }
        ModElement { coeffs, arity }
    }

    pub fn zero(rank: usize, arity: usize) -> Self {
        ModElement {
            coeffs: vec![Poly::zero(arity); rank],
            arity,
        }
    }

    pub fn basis(rank: usize, i: usize, arity: usize) -> Self {
        let mut v = ModElement::zero(rank, arity);
        v.coeffs[i] = Poly::one(arity);
        v
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    pub fn set(&mut self, i: usize, p: Poly) {
        assert_eq!(p.arity(), self.arity);
        self.coeffs[i] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn add(&self, o: &ModElement) -> ModElement {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &ModElement) -> ModElement {
        self.zip(o, |a, b| a - b)
    }

    pub fn add_assign(&mut self, o: &ModElement) {
        assert_eq!(self.rank(), o.rank(), "element rank");
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, o: &ModElement) {
        assert_eq!(self.rank(), o.rank(), "element rank");
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *a -= b;
        }
    }

    fn zip(&self, o: &ModElement, f: impl Fn(&Poly, &Poly) -> Poly) -> ModElement {
        assert_eq!(self.rank(), o.rank(), "element rank");
        ModElement::new(
            self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| f(a, b)).collect(),
            self.arity,
        )
    }

    pub fn neg(&self) -> ModElement {
        self.map(|c| -c)
    }

    pub fn scale(&self, s: &Scalar) -> ModElement {
        self.map(|c| c.scale(s))
    }

    /// Multiply every coefficient by `p` (same arity).
    pub fn mul_poly(&self, p: &Poly) -> ModElement {
        self.map(|c| c * p)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> ModElement {
        let coeffs: Vec<Poly> = self.coeffs.iter().map(f).collect();
        let arity = coeffs.first().map(Poly::arity).unwrap_or(self.arity);
        ModElement { coeffs, arity }
    }

    pub fn with_arity(&self, arity: usize) -> ModElement {
        ModElement {
            coeffs: self.coeffs.iter().map(|c| c.with_arity(arity)).collect(),
            arity,
        }
    }

    /// Keep ∂ and send λᵢ to `images[i-1]` in the target arity.
    pub fn subst_lambdas(&self, images: &[Poly], target: usize) -> ModElement {
        ModElement {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.subst_lambdas(images, target))
                .collect(),
            arity: target,
        }
    }

    pub fn subst_partial(&self, image: &Poly) -> ModElement {
        self.map(|c| c.subst_partial(image))
    }

    /// Concatenate coordinates `(self, other)`.
    pub fn concat(&self, other: &ModElement) -> ModElement {
        assert_eq!(self.arity, other.arity);
        let mut coeffs = self.coeffs.clone();
        coeffs.extend(other.coeffs.iter().cloned());
        ModElement::new(coeffs, self.arity)
    }

    /// Coordinates `start..start+len`.
    pub fn slice(&self, start: usize, len: usize) -> ModElement {
        ModElement::new(self.coeffs[start..start + len].to_vec(), self.arity)
    }

    /// Highest ∂-degree over the coefficients.
    pub fn partial_degree(&self) -> Option<u32> {
        self.coeffs.iter().filter_map(Poly::partial_degree).max()
    }
}

impl fmt::Debug for ModElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A k[∂]-linear map between free modules, stored as a `target × source` matrix
/// of λ-free polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CdLinearMap {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Poly>>,
}

impl CdLinearMap {
    pub fn new(entries: Vec<Vec<Poly>>, rows: usize, cols: usize) -> Result<Self, CdError> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(CdError::ShapeMismatch);
        }
        for r in &entries {
            for e in r {
                if e.arity() != 0 {
                    if e.is_partial_only() {
                        continue;
                    }
                    return Err(CdError::LambdaInMap);
                }
            }
        }
        let entries = entries
            .into_iter()
            .map(|r| r.into_iter().map(|e| e.with_arity(0)).collect())
            .collect();
        Ok(CdLinearMap {
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        CdLinearMap {
            rows,
            cols,
            entries: vec![vec![Poly::zero(0); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CdLinearMap::zero(n, n);
        for i in 0..n {
            m.entries[i][i] = Poly::one(0);
        }
        m
    }

    /// Multiplication by a fixed ∂-polynomial on a rank-`n` module.
    pub fn scalar_poly(n: usize, p: &Poly) -> Self {
        let mut m = CdLinearMap::zero(n, n);
        for i in 0..n {
            m.entries[i][i] = p.with_arity(0);
        }
        m
    }

    /// Columns are the images of the source basis vectors.
    pub fn from_columns(cols: &[ModElement], rows: usize) -> Self {
        let mut m = CdLinearMap::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.rank(), rows);
            for i in 0..rows {
                m.entries[i][j] = c.coeff(i).with_arity(0);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert!(p.is_partial_only());
        self.entries[i][j] = p.with_arity(0);
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> ModElement {
        ModElement::new((0..self.rows).map(|i| self.entries[i][j].clone()).collect(), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Poly::is_zero)
    }

    pub fn apply(&self, v: &ModElement) -> Result<ModElement, CdError> {
        if v.rank() != self.cols {
            return Err(CdError::ModuleMismatch {
                expected: self.cols,
                found: v.rank(),
            });
        }
        let a = v.arity();
        let mut out = ModElement::zero(self.rows, a);
        for i in 0..self.rows {
            let mut acc = Poly::zero(a);
            for j in 0..self.cols {
                let e = &self.entries[i][j];
                if e.is_zero() || v.coeff(j).is_zero() {
                    continue;
                }
                acc += &(&e.with_arity(a) * v.coeff(j));
            }
            out.set(i, acc);
        }
        Ok(out)
    }

    /// Panicking form of [`apply`](Self::apply) for internal use on checked shapes.
    pub fn on(&self, v: &ModElement) -> ModElement {
        self.apply(v).expect("map shape")
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &CdLinearMap) -> Result<CdLinearMap, CdError> {
        if f.rows != self.cols {
            return Err(CdError::ModuleMismatch {
                expected: self.cols,
                found: f.rows,
            });
        }
        let mut m = CdLinearMap::zero(self.rows, f.cols);
        for i in 0..self.rows {
            for j in 0..f.cols {
                let mut acc = Poly::zero(0);
                for k in 0..self.cols {
                    if self.entries[i][k].is_zero() || f.entries[k][j].is_zero() {
                        continue;
                    }
                    acc += &(&self.entries[i][k] * &f.entries[k][j]);
                }
                m.entries[i][j] = acc;
            }
        }
        Ok(m)
    }

    pub fn then(&self, g: &CdLinearMap) -> CdLinearMap {
        g.compose(self).expect("map shape")
    }

    pub fn add(&self, o: &CdLinearMap) -> CdLinearMap {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &CdLinearMap) -> CdLinearMap {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &CdLinearMap, f: impl Fn(&Poly, &Poly) -> Poly) -> CdLinearMap {
        assert!(self.rows == o.rows && self.cols == o.cols, "map shape");
        CdLinearMap {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
                .collect(),
        }
    }

    pub fn neg(&self) -> CdLinearMap {
        self.scale(&-Scalar::from_integer(1.into()))
    }

    pub fn scale(&self, s: &Scalar) -> CdLinearMap {
        CdLinearMap {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|e| e.scale(s)).collect())
                .collect(),
        }
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(
        a: &CdLinearMap,
        b: &CdLinearMap,
        c: &CdLinearMap,
        d: &CdLinearMap,
    ) -> CdLinearMap {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols);
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut m = CdLinearMap::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = match (i < a.rows, j < a.cols) {
                    (true, true) => &a.entries[i][j],
                    (true, false) => &b.entries[i][j - a.cols],
                    (false, true) => &c.entries[i - a.rows][j],
                    (false, false) => &d.entries[i - a.rows][j - a.cols],
                };
                m.entries[i][j] = e.clone();
            }
        }
        m
    }

    /// Rows `r0..r0+nr`, columns `c0..c0+nc`.
    pub fn sub_block(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> CdLinearMap {
        CdLinearMap {
            rows: nr,
            cols: nc,
            entries: (r0..r0 + nr)
                .map(|i| self.entries[i][c0..c0 + nc].to_vec())
                .collect(),
        }
    }

    pub fn transpose(&self) -> CdLinearMap {
        let mut m = CdLinearMap::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.entries[j][i] = self.entries[i][j].clone();
            }
        }
        m
    }

    pub fn partial_degree(&self) -> Option<u32> {
        self.entries
            .iter()
            .flatten()
            .filter_map(Poly::partial_degree)
            .max()
    }

    /// Inverse over k[∂], if the map is invertible.
    pub fn inverse(&self) -> Result<CdLinearMap, CdError> {
        if self.rows != self.cols {
            return Err(CdError::NotInvertible);
        }
        let s = super::smith_normal_form(self);
        if s.diagonal.len() != self.rows || s.diagonal.iter().any(|d| !d.is_constant()) {
            return Err(CdError::NotInvertible);
        }
        // L M R = I since invariant factors are monic constants.
        Ok(s.right.compose(&s.left).expect("square"))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == CdLinearMap::identity(self.rows)
    }
}

impl fmt::Debug for CdLinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let s: Vec<String> = r.iter().map(|p| p.to_string()).collect();
            write!(f, "{}", s.join(", "))?;
        }
        write!(f, "]")
    }
}
