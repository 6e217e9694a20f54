use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::SymError;

/// Exact rational scalar.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A variable of the coefficient ring: ∂ or one of λ₁, λ₂, …
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    Partial,
    Lambda(usize),
}

/// Exponent vector laid out as `[∂, λ₁, …, λₙ]`.
///
/// Ordered graded-lexicographically on `(λ₁, …, λₙ, ∂)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn partial_exp(&self) -> u32 {
        self.0[0]
    }

    pub fn lambda_exp(&self, i: usize) -> u32 {
        self.0[i]
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0[1..].cmp(&other.0[1..]))
            .then_with(|| self.0[0].cmp(&other.0[0]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial over ℚ in ∂ and `arity` λ-variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    arity: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(arity: usize) -> Poly {
        Poly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Poly {
        Poly::constant(arity, Scalar::one())
    }

    pub fn constant(arity: usize, c: Scalar) -> Poly {
        let mut p = Poly::zero(arity);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; arity + 1]), c);
        }
        p
    }

    pub fn int(arity: usize, n: i64) -> Poly {
        Poly::constant(arity, scalar(n))
    }

    /// ∂ as a polynomial of the given arity.
    pub fn partial(arity: usize) -> Poly {
        Poly::var(arity, VarId::Partial)
    }

    /// λᵢ (1-based) as a polynomial of the given arity.
    pub fn lambda(arity: usize, i: usize) -> Poly {
        Poly::var(arity, VarId::Lambda(i))
    }

    pub fn var(arity: usize, v: VarId) -> Poly {
        let mut e = vec![0; arity + 1];
        match v {
            VarId::Partial => e[0] = 1,
            VarId::Lambda(i) => {
                assert!(i >= 1 && i <= arity, "λ{i} outside arity {arity}");
                e[i] = 1;
            }
        }
        Poly::monomial(arity, e, Scalar::one())
    }

    /// `c · ∂^e[0] λ₁^e[1] ⋯`.
    pub fn monomial(arity: usize, exps: Vec<u32>, c: Scalar) -> Poly {
        assert_eq!(exps.len(), arity + 1);
        let mut p = Poly::zero(arity);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    /// Sum of λ_i over the given 1-based indices.
    pub fn lambda_sum(arity: usize, idx: impl IntoIterator<Item = usize>) -> Poly {
        let mut p = Poly::zero(arity);
        for i in idx {
            p += &Poly::lambda(arity, i);
        }
        p
    }

    /// Univariate ∂-polynomial from coefficients `c[k]` of `∂^k`.
    pub fn from_partial_coeffs(arity: usize, coeffs: &[Scalar]) -> Poly {
        let mut p = Poly::zero(arity);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; arity + 1];
            e[0] = k as u32;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial(vec![0; self.arity + 1]))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Highest ∂-exponent, `None` for zero.
    pub fn partial_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0[0]).max()
    }

    /// Highest total λ-degree, `None` for zero.
    pub fn lambda_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0[1..].iter().sum()).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// True when no λ-variable occurs.
    pub fn is_partial_only(&self) -> bool {
        self.terms.keys().all(|m| m.0[1..].iter().all(|&e| e == 0))
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Poly) -> Result<(), SymError> {
        if self.arity != other.arity {
            return Err(SymError::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, SymError> {
        self.check_arity(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, SymError> {
        self.check_arity(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c.clone());
        }
        Ok(r)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, SymError> {
        self.check_arity(other)?;
        let mut r = Poly::zero(self.arity);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e: Vec<u32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                r.add_term(Monomial(e), c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one(self.arity);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = &r * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        r
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.arity);
        }
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Re-declare the arity. Growing pads with unused λ's; shrinking requires the
    /// dropped λ's to be absent.
    pub fn with_arity(&self, arity: usize) -> Poly {
        if arity == self.arity {
            return self.clone();
        }
        let mut r = Poly::zero(arity);
        for (m, c) in &self.terms {
            let mut e = vec![0; arity + 1];
            for (i, &x) in m.0.iter().enumerate() {
                if i <= arity {
                    e[i] = x;
                } else {
                    assert_eq!(x, 0, "with_arity drops a live λ{i}");
                }
            }
            r.terms.insert(Monomial(e), c.clone());
        }
        r
    }

    /// Simultaneous substitution of every variable: `∂ ↦ d_image`, `λᵢ ↦ lambda_images[i-1]`.
    /// All images must share one target arity.
    pub fn compose(&self, d_image: &Poly, lambda_images: &[Poly]) -> Poly {
        assert_eq!(lambda_images.len(), self.arity, "compose: image count");
        let target = d_image.arity;
        for l in lambda_images {
            assert_eq!(l.arity, target, "compose: image arity");
        }
        let mut cache: Vec<Vec<Poly>> = vec![vec![Poly::one(target)]; self.arity + 1];
        let mut r = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = if i == 0 { d_image } else { &lambda_images[i - 1] };
                let powers = &mut cache[i];
                while powers.len() <= e as usize {
                    let next = &powers[powers.len() - 1] * img;
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            for (m2, c2) in t.terms {
                r.add_term(m2, c2);
            }
        }
        r
    }

    /// Substitute the listed variables; unassigned variables map to themselves.
    pub fn substitute(&self, assignment: &BTreeMap<VarId, Poly>) -> Result<Poly, SymError> {
        let target = match assignment.values().next() {
            Some(p) => p.arity,
            None => return Ok(self.clone()),
        };
        for p in assignment.values() {
            if p.arity != target {
                return Err(SymError::ArityMismatch {
                    left: target,
                    right: p.arity,
                });
            }
        }
        if target < self.arity {
            for i in target + 1..=self.arity {
                if !assignment.contains_key(&VarId::Lambda(i)) && self.uses(VarId::Lambda(i)) {
                    return Err(SymError::ArityMismatch {
                        left: self.arity,
                        right: target,
                    });
                }
            }
        }
        let img = |v: VarId| -> Poly {
            match assignment.get(&v) {
                Some(p) => p.clone(),
                None => match v {
                    VarId::Partial => Poly::partial(target),
                    VarId::Lambda(i) if i <= target => Poly::lambda(target, i),
                    VarId::Lambda(_) => Poly::zero(target),
                },
            }
        };
        let lambdas: Vec<Poly> = (1..=self.arity).map(|i| img(VarId::Lambda(i))).collect();
        Ok(self.compose(&img(VarId::Partial), &lambdas))
    }

    /// Replace ∂ only, keeping the λ's.
    pub fn subst_partial(&self, image: &Poly) -> Poly {
        assert_eq!(image.arity, self.arity);
        if self.terms.keys().all(|m| m.0[0] == 0) {
            return self.clone();
        }
        let lambdas: Vec<Poly> = (1..=self.arity)
            .map(|i| Poly::lambda(self.arity, i))
            .collect();
        self.compose(image, &lambdas)
    }

    /// Keep ∂ and send λᵢ to `images[i-1]`, which live in the target arity.
    pub fn subst_lambdas(&self, images: &[Poly], target: usize) -> Poly {
        self.compose(&Poly::partial(target), images)
    }

    pub fn uses(&self, v: VarId) -> bool {
        let idx = match v {
            VarId::Partial => 0,
            VarId::Lambda(i) => i,
        };
        idx <= self.arity && self.terms.keys().any(|m| m.0[idx] > 0)
    }

    /// Variable renaming `λᵢ ↦ λ_{map[i-1]}` into the target arity.
    pub fn rename_lambdas(&self, map: &[usize], target: usize) -> Result<Poly, SymError> {
        if map.len() != self.arity {
            return Err(SymError::ArityMismatch {
                left: self.arity,
                right: map.len(),
            });
        }
        let mut seen = vec![false; target + 1];
        for &j in map {
            if j == 0 || j > target {
                return Err(SymError::VariableOutOfRange {
                    index: j,
                    arity: target,
                });
            }
            if seen[j] {
                return Err(SymError::IndexCollision { index: j });
            }
            seen[j] = true;
        }
        let mut r = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target + 1];
            e[0] = m.0[0];
            for (i, &j) in map.iter().enumerate() {
                e[j] = m.0[i + 1];
            }
            r.terms.insert(Monomial(e), c.clone());
        }
        Ok(r)
    }

    /// Set every λ to zero; result has arity 0.
    pub fn at_lambdas_zero(&self) -> Poly {
        let mut r = Poly::zero(0);
        for (m, c) in &self.terms {
            if m.0[1..].iter().all(|&e| e == 0) {
                r.add_term(Monomial(vec![m.0[0]]), c.clone());
            }
        }
        r
    }

    /// Leading ∂-coefficient and degree when viewed in ℚ[λ][∂].
    fn partial_lead(&self) -> Option<(u32, Poly)> {
        let d = self.partial_degree()?;
        let mut lead = Poly::zero(self.arity);
        for (m, c) in &self.terms {
            if m.0[0] == d {
                let mut e = m.0.clone();
                e[0] = 0;
                lead.add_term(Monomial(e), c.clone());
            }
        }
        Some((d, lead))
    }

    /// Division in ℚ[λ][∂] by a λ-free divisor: `self = q·d + r` with `deg_∂ r < deg_∂ d`.
    pub fn div_rem_partial(&self, d: &Poly) -> (Poly, Poly) {
        assert!(d.is_partial_only(), "divisor must be λ-free");
        assert!(!d.is_zero(), "division by zero");
        let d = d.with_arity(self.arity);
        let (dd, dlead) = d.partial_lead().unwrap();
        let dlead = dlead.constant_term();
        let mut q = Poly::zero(self.arity);
        let mut r = self.clone();
        while let Some((rd, rlead)) = r.partial_lead() {
            if rd < dd {
                break;
            }
            let mut shift = vec![0; self.arity + 1];
            shift[0] = rd - dd;
            let factor = &rlead.scale(&(Scalar::one() / &dlead))
                * &Poly::monomial(self.arity, shift, Scalar::one());
            r = &r - &(&factor * &d);
            q += &factor;
        }
        (q, r)
    }

    /// Monic normalisation of a nonzero λ-free polynomial.
    pub fn monic(&self) -> Poly {
        match self.partial_lead() {
            None => self.clone(),
            Some((_, lead)) => self.scale(&(Scalar::one() / lead.constant_term())),
        }
    }

    /// Leading coefficient in ∂ of a λ-free polynomial.
    pub fn partial_lead_coeff(&self) -> Scalar {
        self.partial_lead()
            .map(|(_, l)| l.constant_term())
            .unwrap_or_else(Scalar::zero)
    }

    /// Coefficients grouped by ∂-exponent, each a polynomial in the λ's alone.
    pub fn partial_coeffs(&self) -> Vec<Poly> {
        let d = match self.partial_degree() {
            None => return vec![],
            Some(d) => d as usize,
        };
        let mut out = vec![Poly::zero(self.arity); d + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[0] as usize;
            e[0] = 0;
            out[k].add_term(Monomial(e), c.clone());
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate().skip(1) {
                if e > 0 {
                    factors.push(power_str(&format!("L{i}"), e));
                }
            }
            if m.0[0] > 0 {
                factors.push(power_str("D", m.0[0]));
            }
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

fn power_str(v: &str, e: u32) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.arity, self)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $call:ident) => {
        impl<'a> $tr<&'a Poly> for &'a Poly {
            type Output = Poly;
            fn $m(self, rhs: &'a Poly) -> Poly {
                self.$call(rhs).expect("polynomial arity mismatch")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$call(&rhs).expect("polynomial arity mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.arity, rhs.arity, "polynomial arity mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.arity, rhs.arity, "polynomial arity mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(a: usize) -> Poly {
        Poly::partial(a)
    }
    fn l(a: usize, i: usize) -> Poly {
        Poly::lambda(a, i)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&d(1) + &l(1, 1)) * &(&d(1) - &l(1, 1));
        assert_eq!(p, &d(1).pow(2) - &l(1, 1).pow(2));
    }

    #[test]
    fn arity_mismatch_is_reported() {
        assert!(matches!(
            d(1).try_add(&d(2)),
            Err(SymError::ArityMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn substitution_examples() {
        let mut a = BTreeMap::new();
        a.insert(VarId::Partial, -&l(1, 1));
        assert_eq!(d(1).pow(2).substitute(&a).unwrap(), l(1, 1).pow(2));

        let mut a = BTreeMap::new();
        a.insert(VarId::Partial, &l(1, 1) + &d(1));
        let p = &l(1, 1) * &d(1);
        assert_eq!(
            p.substitute(&a).unwrap(),
            &l(1, 1).pow(2) + &(&l(1, 1) * &d(1))
        );
        assert_eq!(p.substitute(&BTreeMap::new()).unwrap(), p);
    }

    #[test]
    fn rename_and_embed() {
        let p = &l(1, 1) * &d(1);
        assert_eq!(p.rename_lambdas(&[2], 2).unwrap(), &l(2, 2) * &d(2));
        assert_eq!(p.rename_lambdas(&[2], 3).unwrap(), &l(3, 2) * &d(3));
        let q = &l(2, 1) * &l(2, 2);
        assert!(matches!(
            q.rename_lambdas(&[1, 1], 2),
            Err(SymError::IndexCollision { index: 1 })
        ));
    }

    #[test]
    fn partial_division() {
        let a = 2;
        let p = &(&d(a).pow(2) * &l(a, 1)) + &Poly::int(a, 3);
        let (q, r) = p.div_rem_partial(&(&d(0) + &Poly::int(0, 1)));
        let back = &(&q * &(&d(a) + &Poly::int(a, 1))) + &r;
        assert_eq!(back, p);
        assert_eq!(r.partial_degree().unwrap_or(0), 0);
    }

    #[test]
    fn display_is_graded() {
        let p = &(&d(1).pow(2) * &l(1, 1)) - &Poly::constant(1, ratio(3, 2));
        assert_eq!(p.to_string(), "L1*D^2 - 3/2");
    }
}
