//! Buchberger's algorithm over ℚ and a decision procedure for small
//! polynomial systems with rational witness extraction.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cdmod::ScalarEquation;
use crate::symexpr::Scalar;
use crate::witness;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => {
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

/// A polynomial over ℚ in `nvars` variables `x0, x1, …`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::monomial(e, Scalar::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Scalar) -> Self {
        let mut p = MPoly::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// `constant + Σ linear[k]·xₖ + Σ q·xₖxₗ`.
    pub fn from_scalar_equation(e: &ScalarEquation, nvars: usize) -> Self {
        let mut p = MPoly::constant(nvars, e.constant.clone());
        for (k, c) in e.linear.iter().enumerate() {
            p = p.add(&MPoly::var(nvars, k).scale(c));
        }
        for ((k, l), c) in &e.quadratic {
            p = p.add(&MPoly::var(nvars, *k).mul(&MPoly::var(nvars, *l)).scale(c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, e: Vec<u32>, c: Scalar) {
        let z = {
            let v = self.terms.entry(e.clone()).or_insert_with(Scalar::zero);
            *v += c;
            v.is_zero()
        };
        if z {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.insert_add(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> MPoly {
        if s.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.insert_add(e, c1 * c2);
            }
        }
        r
    }

    fn mul_term(&self, e: &[u32], c: &Scalar) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(f, d)| (f.iter().zip(e).map(|(a, b)| a + b).collect(), d * c))
                .collect(),
        }
    }

    pub fn leading(&self, ord: MonomialOrder) -> Option<(&Vec<u32>, &Scalar)> {
        self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0))
    }

    pub fn monic(&self, ord: MonomialOrder) -> MPoly {
        match self.leading(ord) {
            None => self.clone(),
            Some((_, c)) => self.scale(&(Scalar::one() / c)),
        }
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `xᵢ = v`; the variable count is kept.
    pub fn substitute(&self, i: usize, v: &Scalar) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..e[i] {
                t *= v;
            }
            let mut f = e.clone();
            f[i] = 0;
            r.insert_add(f, t);
        }
        r
    }

    pub fn uses(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    /// Univariate coefficients (lowest first) if only `xᵢ` occurs.
    fn univariate(&self, i: usize) -> Option<Vec<Scalar>> {
        let mut out: Vec<Scalar> = Vec::new();
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &x)| j != i && x > 0) {
                return None;
            }
            let d = e[i] as usize;
            if out.len() <= d {
                out.resize(d + 1, Scalar::zero());
            }
            out[d] = c.clone();
        }
        Some(out)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || e.iter().all(|&x| x == 0) {
                parts.push(a.to_string());
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => parts.push(format!("x{i}")),
                    _ => parts.push(format!("x{i}^{k}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Unknowns and equations `eq = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    pub nvars: usize,
    pub equations: Vec<MPoly>,
}

impl PolySystem {
    pub fn new(nvars: usize, equations: Vec<MPoly>) -> Self {
        for e in &equations {
            assert_eq!(e.nvars(), nvars);
        }
        PolySystem { nvars, equations }
    }

    pub fn from_scalar_equations(nvars: usize, eqs: &[ScalarEquation]) -> Self {
        PolySystem::new(
            nvars,
            eqs.iter()
                .map(|e| MPoly::from_scalar_equation(e, nvars))
                .filter(|p| !p.is_zero())
                .collect(),
        )
    }

    pub fn satisfied_by(&self, x: &[Scalar]) -> bool {
        self.equations.iter().all(|e| e.eval(x).is_zero())
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Full reduction of `p` modulo `g`.
pub fn reduce(p: &MPoly, g: &[MPoly], ord: MonomialOrder) -> MPoly {
    let leads: Vec<(Vec<u32>, Scalar)> = g
        .iter()
        .filter_map(|q| q.leading(ord).map(|(e, c)| (e.clone(), c.clone())))
        .collect();
    let mut p = p.clone();
    let mut rem = MPoly::zero(p.nvars);
    while let Some((e, c)) = p.leading(ord).map(|(e, c)| (e.clone(), c.clone())) {
        let hit = g
            .iter()
            .zip(&leads)
            .find(|(_, (le, _))| divides(le, &e));
        match hit {
            Some((q, (le, lc))) => {
                let shift: Vec<u32> = e.iter().zip(le).map(|(a, b)| a - b).collect();
                p = p.sub(&q.mul_term(&shift, &(&c / lc)));
            }
            None => {
                p.terms.remove(&e);
                rem.insert_add(e, c);
            }
        }
    }
    rem
}

fn s_poly(f: &MPoly, g: &MPoly, ord: MonomialOrder) -> MPoly {
    let (ef, cf) = f.leading(ord).unwrap();
    let (eg, cg) = g.leading(ord).unwrap();
    let l: Vec<u32> = ef.iter().zip(eg).map(|(a, b)| *a.max(b)).collect();
    let sf: Vec<u32> = l.iter().zip(ef).map(|(a, b)| a - b).collect();
    let sg: Vec<u32> = l.iter().zip(eg).map(|(a, b)| a - b).collect();
    f.mul_term(&sf, &(Scalar::one() / cf))
        .sub(&g.mul_term(&sg, &(Scalar::one() / cg)))
}

/// Whether every S-polynomial of `g` reduces to zero.
pub fn is_groebner_basis(g: &[MPoly], ord: MonomialOrder) -> bool {
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if !reduce(&s_poly(&g[i], &g[j], ord), g, ord).is_zero() {
                return false;
            }
        }
    }
    true
}

/// The reduced Gröbner basis of the ideal generated by `gens`: monic,
/// interreduced, sorted by descending leading monomial.
pub fn buchberger(gens: &[MPoly], ord: MonomialOrder) -> Vec<MPoly> {
    let mut g: Vec<MPoly> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.monic(ord))
        .collect();
    if g.iter().any(MPoly::is_constant) {
        let n = gens[0].nvars();
        return vec![MPoly::constant(n, Scalar::one())];
    }
    let mut pairs: Vec<(usize, usize)> = (0..g.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let (ei, ej) = (g[i].leading(ord).unwrap().0, g[j].leading(ord).unwrap().0);
        if ei.iter().zip(ej).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let r = reduce(&s_poly(&g[i], &g[j], ord), &g, ord);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![MPoly::constant(r.nvars(), Scalar::one())];
        }
        let k = g.len();
        g.push(r.monic(ord));
        pairs.extend((0..k).map(|i| (i, k)));
    }
    let reduced = interreduce(g, ord);
    assert!(is_groebner_basis(&reduced, ord), "Buchberger output failed self-check");
    reduced
}

fn interreduce(g: Vec<MPoly>, ord: MonomialOrder) -> Vec<MPoly> {
    let mut minimal: Vec<MPoly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let e = p.leading(ord).unwrap().0;
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let f = q.leading(ord).unwrap().0;
            j != i && divides(f, e) && (f != e || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out: Vec<MPoly> = Vec::new();
    for i in 0..minimal.len() {
        let others: Vec<MPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let lead = minimal[i].leading(ord).unwrap();
        let tail = {
            let mut t = minimal[i].clone();
            t.terms.remove(lead.0);
            t
        };
        let head = MPoly::monomial(lead.0.clone(), lead.1.clone());
        out.push(head.add(&reduce(&tail, &others, ord)).monic(ord));
    }
    out.sort_by(|a, b| ord.cmp(b.leading(ord).unwrap().0, a.leading(ord).unwrap().0));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    /// `1` lies in the ideal.
    InconsistentOverClosure,
    /// A rational point, verified by substitution.
    RationalWitness(Vec<Scalar>),
    /// The ideal is proper but no rational point was found.
    SolvableNoRationalWitness,
}

/// Decide a system over the algebraic closure and look for a rational point by
/// lex back-substitution with rational-root search.
pub fn decide(sys: &PolySystem) -> Decision {
    if sys.equations.is_empty() {
        let x = vec![Scalar::zero(); sys.nvars];
        witness::record(true);
        return Decision::RationalWitness(x);
    }
    let gb = buchberger(&sys.equations, MonomialOrder::Lex);
    if gb.len() == 1 && gb[0].is_constant() {
        return Decision::InconsistentOverClosure;
    }
    let mut x: Vec<Option<Scalar>> = vec![None; sys.nvars];
    if back_substitute(&gb, &mut x) {
        let x: Vec<Scalar> = x.into_iter().map(|v| v.unwrap_or_else(Scalar::zero)).collect();
        if witness::record(sys.satisfied_by(&x)) {
            return Decision::RationalWitness(x);
        }
    }
    Decision::SolvableNoRationalWitness
}

const FREE_TRIALS: [i64; 4] = [0, 1, -1, 2];

fn back_substitute(gens: &[MPoly], x: &mut Vec<Option<Scalar>>) -> bool {
    let gb = buchberger(gens, MonomialOrder::Lex);
    if gb.iter().all(MPoly::is_zero) || gb.is_empty() {
        return true;
    }
    if gb.len() == 1 && gb[0].is_constant() {
        return false;
    }
    // Smallest lex variable that still occurs.
    let Some(v) = (0..x.len()).rev().find(|&i| gb.iter().any(|p| p.uses(i))) else {
        return true;
    };
    let candidates: Vec<Scalar> = match gb.iter().find_map(|p| p.univariate(v)) {
        Some(coeffs) => rational_roots(&coeffs),
        None => FREE_TRIALS.iter().map(|&k| Scalar::from_integer(k.into())).collect(),
    };
    for c in candidates {
        let next: Vec<MPoly> = gb
            .iter()
            .map(|p| p.substitute(v, &c))
            .filter(|p| !p.is_zero())
            .collect();
        let saved = x.clone();
        x[v] = Some(c);
        if back_substitute(&next, x) {
            return true;
        }
        *x = saved;
    }
    false
}

/// Rational roots of `Σ coeffs[i]·tⁱ`, by the rational root theorem.
pub fn rational_roots(coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut c: Vec<Scalar> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        return vec![];
    }
    let mut roots = Vec::new();
    let low = c.iter().position(|x| !x.is_zero()).unwrap();
    if low > 0 {
        roots.push(Scalar::zero());
        c.drain(..low);
    }
    if c.len() <= 1 {
        return roots;
    }
    let lcm = c
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * Scalar::from_integer(lcm.clone())).to_integer()).collect();
    let (a0, an) = (ints[0].abs(), ints[ints.len() - 1].abs());
    let (Some(ps), Some(qs)) = (divisors(&a0), divisors(&an)) else {
        return roots;
    };
    for p in &ps {
        for q in &qs {
            for s in [1, -1] {
                let r = Scalar::new(p * BigInt::from(s), q.clone());
                if !roots.contains(&r) && horner(&c, &r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn horner(c: &[Scalar], x: &Scalar) -> Scalar {
    c.iter().rev().fold(Scalar::zero(), |acc, k| acc * x + k)
}

/// Positive divisors by trial division; `None` for very large inputs.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n: u64 = n.try_into().ok()?;
    if n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}
