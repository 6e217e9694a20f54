use rayon::prelude::*;

use crate::cdmod::ModElement;
use crate::report::basis_tuples;
use crate::symexpr::{Poly, Scalar};

/// A conformal sesquilinear map `M₁ × ⋯ × Mₙ → N[λ₁, …, λₙ₋₁]`, stored by its
/// values on basis tuples.
///
/// A coefficient `f(∂)` in slot `i < n` evaluated at formal value `νᵢ` becomes
/// `f(−νᵢ)`; in the last slot it becomes `f(∂ + ν₁ + ⋯ + νₙ₋₁)`. A map with no
/// slots is a single element of `N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SesqMap {
    slots: Vec<usize>,
    target: usize,
    values: Vec<ModElement>,
}

impl SesqMap {
    pub fn zero(slots: Vec<usize>, target: usize) -> SesqMap {
        let arity = slots.len().saturating_sub(1);
        let count = slots.iter().product();
        SesqMap {
            values: vec![ModElement::zero(target, arity); count],
            slots,
            target,
        }
    }

    /// Build from a function on basis tuples (evaluated in parallel).
    pub fn from_fn<F>(slots: Vec<usize>, target: usize, f: F) -> SesqMap
    where
        F: Fn(&[usize]) -> ModElement + Sync,
    {
        let arity = slots.len().saturating_sub(1);
        let values: Vec<ModElement> = basis_tuples(&slots)
            .par_iter()
            .map(|t| {
                let v = f(t);
                assert_eq!(v.rank(), target, "value rank");
                assert_eq!(v.arity(), arity, "value arity");
                v
            })
            .collect();
        SesqMap {
            slots,
            target,
            values,
        }
    }

    /// Degree-0 map holding one element.
    pub fn constant(v: ModElement) -> SesqMap {
        SesqMap {
            slots: vec![],
            target: v.rank(),
            values: vec![v.with_arity(0)],
        }
    }

    pub fn degree(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn value_arity(&self) -> usize {
        self.slots.len().saturating_sub(1)
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        assert_eq!(tuple.len(), self.slots.len(), "tuple length");
        let mut idx = 0;
        for (t, r) in tuple.iter().zip(&self.slots) {
            assert!(t < r, "basis index out of range");
            idx = idx * r + t;
        }
        idx
    }

    pub fn tuples(&self) -> Vec<Vec<usize>> {
        basis_tuples(&self.slots)
    }

    pub fn get(&self, tuple: &[usize]) -> &ModElement {
        &self.values[self.index(tuple)]
    }

    pub fn set(&mut self, tuple: &[usize], v: ModElement) {
        assert_eq!(v.rank(), self.target);
        let v = v.with_arity(self.value_arity());
        let i = self.index(tuple);
        self.values[i] = v;
    }

    pub fn values(&self) -> &[ModElement] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(ModElement::is_zero)
    }

    /// First basis tuple with a nonzero value.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, ModElement)> {
        self.tuples()
            .into_iter()
            .zip(&self.values)
            .find(|(_, v)| !v.is_zero())
            .map(|(t, v)| (t, v.clone()))
    }

    fn same_shape(&self, o: &SesqMap) {
        assert!(
            self.slots == o.slots && self.target == o.target,
            "sesquilinear map shape mismatch"
        );
    }

    pub fn add(&self, o: &SesqMap) -> SesqMap {
        self.same_shape(o);
        SesqMap {
            slots: self.slots.clone(),
            target: self.target,
            values: self.values.iter().zip(&o.values).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &SesqMap) -> SesqMap {
        self.same_shape(o);
        SesqMap {
            slots: self.slots.clone(),
            target: self.target,
            values: self.values.iter().zip(&o.values).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> SesqMap {
        self.scale(&-Scalar::from_integer(1.into()))
    }

    pub fn scale(&self, s: &Scalar) -> SesqMap {
        SesqMap {
            slots: self.slots.clone(),
            target: self.target,
            values: self.values.iter().map(|v| v.scale(s)).collect(),
        }
    }

    /// Apply `f` to every value.
    pub fn map_values(&self, target: usize, f: impl Fn(&ModElement) -> ModElement) -> SesqMap {
        SesqMap {
            slots: self.slots.clone(),
            target,
            values: self.values.iter().map(f).collect(),
        }
    }

    /// Highest ∂-degree over all stored values.
    pub fn partial_degree(&self) -> Option<u32> {
        self.values.iter().filter_map(ModElement::partial_degree).max()
    }

    /// Evaluate on arbitrary arguments at formal values `subs` (one per slot but the
    /// last). Arguments and subscripts share one ambient arity.
    pub fn eval(&self, args: &[ModElement], subs: &[Poly]) -> ModElement {
        let n = self.slots.len();
        assert_eq!(args.len(), n, "argument count");
        if n == 0 {
            return self.values[0].clone();
        }
        assert_eq!(subs.len(), n - 1, "subscript count");
        let ctx = args[0].arity();
        for (a, r) in args.iter().zip(&self.slots) {
            assert_eq!(a.arity(), ctx, "argument arity");
            assert_eq!(a.rank(), *r, "argument rank");
        }
        for s in subs {
            assert_eq!(s.arity(), ctx, "subscript arity");
        }
        let mut last_shift = Poly::partial(ctx);
        for s in subs {
            last_shift += s;
        }
        let slot_coeffs: Vec<Vec<(usize, Poly)>> = args
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let img = if i + 1 < n { -&subs[i] } else { last_shift.clone() };
                a.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (j, c.subst_partial(&img)))
                    .collect()
            })
            .collect();
        let mut out = ModElement::zero(self.target, ctx);
        let mut tuple = vec![0; n];
        self.accumulate(&slot_coeffs, 0, &Poly::one(ctx), &mut tuple, subs, ctx, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn accumulate(
        &self,
        slot_coeffs: &[Vec<(usize, Poly)>],
        depth: usize,
        acc: &Poly,
        tuple: &mut Vec<usize>,
        subs: &[Poly],
        ctx: usize,
        out: &mut ModElement,
    ) {
        if depth == slot_coeffs.len() {
            let v = &self.values[self.index(tuple)];
            if v.is_zero() {
                return;
            }
            let embedded = v.subst_lambdas(subs, ctx);
            out.add_assign(&embedded.mul_poly(acc));
            return;
        }
        for (j, c) in &slot_coeffs[depth] {
            tuple[depth] = *j;
            let next = acc * c;
            self.accumulate(slot_coeffs, depth + 1, &next, tuple, subs, ctx, out);
        }
    }
}

impl std::fmt::Debug for SesqMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "SesqMap {:?} -> {}", self.slots, self.target)?;
        for (t, v) in self.tuples().iter().zip(&self.values) {
            if !v.is_zero() {
                writeln!(f, "  {t:?} ↦ {v:?}")?;
            }
        }
        Ok(())
    }
}

/// `λ₁, …, λₖ` as polynomials of arity `ctx`.
pub fn lambdas(ctx: usize, k: usize) -> Vec<Poly> {
    (1..=k).map(|i| Poly::lambda(ctx, i)).collect()
}

/// Basis vector `i` of a rank-`rank` module in arity `ctx`.
pub fn unit(rank: usize, i: usize, ctx: usize) -> ModElement {
    ModElement::basis(rank, i, ctx)
}
