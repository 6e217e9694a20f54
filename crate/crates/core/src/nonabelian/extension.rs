use crate::cdmod::{CdLinearMap, ModElement};
use crate::conformal::{check_hom, unit, ConformalAlgebra, SesqMap};
use crate::symexpr::Poly;

use super::{check_cocycle, NonAbelianCocycle, NonAbelianError};

/// A ∂-split extension `0 → A → E → B → 0` with a stored section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    a: ConformalAlgebra,
    b: ConformalAlgebra,
    e: ConformalAlgebra,
    alpha: CdLinearMap,
    beta: CdLinearMap,
    gamma: CdLinearMap,
}

impl Extension {
    /// Verify that `α`, `β` are homomorphisms, `βα = 0`, `βγ = id` and that
    /// `[α γ]: A ⊕ B → E` is invertible over k[∂].
    pub fn new(
        a: ConformalAlgebra,
        b: ConformalAlgebra,
        e: ConformalAlgebra,
        alpha: CdLinearMap,
        beta: CdLinearMap,
        gamma: CdLinearMap,
    ) -> Result<Self, NonAbelianError> {
        let (ra, rb, re) = (a.rank(), b.rank(), e.rank());
        if (alpha.rows(), alpha.cols()) != (re, ra)
            || (beta.rows(), beta.cols()) != (rb, re)
            || (gamma.rows(), gamma.cols()) != (re, rb)
        {
            return Err(NonAbelianError::ShapeMismatch);
        }
        let assoc = e.check_associativity();
        if !assoc.passed() {
            return Err(NonAbelianError::InvalidExtension(assoc));
        }
        for (f, src, tgt) in [(&alpha, &a, &e), (&beta, &e, &b)] {
            let r = check_hom(f, src, tgt);
            if !r.passed() {
                return Err(NonAbelianError::InvalidExtension(r));
            }
        }
        if !alpha.then(&beta).is_zero() {
            return Err(NonAbelianError::NotExact);
        }
        let ext = Extension {
            a,
            b,
            e,
            alpha,
            beta,
            gamma,
        };
        ext.splitting()?;
        Ok(ext)
    }

    /// The same extension with another section.
    pub fn with_section(&self, gamma: CdLinearMap) -> Result<Self, NonAbelianError> {
        if (gamma.rows(), gamma.cols()) != (self.e.rank(), self.b.rank()) {
            return Err(NonAbelianError::ShapeMismatch);
        }
        let ext = Extension {
            gamma,
            ..self.clone()
        };
        ext.splitting()?;
        Ok(ext)
    }

    pub fn a(&self) -> &ConformalAlgebra {
        &self.a
    }

    pub fn b(&self) -> &ConformalAlgebra {
        &self.b
    }

    pub fn e(&self) -> &ConformalAlgebra {
        &self.e
    }

    pub fn alpha(&self) -> &CdLinearMap {
        &self.alpha
    }

    pub fn beta(&self) -> &CdLinearMap {
        &self.beta
    }

    pub fn gamma(&self) -> &CdLinearMap {
        &self.gamma
    }

    /// `θ = [α γ]: A ⊕ B → E`, checked to be invertible with `βγ = id`.
    pub fn theta(&self) -> CdLinearMap {
        self.splitting().expect("validated extension").0
    }

    fn splitting(&self) -> Result<(CdLinearMap, CdLinearMap), NonAbelianError> {
        if !self.gamma.then(&self.beta).is_identity() {
            return Err(NonAbelianError::NotASection);
        }
        let (ra, rb, re) = (self.a.rank(), self.b.rank(), self.e.rank());
        if ra + rb != re {
            return Err(NonAbelianError::NotExact);
        }
        let theta = CdLinearMap::block(
            &self.alpha,
            &self.gamma,
            &CdLinearMap::zero(0, ra),
            &CdLinearMap::zero(0, rb),
        );
        let inv = theta.inverse().map_err(|_| NonAbelianError::NotExact)?;
        Ok((theta, inv))
    }
}

/// The algebra `A ⊕_{(▷,◁,χ)} B` on `A ⊕ B`, without any check.
pub fn extension_algebra(c: &NonAbelianCocycle) -> ConformalAlgebra {
    let (a, b) = (c.a(), c.b());
    let (ra, rb) = (a.rank(), b.rank());
    let n = ra + rb;
    let zb = ModElement::zero(rb, 1);
    let mult = SesqMap::from_fn(vec![n, n], n, |t| match (t[0] < ra, t[1] < ra) {
        (true, true) => a.table_entry(t[0], t[1]).concat(&zb),
        (false, true) => c.left().get(&[t[0] - ra, t[1]]).concat(&zb),
        (true, false) => c.right().get(&[t[0], t[1] - ra]).concat(&zb),
        (false, false) => {
            let (i, j) = (t[0] - ra, t[1] - ra);
            c.chi().get(&[i, j]).concat(b.table_entry(i, j))
        }
    });
    ConformalAlgebra::from_mult(a.carrier().direct_sum(b.carrier()), mult)
}

/// The canonical maps `α(a) = (a, 0)`, `β(a, b) = b`, `γ(b) = (0, b)`.
pub fn canonical_maps(ra: usize, rb: usize) -> (CdLinearMap, CdLinearMap, CdLinearMap) {
    let alpha = CdLinearMap::block(
        &CdLinearMap::identity(ra),
        &CdLinearMap::zero(ra, 0),
        &CdLinearMap::zero(rb, ra),
        &CdLinearMap::zero(rb, 0),
    );
    let beta = CdLinearMap::block(
        &CdLinearMap::zero(rb, ra),
        &CdLinearMap::identity(rb),
        &CdLinearMap::zero(0, ra),
        &CdLinearMap::zero(0, rb),
    );
    let gamma = CdLinearMap::block(
        &CdLinearMap::zero(ra, rb),
        &CdLinearMap::zero(ra, 0),
        &CdLinearMap::identity(rb),
        &CdLinearMap::zero(rb, 0),
    );
    (alpha, beta, gamma)
}

/// The extension of a verified cocycle, with the canonical section.
pub fn build_extension(c: &NonAbelianCocycle) -> Result<Extension, NonAbelianError> {
    let r = check_cocycle(c);
    if !r.passed() {
        return Err(NonAbelianError::InvalidCocycle(r));
    }
    let (alpha, beta, gamma) = canonical_maps(c.a().rank(), c.b().rank());
    let e = extension_algebra(c);
    let ext = Extension {
        a: c.a().clone(),
        b: c.b().clone(),
        e,
        alpha,
        beta,
        gamma,
    };
    debug_assert!(ext.e.check_associativity().passed());
    Ok(ext)
}

/// `b ▷ a = γ(b) ∘ α(a)`, `a ◁ b = α(a) ∘ γ(b)` and
/// `χ(b₁, b₂) = γ(b₁) ∘ γ(b₂) − γ(b₁ ∘ b₂)`, read back in `A` through `θ⁻¹`.
pub fn cocycle_of_extension(ext: &Extension) -> NonAbelianCocycle {
    let (_, inv) = ext.splitting().expect("validated extension");
    let (ra, rb) = (ext.a.rank(), ext.b.rank());
    let l = Poly::lambda(1, 1);
    let to_a = |x: &ModElement| {
        let y = inv.on(x);
        debug_assert!(y.slice(ra, rb).is_zero(), "value outside α(A)");
        y.slice(0, ra)
    };
    let g = |i: usize| ext.gamma.on(&unit(rb, i, 1));
    let al = |i: usize| ext.alpha.on(&unit(ra, i, 1));
    let left = SesqMap::from_fn(vec![rb, ra], ra, |t| to_a(&ext.e.product(&g(t[0]), &al(t[1]), &l)));
    let right =
        SesqMap::from_fn(vec![ra, rb], ra, |t| to_a(&ext.e.product(&al(t[0]), &g(t[1]), &l)));
    let chi = SesqMap::from_fn(vec![rb, rb], ra, |t| {
        let bb = ext.b.product(&unit(rb, t[0], 1), &unit(rb, t[1], 1), &l);
        to_a(&ext.e.product(&g(t[0]), &g(t[1]), &l).sub(&ext.gamma.on(&bb)))
    });
    NonAbelianCocycle::new_unchecked(ext.a.clone(), ext.b.clone(), left, right, chi)
        .expect("shapes")
}
