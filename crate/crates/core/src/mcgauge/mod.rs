//! The sub-DGLA `𝓛 ⊂ C^{•+1}(A ⊕ B, A ⊕ B)` of cochains with values in `A`
//! and at least one `B` argument, Maurer–Cartan elements, and gauge action.
//!
//! Cochains live on the ambient algebra `A ⊕ B` (A coordinates first). A
//! component is named by the arrangement of `A` and `B` among its arguments;
//! `L_{l,k}` is the span of arrangements with `l` copies of `A` and `k` of `B`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cdmod::{CdLinearMap, ModElement};
use crate::conformal::{unit, ConformalAlgebra, SesqMap};
use crate::hochschild::{gbracket, Cochain};
use crate::nonabelian::NonAbelianCocycle;
use crate::report::{CheckReport, Failure};
use crate::symexpr::ratio;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McError {
    #[error("cochain shape does not match A ⊕ B")]
    ShapeMismatch,
    #[error("cochain has a value outside A or a component without B arguments")]
    NotInL,
    #[error("ad_ξ is not nilpotent of order 2 on this element")]
    NotNilpotent,
}

/// An element of `𝓛`, stored as a cochain on `A ⊕ B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedCochain {
    ra: usize,
    rb: usize,
    cochain: Cochain,
}

impl MixedCochain {
    /// Check self-valued shape on `A ⊕ B`, values in `A`, and vanishing on
    /// arrangements without `B`.
    pub fn new(ra: usize, rb: usize, cochain: Cochain) -> Result<Self, McError> {
        let n = ra + rb;
        if cochain.degree() == 0 || cochain.target() != n || cochain.slots().iter().any(|&s| s != n) {
            return Err(McError::ShapeMismatch);
        }
        let m = MixedCochain { ra, rb, cochain };
        if !m.outside_l().is_empty() {
            return Err(McError::NotInL);
        }
        Ok(m)
    }

    pub fn cochain(&self) -> &Cochain {
        &self.cochain
    }

    /// Number of arguments.
    pub fn arity(&self) -> usize {
        self.cochain.degree()
    }

    /// `(number of A arguments, number of B arguments)` of a basis tuple.
    pub fn bidegree_of(&self, tuple: &[usize]) -> (usize, usize) {
        let l = tuple.iter().filter(|&&i| i < self.ra).count();
        (l, tuple.len() - l)
    }

    /// Bidegrees `(l, k)` of the nonzero components.
    pub fn bidegrees(&self) -> BTreeSet<(usize, usize)> {
        self.cochain
            .tuples()
            .into_iter()
            .zip(self.cochain.values())
            .filter(|(_, v)| !v.is_zero())
            .map(|(t, _)| self.bidegree_of(&t))
            .collect()
    }

    /// The `L_{l,k}` component.
    pub fn component(&self, l: usize, k: usize) -> MixedCochain {
        let mut c = self.cochain.clone();
        for t in c.tuples() {
            if self.bidegree_of(&t) != (l, k) {
                let z = ModElement::zero(c.target(), c.value_arity());
                c.set(&t, z);
            }
        }
        MixedCochain { cochain: c, ..*self }
    }

    fn outside_l(&self) -> Vec<(Vec<usize>, ModElement)> {
        self.cochain
            .tuples()
            .into_iter()
            .zip(self.cochain.values())
            .filter(|(t, v)| {
                !v.is_zero() && (self.bidegree_of(t).1 == 0 || !v.slice(self.ra, self.rb).is_zero())
            })
            .map(|(t, v)| (t, v.clone()))
            .collect()
    }
}

/// A degree-1 element `χ + ▷ + ◁` of `𝓛`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McElement(pub MixedCochain);

/// A gauge element `ξ ∈ 𝓛⁰`, i.e. a k[∂]-linear `B → A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeParameter {
    pub xi: CdLinearMap,
}

/// `A ⊕ B` with its background product `𝔪_A + 𝔪_B`.
#[derive(Clone, Debug)]
pub struct Ambient {
    a: ConformalAlgebra,
    b: ConformalAlgebra,
    sum: ConformalAlgebra,
}

/// The associator component named by each arrangement of three arguments.
pub fn arrangement_label(arrangement: &str) -> &'static str {
    match arrangement {
        "BBA" => "coh1",
        "ABB" => "coh2",
        "BAB" => "coh3",
        "AAB" => "coh4",
        "BAA" => "coh4'",
        "ABA" => "coh4''",
        "BBB" => "coh5",
        _ => "A-associativity",
    }
}

impl Ambient {
    pub fn new(a: &ConformalAlgebra, b: &ConformalAlgebra) -> Self {
        Ambient {
            a: a.clone(),
            b: b.clone(),
            sum: a.direct_sum(b),
        }
    }

    pub fn of(c: &NonAbelianCocycle) -> Self {
        Self::new(c.a(), c.b())
    }

    pub fn ranks(&self) -> (usize, usize) {
        (self.a.rank(), self.b.rank())
    }

    /// `𝔪_A + 𝔪_B`.
    pub fn background(&self) -> &Cochain {
        self.sum.mult()
    }

    fn wrap(&self, c: Cochain) -> MixedCochain {
        let (ra, rb) = self.ranks();
        MixedCochain { ra, rb, cochain: c }
    }

    fn check(&self, c: Cochain) -> Result<MixedCochain, McError> {
        let (ra, rb) = self.ranks();
        MixedCochain::new(ra, rb, c)
    }

    fn a_value(&self, v: &ModElement) -> ModElement {
        v.concat(&ModElement::zero(self.b.rank(), v.arity()))
    }

    /// `(▷, ◁, χ) ↦ χ + ▷ + ◁`.
    pub fn embed(&self, c: &NonAbelianCocycle) -> Result<McElement, McError> {
        if c.a() != &self.a || c.b() != &self.b {
            return Err(McError::ShapeMismatch);
        }
        let (ra, rb) = self.ranks();
        let n = ra + rb;
        let m = SesqMap::from_fn(vec![n, n], n, |t| {
            let v = match (t[0] < ra, t[1] < ra) {
                (true, true) => return ModElement::zero(n, 1),
                (false, true) => c.left().get(&[t[0] - ra, t[1]]),
                (true, false) => c.right().get(&[t[0], t[1] - ra]),
                (false, false) => c.chi().get(&[t[0] - ra, t[1] - ra]),
            };
            self.a_value(v)
        });
        Ok(McElement(self.wrap(m)))
    }

    /// Inverse of [`embed`](Self::embed).
    pub fn extract(&self, e: &McElement) -> Result<NonAbelianCocycle, McError> {
        let (ra, rb) = self.ranks();
        let c = &e.0.cochain;
        if e.0.ra != ra || e.0.rb != rb || c.degree() != 2 {
            return Err(McError::ShapeMismatch);
        }
        let at = |i: usize, j: usize| c.get(&[i, j]).slice(0, ra);
        let left = SesqMap::from_fn(vec![rb, ra], ra, |t| at(t[0] + ra, t[1]));
        let right = SesqMap::from_fn(vec![ra, rb], ra, |t| at(t[0], t[1] + ra));
        let chi = SesqMap::from_fn(vec![rb, rb], ra, |t| at(t[0] + ra, t[1] + ra));
        NonAbelianCocycle::new_unchecked(self.a.clone(), self.b.clone(), left, right, chi)
            .map_err(|_| McError::ShapeMismatch)
    }

    /// `ξ` as a degree-1 cochain on `A ⊕ B`.
    pub fn gauge_cochain(&self, xi: &GaugeParameter) -> Result<MixedCochain, McError> {
        let (ra, rb) = self.ranks();
        if (xi.xi.rows(), xi.xi.cols()) != (ra, rb) {
            return Err(McError::ShapeMismatch);
        }
        let n = ra + rb;
        let m = SesqMap::from_fn(vec![n], n, |t| {
            if t[0] < ra {
                ModElement::zero(n, 0)
            } else {
                self.a_value(&xi.xi.on(&unit(rb, t[0] - ra, 0)))
            }
        });
        Ok(self.wrap(m))
    }

    pub fn bracket(&self, f: &MixedCochain, g: &MixedCochain) -> MixedCochain {
        self.wrap(gbracket(&f.cochain, &g.cochain).expect("self-valued cochains"))
    }

    /// `d̄ f = [𝔪_A + 𝔪_B, f]`.
    pub fn dbar(&self, f: &MixedCochain) -> MixedCochain {
        self.wrap(gbracket(self.background(), &f.cochain).expect("self-valued cochains"))
    }

    /// The Maurer–Cartan residual `d̄𝔠 + ½[𝔠, 𝔠]`.
    pub fn mc_residual(&self, c: &McElement) -> Cochain {
        let d = self.dbar(&c.0).cochain;
        let sq = self.bracket(&c.0, &c.0).cochain;
        d.add(&sq.scale(&ratio(1, 2)))
    }

    /// Exact vanishing of the MC residual; failures are labelled by the
    /// associator component of their arrangement and carry local indices.
    pub fn mc_check(&self, c: &McElement) -> CheckReport {
        let ra = self.a.rank();
        let r = self.mc_residual(c);
        let failures = r
            .tuples()
            .into_iter()
            .zip(r.values())
            .filter(|(_, v)| !v.is_zero())
            .map(|(t, v)| {
                let arr: String = t.iter().map(|&i| if i < ra { 'A' } else { 'B' }).collect();
                let local = t.iter().map(|&i| if i < ra { i } else { i - ra }).collect();
                let label = if v.slice(ra, self.b.rank()).is_zero() {
                    arrangement_label(&arr)
                } else {
                    "B-associativity"
                };
                Failure {
                    identity: label.to_string(),
                    tuple: local,
                    difference: v.clone(),
                }
            })
            .collect();
        CheckReport { failures }
    }

    /// `e^{ad ξ}𝔠 − (e^{ad ξ} − 1)/ad ξ · d̄ξ`, which by nilpotency is
    /// `𝔠 + [ξ, 𝔠] − d̄ξ − ½[ξ, d̄ξ]`.
    pub fn gauge_transform(&self, c: &McElement, xi: &GaugeParameter) -> Result<McElement, McError> {
        let x = self.gauge_cochain(xi)?;
        let ad_c = self.bracket(&x, &c.0);
        let dx = self.dbar(&x);
        let ad_dx = self.bracket(&x, &dx);
        if !self.bracket(&x, &ad_c).cochain.is_zero() || !self.bracket(&x, &ad_dx).cochain.is_zero() {
            return Err(McError::NotNilpotent);
        }
        let out = c
            .0
            .cochain
            .add(&ad_c.cochain)
            .sub(&dx.cochain)
            .sub(&ad_dx.cochain.scale(&ratio(1, 2)));
        Ok(McElement(self.check(out)?))
    }

    /// Membership of each sample in `𝓛`, `[L_{l,k}, L_{l',k'}] ⊆ L_{l+l'−1, k+k'}`
    /// for every ordered pair, and `d̄ L_{l,k} ⊆ L_{l+1,k} ⊕ L_{l,k+1}`.
    pub fn check_subdgla_closure(&self, samples: &[MixedCochain]) -> CheckReport {
        let mut rep = CheckReport::pass();
        let stray = |name: &str, c: &MixedCochain, allowed: &BTreeSet<(usize, usize)>| {
            let failures = c
                .cochain
                .tuples()
                .into_iter()
                .zip(c.cochain.values())
                .filter(|(t, v)| {
                    !v.is_zero()
                        && (!allowed.contains(&c.bidegree_of(t))
                            || !v.slice(c.ra, c.rb).is_zero())
                })
                .map(|(t, v)| Failure {
                    identity: name.to_string(),
                    tuple: t,
                    difference: v.clone(),
                })
                .collect();
            CheckReport { failures }
        };
        for s in samples {
            for (t, v) in s.outside_l() {
                rep.merge(CheckReport::fail("membership", t, v));
            }
        }
        for f in samples {
            for g in samples {
                let allowed = f
                    .bidegrees()
                    .iter()
                    .flat_map(|&(l, k)| {
                        g.bidegrees()
                            .into_iter()
                            .filter(move |&(l2, _)| l + l2 >= 1)
                            .map(move |(l2, k2)| (l + l2 - 1, k + k2))
                    })
                    .collect();
                rep.merge(stray("bracket-closure", &self.bracket(f, g), &allowed));
            }
            let allowed = f
                .bidegrees()
                .iter()
                .flat_map(|&(l, k)| [(l + 1, k), (l, k + 1)])
                .collect();
            rep.merge(stray("differential-closure", &self.dbar(f), &allowed));
        }
        rep
    }
}

/// `(▷, ◁, χ) ↦ χ + ▷ + ◁` on the cocycle's own `A ⊕ B`.
pub fn embed_cocycle(c: &NonAbelianCocycle) -> McElement {
    Ambient::of(c).embed(c).expect("matching ambient")
}

/// The cocycle of an MC element over `(a, b)`.
pub fn extract_cocycle(
    a: &ConformalAlgebra,
    b: &ConformalAlgebra,
    e: &McElement,
) -> Result<NonAbelianCocycle, McError> {
    Ambient::new(a, b).extract(e)
}

#[cfg(test)]
mod tests;
