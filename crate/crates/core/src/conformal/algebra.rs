use num_traits::Zero;

use crate::cdmod::{CdLinearMap, FreeCdModule, ModElement};
use crate::report::{check_identity, CheckReport};
use crate::symexpr::{Poly, Scalar};

use super::sesq::{unit, SesqMap};
use super::ConformalError;

/// A finite-rank associative conformal algebra, stored by `eᵢ ∘_λ eⱼ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalAlgebra {
    carrier: FreeCdModule,
    mult: SesqMap,
}

impl ConformalAlgebra {
    /// Build and verify associativity.
    pub fn new(carrier: FreeCdModule, table: Vec<Vec<ModElement>>) -> Result<Self, ConformalError> {
        let a = Self::new_unchecked(carrier, table)?;
        let r = a.check_associativity();
        if !r.passed() {
            return Err(ConformalError::NotAssociative(r));
        }
        Ok(a)
    }

    /// Build without the associativity check (for negative controls and for
    /// algebras whose validity is decided later).
    pub fn new_unchecked(
        carrier: FreeCdModule,
        table: Vec<Vec<ModElement>>,
    ) -> Result<Self, ConformalError> {
        let r = carrier.rank();
        if table.len() != r || table.iter().any(|row| row.len() != r) {
            return Err(ConformalError::ShapeMismatch);
        }
        for v in table.iter().flatten() {
            if v.rank() != r {
                return Err(ConformalError::ShapeMismatch);
            }
        }
        let mult = SesqMap::from_fn(vec![r, r], r, |t| table[t[0]][t[1]].with_arity(1));
        Ok(ConformalAlgebra { carrier, mult })
    }

    pub fn from_mult(carrier: FreeCdModule, mult: SesqMap) -> Self {
        let r = carrier.rank();
        assert_eq!(mult.slots(), &[r, r]);
        assert_eq!(mult.target(), r);
        ConformalAlgebra { carrier, mult }
    }

    /// The algebra with zero product on a rank-`rank` carrier.
    pub fn trivial(carrier: FreeCdModule) -> Self {
        let r = carrier.rank();
        ConformalAlgebra {
            mult: SesqMap::zero(vec![r, r], r),
            carrier,
        }
    }

    pub fn carrier(&self) -> &FreeCdModule {
        &self.carrier
    }

    pub fn rank(&self) -> usize {
        self.carrier.rank()
    }

    /// The product as a 2-cochain `𝔪`.
    pub fn mult(&self) -> &SesqMap {
        &self.mult
    }

    pub fn table_entry(&self, i: usize, j: usize) -> &ModElement {
        self.mult.get(&[i, j])
    }

    pub fn is_trivial(&self) -> bool {
        self.mult.is_zero()
    }

    /// `x ∘_ν y`; `x`, `y`, `nu` share one arity.
    pub fn product(&self, x: &ModElement, y: &ModElement, nu: &Poly) -> ModElement {
        self.mult.eval(&[x.clone(), y.clone()], std::slice::from_ref(nu))
    }

    /// `(a ∘_λ b) ∘_{λ+μ} c − a ∘_λ (b ∘_μ c)` on every basis triple.
    pub fn check_associativity(&self) -> CheckReport {
        let r = self.rank();
        check_identity("associativity", &[r, r, r], |t| {
            let (l, m) = (Poly::lambda(2, 1), Poly::lambda(2, 2));
            let [a, b, c] = [t[0], t[1], t[2]].map(|i| unit(r, i, 2));
            let lhs = self.product(&self.product(&a, &b, &l), &c, &(&l + &m));
            let rhs = self.product(&a, &self.product(&b, &c, &m), &l);
            lhs.sub(&rhs)
        })
    }

    /// `Cur(T)` for the structure constants `table[i][j][k]` of `eᵢ·eⱼ`.
    pub fn cur_of(
        carrier: FreeCdModule,
        table: &[Vec<Vec<Scalar>>],
    ) -> Result<Self, ConformalError> {
        let r = carrier.rank();
        if table.len() != r
            || table
                .iter()
                .any(|row| row.len() != r || row.iter().any(|v| v.len() != r))
        {
            return Err(ConformalError::ShapeMismatch);
        }
        if !base_is_associative(table) {
            return Err(ConformalError::NotAssociativeBase);
        }
        Ok(Self::cur_of_unchecked(carrier, table))
    }

    pub fn cur_of_unchecked(carrier: FreeCdModule, table: &[Vec<Vec<Scalar>>]) -> Self {
        let r = carrier.rank();
        let mult = SesqMap::from_fn(vec![r, r], r, |t| {
            ModElement::new(
                table[t[0]][t[1]]
                    .iter()
                    .map(|c| Poly::constant(1, c.clone()))
                    .collect(),
                1,
            )
        });
        ConformalAlgebra { carrier, mult }
    }

    /// Block-diagonal product on `self ⊕ other`.
    pub fn direct_sum(&self, other: &ConformalAlgebra) -> ConformalAlgebra {
        let (ra, rb) = (self.rank(), other.rank());
        let n = ra + rb;
        let mult = SesqMap::from_fn(vec![n, n], n, |t| match (t[0] < ra, t[1] < ra) {
            (true, true) => self.mult.get(t).concat(&ModElement::zero(rb, 1)),
            (false, false) => {
                ModElement::zero(ra, 1).concat(other.mult.get(&[t[0] - ra, t[1] - ra]))
            }
            _ => ModElement::zero(n, 1),
        });
        ConformalAlgebra {
            carrier: self.carrier.direct_sum(&other.carrier),
            mult,
        }
    }

    /// `A ⋊ B` on `M ⊕ B` (module coordinates first), with
    /// `(a₁,b₁) ∘_λ (a₂,b₂) = (a₁ ◁_λ b₂ + b₁ ▷_λ a₂, b₁ ∘_λ b₂)`.
    pub fn semidirect_product(m: &super::Bimodule) -> Result<ConformalAlgebra, ConformalError> {
        let r = m.check();
        if !r.passed() {
            return Err(ConformalError::InvalidBimodule(r));
        }
        Ok(Self::semidirect_product_unchecked(m))
    }

    pub fn semidirect_product_unchecked(m: &super::Bimodule) -> ConformalAlgebra {
        let b = m.algebra();
        let (ra, rb) = (m.rank(), b.rank());
        let n = ra + rb;
        let mult = SesqMap::from_fn(vec![n, n], n, |t| match (t[0] < ra, t[1] < ra) {
            (true, true) => ModElement::zero(n, 1),
            (true, false) => m.right().get(&[t[0], t[1] - ra]).concat(&ModElement::zero(rb, 1)),
            (false, true) => m.left().get(&[t[0] - ra, t[1]]).concat(&ModElement::zero(rb, 1)),
            (false, false) => ModElement::zero(ra, 1).concat(b.mult.get(&[t[0] - ra, t[1] - ra])),
        });
        ConformalAlgebra {
            carrier: m.carrier().direct_sum(b.carrier()),
            mult,
        }
    }

    /// The algebra structure carried over along an invertible `φ`, so that `φ`
    /// becomes an isomorphism `self → result`.
    pub fn transport(&self, phi: &CdLinearMap) -> Result<ConformalAlgebra, ConformalError> {
        let r = self.rank();
        if phi.rows() != r || phi.cols() != r {
            return Err(ConformalError::ShapeMismatch);
        }
        let inv = phi.inverse().map_err(|_| ConformalError::NotInvertible)?;
        let mult = SesqMap::from_fn(vec![r, r], r, |t| {
            let x = inv.on(&unit(r, t[0], 1));
            let y = inv.on(&unit(r, t[1], 1));
            phi.on(&self.product(&x, &y, &Poly::lambda(1, 1)))
        });
        Ok(ConformalAlgebra {
            carrier: self.carrier.clone(),
            mult,
        })
    }

    /// Largest ∂-degree in the structure table.
    pub fn partial_degree(&self) -> u32 {
        self.mult.partial_degree().unwrap_or(0)
    }
}

/// `(xy)z = x(yz)` for a structure-constant table over k.
#[allow(clippy::needless_range_loop)]
pub fn base_is_associative(t: &[Vec<Vec<Scalar>>]) -> bool {
    let r = t.len();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                for out in 0..r {
                    let mut lhs = Scalar::zero();
                    let mut rhs = Scalar::zero();
                    for p in 0..r {
                        lhs += &t[i][j][p] * &t[p][k][out];
                        rhs += &t[j][k][p] * &t[i][p][out];
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}
