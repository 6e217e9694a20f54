//! Small algebras and extensions used by the tests, the acceptance suite and
//! the command-line examples.

use crate::cdmod::{CdLinearMap, FreeCdModule};
use crate::conformal::{Bimodule, ConformalAlgebra, SesqMap};
use crate::homotopy::{shac_of_bimodule_map, CrossedExtension, CrossedModule, TwoTermSHAC};
use crate::nonabelian::{canonical_maps, Extension, NonAbelianCocycle};
use crate::symexpr::{scalar, Poly, Scalar};

/// `Cur` of the algebra with basis `names` and products `eᵢ eⱼ = e_k` for each
/// listed `(i, j, k)`.
pub fn cur(names: &[&str], products: &[(usize, usize, usize)]) -> ConformalAlgebra {
    let r = names.len();
    let mut t = vec![vec![vec![Scalar::from_integer(0.into()); r]; r]; r];
    for &(i, j, k) in products {
        t[i][j][k] = scalar(1);
    }
    ConformalAlgebra::cur_of(FreeCdModule::new(names.iter().copied()).unwrap(), &t)
        .expect("associative base")
}

/// `Cur(k)`.
pub fn cur_k() -> ConformalAlgebra {
    cur(&["e"], &[(0, 0, 0)])
}

/// `Cur(k[x]/x²)` on `e, x`.
pub fn dual_numbers() -> ConformalAlgebra {
    cur(&["e", "x"], &[(0, 0, 0), (0, 1, 1), (1, 0, 1)])
}

/// Upper triangular 2×2 matrices on `e11, e12, e22`.
pub fn cur_t2() -> ConformalAlgebra {
    cur(&["e11", "e12", "e22"], &[(0, 0, 0), (0, 1, 1), (1, 2, 1), (2, 2, 2)])
}

/// `Cur(k × k)` on two orthogonal idempotents.
pub fn cur_kk() -> ConformalAlgebra {
    cur(&["f1", "f2"], &[(0, 0, 0), (1, 1, 1)])
}

/// `Cur(k[t]/t³)` on `1, t, t²`.
pub fn truncated_cubic() -> ConformalAlgebra {
    cur(
        &["u", "t", "t2"],
        &[(0, 0, 0), (0, 1, 1), (0, 2, 2), (1, 0, 1), (2, 0, 2), (1, 1, 2)],
    )
}

/// `Cur(k[x]/x²)` carried along `[[1, ∂], [0, 1]]`; its products involve ∂.
pub fn twisted_dual_numbers() -> ConformalAlgebra {
    let d = Poly::partial(0);
    let phi = CdLinearMap::new(
        vec![vec![Poly::one(0), d], vec![Poly::zero(0), Poly::one(0)]],
        2,
        2,
    )
    .unwrap();
    dual_numbers().transport(&phi).unwrap()
}

/// Zero product on `rank` generators named `prefix1, prefix2, …`.
pub fn trivial(prefix: &str, rank: usize) -> ConformalAlgebra {
    ConformalAlgebra::trivial(FreeCdModule::numbered(prefix, rank))
}

/// Regular actions of `Cur(k[x]/x²)` on a copy of itself with zero product,
/// and `χ = 0`.
pub fn semidirect_cocycle() -> NonAbelianCocycle {
    let b = dual_numbers();
    let a = ConformalAlgebra::trivial(b.carrier().clone());
    NonAbelianCocycle::from_bimodule(a, &Bimodule::regular(&b), SesqMap::zero(vec![2, 2], 2))
        .unwrap()
}

fn split_extension(e: ConformalAlgebra, a: ConformalAlgebra, b: ConformalAlgebra) -> Extension {
    let (alpha, beta, gamma) = canonical_maps(a.rank(), b.rank());
    Extension::new(a, b, e, alpha, beta, gamma).expect("valid extension")
}

/// `0 → span(e12) → T₂ → k × k → 0`, basis of `E` ordered `e12, e11, e22`.
pub fn t2_over_diagonal() -> Extension {
    let e = cur(&["e12", "e11", "e22"], &[(1, 1, 1), (1, 0, 0), (0, 2, 0), (2, 2, 2)]);
    split_extension(e, trivial("n", 1), cur_kk())
}

/// `0 → span(e11, e12) → T₂ → k → 0`; here `A` has a nonzero product.
pub fn t2_over_corner() -> Extension {
    let a = cur(&["e11", "e12"], &[(0, 0, 0), (0, 1, 1)]);
    split_extension(cur_t2(), a, cur_k())
}

/// `0 → span(t²) → k[t]/t³ → k[t]/t² → 0`, basis of `E` ordered `t², 1, t`.
/// This extension does not split.
pub fn cubic_over_dual() -> Extension {
    let e = cur(
        &["t2", "u", "t"],
        &[(1, 1, 1), (1, 2, 2), (1, 0, 0), (2, 1, 2), (0, 1, 0), (2, 2, 0)],
    );
    let b = cur(&["u", "t"], &[(0, 0, 0), (0, 1, 1), (1, 0, 1)]);
    split_extension(e, trivial("s", 1), b)
}

/// `Cur(k) ⊕ Cur(k)` as an extension of the second summand by the first.
pub fn sum_kk() -> Extension {
    let e = cur(&["a", "b"], &[(0, 0, 0), (1, 1, 1)]);
    split_extension(e, cur_k(), cur_k())
}

/// A `rows × cols` k[∂]-matrix from row-major entry strings such as `"D+1"`.
pub fn matrix(rows: usize, cols: usize, entries: &[&str]) -> CdLinearMap {
    let e = entries
        .chunks(cols)
        .map(|r| r.iter().map(|s| crate::symexpr::parse(s, 0).expect("entry")).collect())
        .collect();
    CdLinearMap::new(e, rows, cols).expect("shape")
}

/// Rank-one `A` and `B`, both with zero product and zero actions, and
/// `χ_λ(b, b) = λ`. Any pair of scalars `(g, h)` rescales `χ` by `g/h²`.
pub fn square_zero_line() -> Extension {
    let a = trivial("a", 1);
    let b = trivial("b", 1);
    let z = || SesqMap::zero(vec![1, 1], 1);
    let chi = SesqMap::from_fn(vec![1, 1], 1, |_| {
        crate::cdmod::ModElement::new(vec![Poly::lambda(1, 1)], 1)
    });
    let c = NonAbelianCocycle::new(a, b, z(), z(), chi).expect("cocycle");
    crate::nonabelian::build_extension(&c).expect("extension")
}

/// The split extension of [`semidirect_cocycle`].
pub fn semidirect_dual() -> Extension {
    crate::nonabelian::build_extension(&semidirect_cocycle()).expect("extension")
}

fn table_map(slots: [usize; 2], target: usize, products: &[(usize, usize, usize)]) -> SesqMap {
    SesqMap::from_fn(slots.to_vec(), target, |t| {
        let mut v = crate::cdmod::ModElement::zero(target, 1);
        for &(i, j, k) in products {
            if (i, j) == (t[0], t[1]) {
                v.set(k, Poly::one(1));
            }
        }
        v
    })
}

/// The ideal `I = k[∂]x` of `Cur(k[x]/x²)` with its inclusion and the
/// multiplication actions.
pub fn ideal_crossed_module() -> CrossedModule {
    let x = dual_numbers();
    let y = trivial("y", 1);
    let rho = matrix(2, 1, &["0", "1"]);
    let left = table_map([2, 1], 1, &[(0, 0, 0)]);
    let right = table_map([1, 2], 1, &[(0, 0, 0)]);
    CrossedModule::new(x, y, rho, left, right).expect("crossed module")
}

/// `Y = 0` and `X = A`.
pub fn zero_crossed_module(a: &ConformalAlgebra) -> CrossedModule {
    let r = a.rank();
    CrossedModule::new(
        a.clone(),
        trivial("y", 0),
        CdLinearMap::zero(r, 0),
        SesqMap::zero(vec![r, 0], 0),
        SesqMap::zero(vec![0, r], 0),
    )
    .expect("crossed module")
}

/// The strict structure of multiplication by `x` on the regular
/// `Cur(k[x]/x²)`-bimodule.
pub fn dual_numbers_map_shac() -> TwoTermSHAC {
    let a = dual_numbers();
    let m = Bimodule::regular(&a);
    shac_of_bimodule_map(&m, &m, &matrix(2, 2, &["0", "0", "1", "0"])).expect("strict structure")
}

/// `Y = Cur(k[t]/t³)` with `y₁ ∘ y₂ = t y₁ y₂` over `X = Cur(k[t]/t³)`,
/// `ρ = t·`.
pub fn cubic_crossed_module() -> CrossedModule {
    let x = truncated_cubic();
    let y = cur(&["yu", "yt", "yt2"], &[(0, 0, 1), (0, 1, 2), (1, 0, 2)]);
    let cubic = [(0, 0, 0), (0, 1, 1), (0, 2, 2), (1, 0, 1), (2, 0, 2), (1, 1, 2)];
    let rho = matrix(3, 3, &["0", "0", "0", "1", "0", "0", "0", "1", "0"]);
    CrossedModule::new(x, y, rho, table_map([3, 3], 3, &cubic), table_map([3, 3], 3, &cubic))
        .expect("crossed module")
}

/// `0 → k → Y → X → Cur(k) → 0` from [`cubic_crossed_module`], with
/// `ϱ(e) = u + p t + q t²` for the given `p, q ∈ k[∂]` and `ς(t) = yu`,
/// `ς(t²) = yt`.
pub fn cubic_crossed_extension(p: &str, q: &str) -> CrossedExtension {
    let a = cur_k();
    let m = Bimodule::regular(&a);
    let ext = CrossedExtension::new(
        m,
        cubic_crossed_module(),
        matrix(3, 1, &["0", "0", "1"]),
        matrix(1, 3, &["1", "0", "0"]),
    )
    .expect("crossed extension");
    ext.with_sections(
        matrix(3, 1, &["1", p, q]),
        matrix(3, 2, &["0", "0", "1", "0", "0", "1"]),
        matrix(3, 2, &["1", "0", "0", "1", "0", "0"]),
    )
    .expect("sections")
}
