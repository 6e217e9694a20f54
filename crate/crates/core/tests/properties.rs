use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use confext::cdmod::{smith_normal_form, solve_over_kd, CdLinearMap, ModElement};
use confext::conformal::{check_derivation, unit, Bimodule};
use confext::fixtures::*;
use confext::groebner::{buchberger, MPoly, MonomialOrder};
use confext::hochschild::{differential, random_cochain, solve_coboundary, Truncation};
use confext::mcgauge::{embed_cocycle, Ambient, GaugeParameter};
use confext::nonabelian::{
    check_cocycle, check_equivalence_witness, cocycle_of_extension, equivalence_transform,
    EquivalenceWitness,
};
use confext::symexpr::{parse, Poly, Scalar, VarId};

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| confext::symexpr::ratio(n, d))
}

/// Up to six terms in `∂, λ₁, λ₂`, total degree at most four.
fn poly2() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..=2, 0u32..=1, 0u32..=1), small_scalar()), 0..=6).prop_map(|ts| {
        ts.into_iter().fold(Poly::zero(2), |acc, ((d, a, b), c)| {
            &acc + &Poly::monomial(2, vec![d, a, b], c)
        })
    })
}

/// A polynomial in `∂` alone of degree at most `deg`.
fn poly_d(deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-3i64..=3, deg + 1).prop_map(|cs| {
        let cs: Vec<Scalar> = cs.into_iter().map(confext::symexpr::scalar).collect();
        Poly::from_partial_coeffs(0, &cs)
    })
}

fn kd_matrix(rows: usize, cols: usize) -> impl Strategy<Value = CdLinearMap> {
    prop::collection::vec(poly_d(2), rows * cols).prop_map(move |es| {
        let entries = es.chunks(cols).map(|r| r.to_vec()).collect();
        CdLinearMap::new(entries, rows, cols).unwrap()
    })
}

fn sized_matrix() -> impl Strategy<Value = CdLinearMap> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| kd_matrix(r, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(p in poly2(), q in poly2(), r in poly2()) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p - &p), &Poly::zero(2));
    }

    #[test]
    fn print_parse_round_trip(p in poly2()) {
        prop_assert_eq!(parse(&p.to_string(), 2).unwrap(), p);
    }

    #[test]
    fn substitution_is_a_homomorphism(p in poly2(), q in poly2(), a in poly2(), b in poly2()) {
        let s: BTreeMap<VarId, Poly> = [(VarId::Partial, a), (VarId::Lambda(2), b)].into_iter().collect();
        let sub = |x: &Poly| x.substitute(&s).unwrap();
        prop_assert_eq!(sub(&(&p * &q)), &sub(&p) * &sub(&q));
        prop_assert_eq!(sub(&(&p + &q)), &sub(&p) + &sub(&q));
    }

    #[test]
    fn smith_form_diagonalises(m in sized_matrix()) {
        let s = smith_normal_form(&m);
        let d = s.left.compose(&m).unwrap().compose(&s.right).unwrap();
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let want = if i == j && i < s.rank() { s.diagonal[i].clone() } else { Poly::zero(0) };
                prop_assert_eq!(d.entry(i, j), &want);
            }
        }
        for w in s.diagonal.windows(2) {
            prop_assert!(w[1].div_rem_partial(&w[0]).1.is_zero());
        }
    }

    #[test]
    fn kd_solutions_verify(m in sized_matrix(), x in prop::collection::vec(poly_d(1), 3)) {
        let x = ModElement::new(x[..m.cols()].to_vec(), 0);
        let b = m.on(&x);
        let sol = solve_over_kd(&m, &b).expect("b is in the image");
        prop_assert_eq!(m.on(&sol.particular), b);
        for k in &sol.kernel {
            prop_assert!(m.on(k).is_zero());
        }
    }

    #[test]
    fn sesquilinearity_on_t2(f in poly_d(3), g in poly_d(3), i in 0usize..3, j in 0usize..3) {
        let a = cur_t2();
        let l = Poly::lambda(1, 1);
        let (f1, g1) = (f.with_arity(1), g.with_arity(1));
        let lhs = a.product(&unit(3, i, 1).mul_poly(&f1), &unit(3, j, 1).mul_poly(&g1), &l);
        let f_at = f1.subst_partial(&-&l);
        let g_at = g1.subst_partial(&(&l + &Poly::partial(1)));
        let rhs = a.product(&unit(3, i, 1), &unit(3, j, 1), &l).mul_poly(&(&f_at * &g_at));
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn differential_squares_to_zero(seed in any::<u64>(), n in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Bimodule::regular(&cur_t2());
        let phi = random_cochain(&mut rng, vec![3; n], 3, Truncation::new(2, 1), 0.3);
        prop_assert!(differential(&m, &differential(&m, &phi)).is_zero());
    }

    #[test]
    fn coboundaries_are_solved(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Bimodule::regular(&dual_numbers());
        let psi = random_cochain(&mut rng, vec![2], 2, Truncation::new(1, 0), 0.5);
        let target = differential(&m, &psi);
        let found = solve_coboundary(&m, &target, Truncation::new(1, 0)).unwrap();
        prop_assert_eq!(differential(&m, &found), target);
    }

    #[test]
    fn derivations_close_under_commutator(a in poly_d(1), b in poly_d(1), c in poly_d(1), d in poly_d(1)) {
        // Multiples of ∂ plus scalar multiples of the Euler derivation x ↦ x.
        let alg = dual_numbers();
        let der = |p: &Poly, q: &Poly| {
            let dp = Poly::partial(0).scale(&p.constant_term());
            let euler = &dp + &Poly::constant(0, q.constant_term());
            CdLinearMap::new(vec![vec![dp, Poly::zero(0)], vec![Poly::zero(0), euler]], 2, 2).unwrap()
        };
        let (d1, d2) = (der(&a, &b), der(&c, &d));
        prop_assert!(check_derivation(&d1, &alg).passed());
        prop_assert!(check_derivation(&d2, &alg).passed());
        let comm = d2.then(&d1).sub(&d1.then(&d2));
        prop_assert!(check_derivation(&comm, &alg).passed());
    }

    #[test]
    fn equivalence_is_transitive(seed in any::<u64>(), which in 0usize..4) {
        let e = [t2_over_diagonal(), t2_over_corner(), cubic_over_dual(), sum_kk()][which].clone();
        let c = cocycle_of_extension(&e);
        let (ra, rb) = (c.a().rank(), c.b().rank());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut delta = || confext::hochschild::cochain_map(&random_cochain(&mut rng, vec![rb], ra, Truncation::new(1, 0), 0.5));
        let (d1, d2) = (delta(), delta());
        let c1 = equivalence_transform(&c, &d1).unwrap();
        let c2 = equivalence_transform(&c1, &d2).unwrap();
        prop_assert!(check_cocycle(&c2).passed());
        let w = EquivalenceWitness { delta: d1.add(&d2) };
        prop_assert!(check_equivalence_witness(&c2, &c, &w).unwrap().passed());
    }

    #[test]
    fn gauge_preserves_mc_and_degree_zero_is_abelian(seed in any::<u64>()) {
        let c = cocycle_of_extension(&t2_over_corner());
        let amb = Ambient::of(&c);
        let (ra, rb) = amb.ranks();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut xi = || GaugeParameter {
            xi: confext::hochschild::cochain_map(&random_cochain(&mut rng, vec![rb], ra, Truncation::new(2, 0), 0.5)),
        };
        let (x1, x2) = (xi(), xi());
        let g = amb.gauge_transform(&embed_cocycle(&c), &x1).unwrap();
        prop_assert!(amb.mc_check(&g).passed());
        let (l1, l2) = (amb.gauge_cochain(&x1).unwrap(), amb.gauge_cochain(&x2).unwrap());
        prop_assert!(amb.bracket(&l1, &l2).cochain().is_zero());
    }

    #[test]
    fn groebner_basis_ignores_generator_order(
        cs in prop::collection::vec((0u32..=2, 0u32..=2, -3i64..=3), 2..=6),
        split in 1usize..5,
    ) {
        let mono = |(a, b, c): &(u32, u32, i64)| MPoly::monomial(vec![*a, *b], confext::symexpr::scalar(*c));
        let k = split.min(cs.len() - 1);
        let gens = vec![
            cs[..k].iter().map(mono).fold(MPoly::zero(2), |acc, m| acc.add(&m)),
            cs[k..].iter().map(mono).fold(MPoly::var(2, 0), |acc, m| acc.add(&m)),
            MPoly::var(2, 1).mul(&MPoly::var(2, 1)).sub(&MPoly::var(2, 0)),
        ];
        let mut rev = gens.clone();
        rev.reverse();
        for ord in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
            prop_assert_eq!(buchberger(&gens, ord), buchberger(&rev, ord));
        }
    }
}
