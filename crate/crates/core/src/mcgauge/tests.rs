use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fixtures::*;
use crate::hochschild::{random_cochain, Truncation};
use crate::nonabelian::{
    build_extension, check_cocycle, cocycle_of_extension, equivalence_transform, Extension,
};
use crate::symexpr::{parse, Poly};

fn extensions() -> Vec<Extension> {
    vec![t2_over_diagonal(), t2_over_corner(), cubic_over_dual(), sum_kk()]
}

fn cocycles() -> Vec<NonAbelianCocycle> {
    let mut v: Vec<_> = extensions().iter().map(cocycle_of_extension).collect();
    v.push(semidirect_cocycle());
    v
}

fn random_xi(rng: &mut ChaCha8Rng, ra: usize, rb: usize) -> GaugeParameter {
    let c = random_cochain(rng, vec![rb], ra, Truncation::new(2, 0), 0.5);
    GaugeParameter {
        xi: crate::hochschild::cochain_map(&c),
    }
}

/// A random element of `𝓛` with `arity` arguments.
fn random_l(rng: &mut ChaCha8Rng, amb: &Ambient, arity: usize) -> MixedCochain {
    let (ra, rb) = amb.ranks();
    let n = ra + rb;
    let raw = random_cochain(rng, vec![n; arity], ra, Truncation::new(1, 1), 0.3);
    let c = SesqMap::from_fn(vec![n; arity], n, |t| {
        if t.iter().all(|&i| i < ra) {
            ModElement::zero(n, arity - 1)
        } else {
            raw.get(t).concat(&ModElement::zero(rb, arity - 1))
        }
    });
    MixedCochain::new(ra, rb, c).unwrap()
}

fn perturb(rng: &mut ChaCha8Rng, c: &NonAbelianCocycle) -> NonAbelianCocycle {
    let (ra, rb) = (c.a().rank(), c.b().rank());
    let noise = random_cochain(rng, vec![rb, rb], ra, Truncation::new(1, 1), 0.3);
    c.with_chi(c.chi().add(&noise)).unwrap()
}

#[test]
fn embed_extract_round_trip() {
    for c in cocycles() {
        let e = embed_cocycle(&c);
        assert_eq!(extract_cocycle(c.a(), c.b(), &e).unwrap(), c);
    }
    let z = NonAbelianCocycle::zero(cur_k(), dual_numbers());
    assert!(embed_cocycle(&z).0.cochain().is_zero());
    let s = embed_cocycle(&semidirect_cocycle());
    assert!(!s.0.bidegrees().contains(&(0, 2)));
    assert!(s.0.bidegrees().contains(&(1, 1)));
}

#[test]
fn mc_agrees_with_cocycle_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for c in cocycles() {
        let amb = Ambient::of(&c);
        assert!(amb.mc_check(&embed_cocycle(&c)).passed());
        for _ in 0..10 {
            let bad = perturb(&mut rng, &c);
            let direct = check_cocycle(&bad);
            let mc = amb.mc_check(&embed_cocycle(&bad));
            assert_eq!(direct.passed(), mc.passed());
            let key = |r: &CheckReport| {
                let mut v: Vec<_> = r.failures.iter().map(|f| (f.identity.clone(), f.tuple.clone())).collect();
                v.sort();
                v
            };
            assert_eq!(key(&direct), key(&mc));
            for f in &mc.failures {
                let g = direct
                    .failures
                    .iter()
                    .find(|g| g.identity == f.identity && g.tuple == f.tuple)
                    .unwrap();
                let lifted = g.difference.concat(&ModElement::zero(c.b().rank(), 2));
                assert!(lifted == f.difference || lifted.neg() == f.difference);
            }
        }
    }
}

#[test]
fn gauge_matches_equivalence_transform() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for c in cocycles() {
        let amb = Ambient::of(&c);
        let (ra, rb) = amb.ranks();
        let e = embed_cocycle(&c);
        let zero = GaugeParameter {
            xi: CdLinearMap::zero(ra, rb),
        };
        assert_eq!(amb.gauge_transform(&e, &zero).unwrap(), e);
        for _ in 0..3 {
            let xi = random_xi(&mut rng, ra, rb);
            let g = amb.gauge_transform(&e, &xi).unwrap();
            assert!(amb.mc_check(&g).passed());
            let via_gauge = amb.extract(&g).unwrap();
            let direct = equivalence_transform(&c, &xi.xi).unwrap();
            assert_eq!(via_gauge, direct);
        }
    }
}

#[test]
fn gauge_of_zero_element() {
    let (a, b) = (cur_t2(), cur_kk());
    let amb = Ambient::new(&a, &b);
    let xi = GaugeParameter {
        xi: CdLinearMap::new(
            vec![
                vec![parse("D", 0).unwrap(), Poly::one(0)],
                vec![Poly::zero(0), Poly::int(0, 2)],
                vec![Poly::one(0), Poly::zero(0)],
            ],
            3,
            2,
        )
        .unwrap(),
    };
    let zero = embed_cocycle(&NonAbelianCocycle::zero(a.clone(), b.clone()));
    let g = amb.gauge_transform(&zero, &xi).unwrap();
    let x = amb.gauge_cochain(&xi).unwrap();
    let dx = amb.dbar(&x);
    let expect = dx.cochain().neg().sub(&amb.bracket(&x, &dx).cochain().scale(&ratio(1, 2)));
    assert_eq!(g.0.cochain(), &expect);
    // Closed form: ▷ = −ξ(b)∘a, ◁ = −a∘ξ(b), χ = ξ(b₁∘b₂) + ξ(b₁)∘ξ(b₂).
    let c = amb.extract(&g).unwrap();
    let l = Poly::lambda(1, 1);
    for i in 0..2 {
        for j in 0..2 {
            let (b1, b2) = (unit(2, i, 1), unit(2, j, 1));
            let (x1, x2) = (xi.xi.on(&b1), xi.xi.on(&b2));
            let want = xi.xi.on(&b.product(&b1, &b2, &l)).add(&a.product(&x1, &x2, &l));
            assert_eq!(c.chi().get(&[i, j]), &want);
        }
        for k in 0..3 {
            let want = a.product(&xi.xi.on(&unit(2, i, 1)), &unit(3, k, 1), &l).neg();
            assert_eq!(c.left().get(&[i, k]), &want);
        }
    }
}

#[test]
fn degree_zero_is_abelian() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let amb = Ambient::new(&cur_t2(), &dual_numbers());
    for _ in 0..5 {
        let x1 = amb.gauge_cochain(&random_xi(&mut rng, 3, 2)).unwrap();
        let x2 = amb.gauge_cochain(&random_xi(&mut rng, 3, 2)).unwrap();
        assert!(amb.bracket(&x1, &x2).cochain().is_zero());
    }
}

#[test]
fn subdgla_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let amb = Ambient::new(&cur_t2(), &cur_kk());
    let mut samples = vec![amb.gauge_cochain(&random_xi(&mut rng, 3, 2)).unwrap()];
    for arity in [1, 2, 2] {
        samples.push(random_l(&mut rng, &amb, arity));
    }
    let c = random_l(&mut rng, &amb, 2);
    samples.push(c.component(1, 1));
    samples.push(c.component(0, 2));
    let rep = amb.check_subdgla_closure(&samples);
    assert!(rep.passed(), "{:?}", rep.failed_identities());
    let b11 = amb.bracket(&c.component(1, 1), &c.component(0, 2));
    assert!(b11.bidegrees().iter().all(|&d| d == (0, 3)));
    let d = amb.dbar(&samples[0]);
    assert!(d.bidegrees().is_subset(&[(1, 1), (0, 2)].into_iter().collect()));
    let n = 5;
    let bad = SesqMap::from_fn(vec![n], n, |t| unit(n, t[0], 0));
    assert_eq!(MixedCochain::new(3, 2, bad.clone()), Err(McError::NotInL));
    let stray = MixedCochain { ra: 3, rb: 2, cochain: bad };
    assert_eq!(amb.check_subdgla_closure(&[stray]).failed_identities()[0], "membership");
}

#[test]
fn dgla_axioms_on_l() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let amb = Ambient::new(&cur_t2(), &cur_kk());
    for _ in 0..2 {
        let arities: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=2)).collect();
        let [f, g, h] = [0, 1, 2].map(|i| random_l(&mut rng, &amb, arities[i]));
        let rep = crate::hochschild::dgla_axiom_check(
            amb.background(),
            f.cochain(),
            g.cochain(),
            h.cochain(),
        )
        .unwrap();
        assert!(rep.passed(), "{:?}", rep.failed_identities());
    }
}

#[test]
fn extension_products_land_in_a_when_an_argument_is_in_a() {
    for c in cocycles() {
        let e = build_extension(&c).unwrap();
        let (ra, rb) = (c.a().rank(), c.b().rank());
        for t in e.e().mult().tuples() {
            if t[0] < ra || t[1] < ra {
                assert!(e.e().mult().get(&t).slice(ra, rb).is_zero());
            }
        }
    }
}
