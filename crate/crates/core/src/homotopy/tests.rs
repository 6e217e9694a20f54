use rand::rngs::StdRng;
use rand::SeedableRng;

use super::*;
use crate::cdmod::CdLinearMap;
use crate::conformal::{Bimodule, SesqMap};
use crate::fixtures::*;
use crate::hochschild::{differential, is_cocycle, random_cochain, Cochain, Truncation};

fn regular_dual() -> Bimodule {
    Bimodule::regular(&dual_numbers())
}

fn sigma(seed: u64) -> Cochain {
    let mut rng = StdRng::seed_from_u64(seed);
    random_cochain(&mut rng, vec![2, 2], 2, Truncation::new(1, 1), 0.4)
}

fn skeletal(zeta: &Cochain) -> TwoTermSHAC {
    cocycle_to_skeletal(&regular_dual(), zeta).unwrap()
}

fn zero3() -> Cochain {
    SesqMap::zero(vec![2, 2, 2], 2)
}

#[test]
fn trivial_structure_is_strict_and_skeletal() {
    let t = skeletal(&zero3());
    assert!(check_twoterm(&t).passed());
    assert!(t.is_strict() && t.is_skeletal());
    let c = shac_to_crossed(&t).unwrap();
    assert!(check_crossed(&c).passed());
    assert_eq!(crossed_to_shac(&c), t);
}

#[test]
fn bimodule_map_example_is_strict() {
    let t = dual_numbers_map_shac();
    assert!(check_twoterm(&t).passed());
    assert!(t.is_strict() && !t.is_skeletal());
    let c = shac_to_crossed(&t).unwrap();
    assert!(check_crossed(&c).passed());
    assert_eq!(crossed_to_shac(&c), t);
    assert_eq!(skeletal_to_cocycle(&t), Err(HomotopyError::NotSkeletal));
    assert!(check_morphism(&identity_morphism(&t), &t, &t).passed());

    let m = regular_dual();
    assert!(shac_of_bimodule_map(&m, &m, &CdLinearMap::identity(2)).is_ok());
    // x ↦ e is not a bimodule map.
    match shac_of_bimodule_map(&m, &m, &matrix(2, 2, &["0", "1", "0", "0"])) {
        Err(HomotopyError::InvalidShac(rep)) => {
            assert!(rep.failed_identities().contains(&"2-t1".to_string()))
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn non_cocycle_fails_only_at_2t8() {
    let m = regular_dual();
    let mut rng = StdRng::seed_from_u64(5);
    let z = random_cochain(&mut rng, vec![2, 2, 2], 2, Truncation::new(1, 1), 0.5);
    assert!(!is_cocycle(&m, &z).0);
    assert_eq!(cocycle_to_skeletal(&m, &z), Err(HomotopyError::NotACocycle));
    let a = m.algebra();
    let t = TwoTermSHAC::new_unchecked(
        m.carrier().clone(),
        a.carrier().clone(),
        CdLinearMap::zero(2, 2),
        a.mult().clone(),
        m.left().clone(),
        m.right().clone(),
        z,
    )
    .unwrap();
    assert_eq!(check_twoterm(&t).failed_identities(), vec!["2-t8".to_string()]);
}

#[test]
fn crossed_module_examples() {
    assert!(check_crossed(&ideal_crossed_module()).passed());
    assert!(check_crossed(&zero_crossed_module(&dual_numbers())).passed());
    assert!(check_crossed(&cubic_crossed_module()).passed());

    let a = dual_numbers();
    let bad = CrossedModule::new_unchecked(
        a.clone(),
        a.clone(),
        CdLinearMap::identity(2),
        a.mult().clone(),
        SesqMap::zero(vec![2, 2], 2),
    )
    .unwrap();
    let failed = check_crossed(&bad).failed_identities();
    assert!(failed.contains(&"cross2".to_string()), "{failed:?}");
    assert!(failed.contains(&"cross3-right".to_string()), "{failed:?}");
    assert!(!failed.contains(&"cross1".to_string()));
}

#[test]
fn crossed_round_trips() {
    for c in [
        ideal_crossed_module(),
        zero_crossed_module(&dual_numbers()),
        cubic_crossed_module(),
    ] {
        let t = crossed_to_shac(&c);
        assert!(check_twoterm(&t).passed());
        assert!(t.is_strict());
        assert_eq!(shac_to_crossed(&t).unwrap(), c);
    }
    let z = differential(&regular_dual(), &sigma(1));
    assert!(!z.is_zero());
    assert_eq!(shac_to_crossed(&skeletal(&z)), Err(HomotopyError::NotStrict));
}

#[test]
fn skeletal_equivalence_and_morphisms_agree() {
    let m = regular_dual();
    for seed in 0..4 {
        let s = sigma(seed);
        let z = differential(&m, &s);
        let (t0, t1) = (skeletal(&zero3()), skeletal(&z));
        let (_, _, m3) = skeletal_to_cocycle(&t1).unwrap();
        assert!(is_cocycle(&m, &m3).0);
        assert!(check_skeletal_equivalence(&t0, &t1, &s).passed());
        assert!(!check_skeletal_equivalence(&t0, &t1, &s.scale(&crate::symexpr::scalar(2))).passed());

        // The same equivalence as the morphism (id, id, σ).
        let f = TwoTermMorphism {
            f0: CdLinearMap::identity(2),
            f1: CdLinearMap::identity(2),
            f2: s.clone(),
        };
        assert!(check_morphism(&f, &t0, &t1).passed());
        let wrong = TwoTermMorphism { f2: s.neg(), ..f };
        assert_eq!(check_morphism(&wrong, &t0, &t1).failed_identities(), vec!["mor4".to_string()]);
    }
}

#[test]
fn morphism_category_laws() {
    let m = regular_dual();
    let (s1, s2, s3) = (sigma(10), sigma(11), sigma(12));
    let t0 = skeletal(&zero3());
    let t1 = skeletal(&differential(&m, &s1));
    let t2 = skeletal(&differential(&m, &s1.add(&s2)));
    let t3 = skeletal(&differential(&m, &s1.add(&s2).add(&s3)));
    let step = |s: &Cochain| TwoTermMorphism {
        f0: CdLinearMap::identity(2),
        f1: CdLinearMap::identity(2),
        f2: s.clone(),
    };
    // x ↦ 2x on both terms.
    let phi = matrix(2, 2, &["1", "0", "0", "2"]);
    let scale = TwoTermMorphism {
        f0: phi.clone(),
        f1: phi,
        f2: SesqMap::zero(vec![2, 2], 2),
    };
    assert!(check_morphism(&scale, &t0, &t0).passed());
    let (f, g, h) = (step(&s1), step(&s2), step(&s3));
    for (mor, s, t) in [(&f, &t0, &t1), (&g, &t1, &t2), (&h, &t2, &t3)] {
        assert!(check_morphism(mor, s, t).passed());
        assert!(check_morphism(&identity_morphism(s), s, s).passed());
        assert_eq!(&compose_morphisms(mor, &identity_morphism(s)), mor);
        assert_eq!(&compose_morphisms(&identity_morphism(t), mor), mor);
    }
    let gf = compose_morphisms(&g, &f);
    assert!(check_morphism(&gf, &t0, &t2).passed());
    assert_eq!(
        compose_morphisms(&h, &gf),
        compose_morphisms(&compose_morphisms(&h, &g), &f)
    );
    let fs = compose_morphisms(&f, &scale);
    assert!(fs.f2 != f.f2);
    assert!(check_morphism(&fs, &t0, &t1).passed());
}

#[test]
fn hom_section_gives_zero_class() {
    let s = cubic_crossed_extension("0", "0");
    let c = crossed_extension_theta(&s).unwrap();
    assert!(c.g.is_zero());
    assert!(c.f.is_zero());
}

#[test]
fn theta_matches_skeletal_model() {
    for (p, q) in [("D", "3"), ("1", "0"), ("D^2", "D")] {
        let s = cubic_crossed_extension(p, q);
        let c = crossed_extension_theta(&s).unwrap();
        assert!(is_cocycle(s.m(), &c.f).0);
        let t = skeletal_model(&s).unwrap();
        assert!(check_twoterm(&t).passed());
        let (_, m, m3) = skeletal_to_cocycle(&t).unwrap();
        assert_eq!(&m, s.m());
        assert_eq!(m3, c.f);
    }
    assert!(!crossed_extension_theta(&cubic_crossed_extension("D", "3")).unwrap().g.is_zero());
}

#[test]
fn section_changes_are_coboundaries() {
    let s = cubic_crossed_extension("D", "3");
    for eta in [["D", "1", "0"], ["0", "0", "1"], ["2", "D^2", "0"]] {
        let ch = s.change_varrho(&matrix(3, 1, &eta)).unwrap();
        let d = differential(s.m(), &ch.correction);
        assert_eq!(ch.after.sub(&ch.before), d);
    }
    let ch = s.change_varsigma(&matrix(1, 2, &["1", "D"])).unwrap();
    assert!(!ch.correction.is_zero());
    assert_eq!(ch.after.sub(&ch.before), differential(s.m(), &ch.correction));
    let d = s.clone();
    let dflt = CrossedExtension::new(
        d.m().clone(),
        d.crossed().clone(),
        d.alpha().clone(),
        d.gamma().clone(),
    )
    .unwrap()
    .with_default_sections(matrix(3, 1, &["1", "D", "3"]))
    .unwrap();
    assert!(crossed_extension_theta(&dflt).is_ok());
}

#[test]
fn extension_rejections() {
    let s = cubic_crossed_extension("0", "0");
    let bare = CrossedExtension::new(
        s.m().clone(),
        s.crossed().clone(),
        s.alpha().clone(),
        s.gamma().clone(),
    )
    .unwrap();
    assert_eq!(crossed_extension_theta(&bare), Err(HomotopyError::NotSplit));
    assert_eq!(skeletal_model(&bare), Err(HomotopyError::NotSplit));
    let wrong_alpha = CrossedExtension::new(
        s.m().clone(),
        s.crossed().clone(),
        matrix(3, 1, &["0", "1", "0"]),
        s.gamma().clone(),
    );
    assert_eq!(wrong_alpha, Err(HomotopyError::NotExact("at-Y")));
    let sec = s.sections().unwrap();
    match bare.clone().with_sections(
        matrix(3, 1, &["2", "0", "0"]),
        sec.im_basis.clone(),
        sec.varsigma.clone(),
    ) {
        Err(HomotopyError::InvalidSections(rep)) => {
            assert!(rep.failed_identities().contains(&"section-varrho".to_string()))
        }
        other => panic!("{other:?}"),
    }
    // ∂t and t² generate a proper submodule of Im β.
    match bare.with_sections(
        sec.varrho.clone(),
        matrix(3, 2, &["0", "0", "D", "0", "0", "1"]),
        matrix(3, 2, &["D", "0", "0", "1", "0", "0"]),
    ) {
        Err(HomotopyError::InvalidSections(rep)) => {
            assert_eq!(rep.failed_identities(), vec!["im-basis".to_string()])
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn rank_zero_kernel_extension() {
    let a = dual_numbers();
    let c = zero_crossed_module(&a);
    let m = Bimodule::zero(&a, crate::cdmod::FreeCdModule::numbered("m", 0));
    let s = CrossedExtension::new(m, c, CdLinearMap::zero(0, 0), CdLinearMap::identity(2))
        .unwrap()
        .with_default_sections(CdLinearMap::identity(2))
        .unwrap();
    assert!(crossed_extension_theta(&s).unwrap().f.is_zero());
}
