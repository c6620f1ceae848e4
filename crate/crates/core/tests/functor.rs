mod common;

use common::*;
use grcat_core::algebra::PiModule;
use grcat_core::cohomology::{
    classes_of, coboundary, cohomology_group, Cochain, Method, DEFAULT_BOUND,
};
use grcat_core::functor::{
    automorphisms, check_monoidal, classify, congruent, obstruction, realizable, FunctorData,
};
use grcat_core::gr::GrType;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn types(m: &PiModule) -> Vec<GrType> {
    classes_of(m, 3)
        .unwrap()
        .into_iter()
        .map(|xi| GrType::new(m.clone(), xi).unwrap())
        .collect()
}

fn monoidal_structures(f: &FunctorData) -> Vec<Cochain> {
    let m = f.pulled_module();
    all_cochains(m, 2)
        .into_iter()
        .filter(|g| check_monoidal(f, &g.to_full(m)).is_valid())
        .collect()
}

#[test]
fn realizable_exactly_when_a_monoidal_structure_exists() {
    for m in [
        trivial_module(cyclic(2), 2),
        negation_module(4),
        trivial_module(cyclic(3), 3),
    ] {
        for source in types(&m) {
            for target in types(&m) {
                let f = FunctorData::new(
                    source.clone(),
                    target.clone(),
                    &[0, 1, 2][..m.group().order()],
                    &[vec![1]],
                )
                .unwrap();
                let found = monoidal_structures(&f);
                let g = realizable(&f).unwrap();
                assert_eq!(g.is_some(), !found.is_empty());
                if let Some(g) = g {
                    assert!(found.contains(&g));
                    assert_eq!(coboundary(f.pulled_module(), &g).unwrap(), obstruction(&f));
                }
            }
        }
    }
}

#[test]
fn classes_partition_the_monoidal_structures() {
    for m in [trivial_module(cyclic(2), 2), negation_module(4)] {
        let t = GrType::strict(m.clone());
        let f = FunctorData::identity(&t);
        let reps = classify(&f).unwrap();
        let h2 = cohomology_group(&m, 2, Method::BruteForce, DEFAULT_BOUND).unwrap();
        assert_eq!(reps.len() as u64, h2.order());
        for g in monoidal_structures(&f) {
            let with = f.with_g(g.clone()).unwrap();
            let matches: Vec<_> = reps
                .iter()
                .filter(|r| congruent(r, &with).unwrap().is_some())
                .collect();
            assert_eq!(matches.len(), 1);
            let brute = reps
                .iter()
                .filter(|r| cohomologous_brute_force(&m, r.g().unwrap(), &g))
                .count();
            assert_eq!(brute, 1);
        }
    }
}

#[test]
fn automorphisms_are_the_one_cocycles() {
    for (m, expected) in [(trivial_module(cyclic(2), 2), 2), (negation_module(4), 4)] {
        let f = FunctorData::identity(&GrType::strict(m.clone()));
        let autos = automorphisms(&f).unwrap();
        assert_eq!(autos.len(), expected);
        // x·α(y) − α(xy) + α(x) = 0 for every pair, checked by hand.
        let by_hand = all_cochains(&m, 1)
            .into_iter()
            .filter(|a| {
                let g = m.group();
                g.elements().all(|x| {
                    g.elements().all(|y| {
                        let lhs = m
                            .carrier()
                            .add(&m.act(x, &a.value(&m, &[y])), &a.value(&m, &[x]));
                        lhs == a.value(&m, &[g.mul(x, y)])
                    })
                })
            })
            .count();
        assert_eq!(by_hand, expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn congruence_is_an_equivalence(negate in any::<bool>(), seeds in any::<[u64; 3]>()) {
        let m = if negate { negation_module(4) } else { trivial_module(cyclic(2), 2) };
        let f = FunctorData::identity(&GrType::strict(m.clone()));
        let reps = classify(&f).unwrap();
        let pick = |s: u64| {
            let mut rng = StdRng::seed_from_u64(s);
            let r = &reps[(s as usize) % reps.len()];
            let b = coboundary(&m, &random_cochain(&m, 1, &mut rng)).unwrap();
            f.with_g(r.g().unwrap().add(&m, &b)).unwrap()
        };
        let [a, b, c] = seeds.map(pick);
        prop_assert!(congruent(&a, &a).unwrap().is_some());
        let ab = congruent(&a, &b).unwrap();
        prop_assert_eq!(ab.is_some(), congruent(&b, &a).unwrap().is_some());
        if let (Some(x), Some(y)) = (ab, congruent(&b, &c).unwrap()) {
            let z = congruent(&a, &c).unwrap().expect("transitive");
            // Witnesses compose additively up to a 1-cocycle.
            let diff = x.add(&m, &y).sub(&m, &z);
            prop_assert!(coboundary(&m, &diff).unwrap().is_zero());
        }
    }
}
