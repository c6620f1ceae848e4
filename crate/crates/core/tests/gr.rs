mod common;

use std::sync::Arc;

use common::*;
use grcat_core::algebra::{
    automorphism_group, automorphism_maps_brute_force, AutStructure, FiniteGroup,
};
use grcat_core::cohomology::{is_coboundary, is_cocycle};
use grcat_core::gr::{
    aut_gr_category, compare_reductions, compare_reductions_with, reduce_strict,
    reduced_type_of_group, validate_gr_type, GrType,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn structure(g: &Arc<FiniteGroup>) -> Arc<AutStructure> {
    Arc::new(AutStructure::new(g.clone()).unwrap())
}

#[test]
fn automorphisms_match_bijection_search() {
    for (name, g) in small_groups() {
        let fast = automorphism_group(&g).unwrap();
        let mut slow = automorphism_maps_brute_force(&g);
        slow.sort();
        assert_eq!(fast.maps, slow, "{name}");
    }
}

#[test]
fn automorphism_categories_are_strict_gr_categories() {
    for (name, g) in small_groups() {
        let st = structure(&g);
        let cat = aut_gr_category(st.clone()).unwrap();
        let c = &cat.category;
        assert_eq!(c.object_count(), st.aut.maps.len(), "{name}");
        assert_eq!(c.arrow_count(), st.aut.maps.len() * g.order(), "{name}");
        // Every arrow is invertible and every object has a tensor inverse.
        for a in 0..c.arrow_count() {
            assert_eq!(c.seq(a, c.inverse(a)), c.identity(c.source(a)));
        }
        for x in 0..c.object_count() {
            assert!((0..c.object_count()).any(|y| c.tensor(x, y) == c.unit()));
        }
    }
}

#[test]
fn reductions_agree_with_direct_types() {
    for (name, g) in small_groups() {
        let cmp = compare_reductions(structure(&g)).unwrap();
        assert!(cmp.lambda.is_some() && cmp.iso.is_some(), "{name}");
        let w = cmp
            .witness
            .as_ref()
            .unwrap_or_else(|| panic!("{name}: no witness"));
        let t = &cmp.direct;
        let moved = cmp.moved.as_ref().unwrap();
        let delta = grcat_core::cohomology::coboundary(t.module(), w).unwrap();
        assert_eq!(moved.sub(t.module(), t.xi()), delta, "{name}");
    }
}

#[test]
fn cyclic_four_and_symmetric_three() {
    let t = reduced_type_of_group(cyclic(4)).unwrap();
    assert_eq!(t.pi().order(), 2);
    assert_eq!(t.carrier().invariant_factors(), &[4]);
    let sigma = 1 - t.pi().identity();
    assert_eq!(t.module().act(sigma, &[1]), vec![3]);
    assert!(is_coboundary(t.module(), t.xi()));

    let t = reduced_type_of_group(s3()).unwrap();
    assert_eq!((t.pi().order(), t.carrier().order()), (1, 1));
    let r = reduce_strict(&aut_gr_category(structure(&s3())).unwrap().category).unwrap();
    assert_eq!((r.ty.pi().order(), r.ty.carrier().order()), (1, 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_does_not_depend_on_the_stick(which in 0usize..14, seed in any::<u64>()) {
        let groups = small_groups();
        let (name, g) = &groups[which % groups.len()];
        let mut rng = StdRng::seed_from_u64(seed);
        let cmp = compare_reductions_with(structure(g), &mut |c: &[usize]| rng.gen_range(0..c.len())).unwrap();
        prop_assert!(cmp.agrees(), "{}", name);
    }

    #[test]
    fn pentagon_validator_agrees_with_type_constructor(seed in any::<u64>(), negate in any::<bool>()) {
        let m = if negate { negation_module(4) } else { trivial_module(cyclic(2), 2) };
        let xi = random_cochain(&m, 3, &mut StdRng::seed_from_u64(seed));
        let valid = validate_gr_type(&m, &xi.to_full(&m)).is_valid();
        prop_assert_eq!(valid, is_cocycle(&m, &xi));
        prop_assert_eq!(valid, GrType::new(m.clone(), xi).is_ok());
    }
}
