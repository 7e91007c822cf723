mod common;

use common::{elems, to_subset, Set};
use kneser_trios::transform::strictly_majorizes;
use kneser_trios::verify::{check_kneser, check_trio_bound, derive_kneser_from_trio, derive_trio_from_kneser};
use kneser_trios::{Group, SetSystem, StopCertificate, Trio};
use proptest::prelude::*;

/// A group literal of order at most 40 together with the group.
fn group() -> impl Strategy<Value = Group> {
    prop_oneof![
        (1usize..=40).prop_map(|n| Group::cyclic(n).unwrap()),
        prop::collection::vec(2usize..=4, 2..=3).prop_map(|o| Group::cyclic_product(&o).unwrap()),
    ]
}

fn subset(g: &Group) -> impl Strategy<Value = Set> {
    let n = g.order();
    prop::collection::btree_set(0..n, 1..=n)
}

fn group_with_sets(k: usize) -> impl Strategy<Value = (Group, Vec<Set>)> {
    group().prop_flat_map(move |g| {
        let sets = prop::collection::vec(subset(&g), k);
        (Just(g), sets)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sumset_matches_oracle_and_commutes((g, s) in group_with_sets(2)) {
        let (a, b) = (to_subset(&g, &s[0]), to_subset(&g, &s[1]));
        let ab = g.sumset(&a, &b);
        prop_assert_eq!(elems(&ab), common::sumset(&g, &s[0], &s[1]));
        prop_assert_eq!(&ab, &g.sumset(&b, &a));
    }

    #[test]
    fn sumsets_are_translation_covariant((g, s) in group_with_sets(2), x in 0usize..64, y in 0usize..64) {
        let (x, y) = (x % g.order(), y % g.order());
        let (a, b) = (to_subset(&g, &s[0]), to_subset(&g, &s[1]));
        let lhs = g.sumset(&g.translate(&a, x), &g.translate(&b, y));
        prop_assert_eq!(lhs, g.translate(&g.sumset(&a, &b), g.add(x, y)));
    }

    #[test]
    fn periods_are_stabilizing_subgroups((g, s) in group_with_sets(1)) {
        let a = to_subset(&g, &s[0]);
        let p = g.period(&a);
        prop_assert_eq!(elems(p.members()), common::period(&g, &s[0]));
        prop_assert!(common::is_subgroup(&g, &elems(p.members())));
        prop_assert_eq!(g.sumset(&a, p.members()), a);
    }

    #[test]
    fn kneser_bound_holds((g, s) in group_with_sets(2)) {
        let (a, b) = (to_subset(&g, &s[0]), to_subset(&g, &s[1]));
        let v = check_kneser(&g, &a, &b).unwrap();
        prop_assert!(v.pass);
        prop_assert!(!v.tight || v.lhs == v.rhs);
        prop_assert_eq!(derive_kneser_from_trio(&g, &a, &b).unwrap().pass, v.pass);
    }

    #[test]
    fn trio_bound_and_its_derivation_hold((g, s) in group_with_sets(3)) {
        let [a, b, c] = [0, 1, 2].map(|i| to_subset(&g, &s[i]));
        let v = check_trio_bound(&g, &a, &b, &c).unwrap();
        prop_assert!(v.pass);
        if let Ok(t) = Trio::new(&g, a, b, c) {
            prop_assert!(!v.vacuous);
            for g0 in t.missing().iter() {
                prop_assert!(derive_trio_from_kneser(&t, g0).unwrap().pass);
            }
            let g0 = t.missing().min().unwrap();
            let m = t.complete_to_maximal(g0).unwrap();
            prop_assert!(m.is_maximal());
            prop_assert!(m.period().is_subgroup_of(t.period()));
            if m.is_deficient() {
                prop_assert_eq!(m.deficiency(), m.period().size() as i64);
            }
        } else {
            prop_assert!(v.vacuous);
        }
    }

    #[test]
    fn complement_identity_holds((g, s) in group_with_sets(1)) {
        prop_assert!(g.complement_identity_check(&to_subset(&g, &s[0])).holds());
    }

    #[test]
    fn transform_invariants((g, s) in group_with_sets(3), x in 0usize..64) {
        let sys = SetSystem::new(&g, s.iter().map(|t| to_subset(&g, t)).collect()).unwrap();
        let out = sys.tau();
        prop_assert!(out.check_against(&sys).is_ok());
        prop_assert_eq!(out.output.sets().iter().map(elems).collect::<Vec<_>>(), common::tau(&g, &s));
        prop_assert_eq!(out.output == sys, sys.is_nested());
        prop_assert!(sys.sumset_inclusion_check());
        let x = x % g.order();
        let (after, before) = sys.rep_domination(x);
        prop_assert!(after <= before);
        prop_assert_eq!(before, common::representation_counts(&g, &s)[x]);
        match sys.find_improving_translation().unwrap() {
            StopCertificate::ImprovingTranslation { translations, transformed } => {
                prop_assert_eq!(&transformed, &sys.translated(&translations).tau().output);
                prop_assert!(strictly_majorizes(&transformed.sizes(), &sys.sizes()));
            }
            StopCertificate::NestedCosets => prop_assert!(sys.has_nested_cosets()),
        }
    }

    #[test]
    fn literals_round_trip((g, s) in group_with_sets(3)) {
        let lit = s.iter()
            .map(|t| t.iter().rev().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";");
        let sys = SetSystem::parse(&g, &lit).unwrap();
        prop_assert_eq!(SetSystem::parse(&g, &sys.to_string()).unwrap(), sys.clone());
        for (parsed, expected) in sys.sets().iter().zip(&s) {
            prop_assert_eq!(&elems(parsed), expected);
        }
        prop_assert_eq!(g.literal().parse::<Group>().unwrap(), g);
    }

    #[test]
    fn coordinates_round_trip(orders in prop::collection::vec(1usize..=5, 1..=4), idx in 0usize..1000) {
        let g = Group::cyclic_product(&orders).unwrap();
        let x = idx % g.order();
        let c = g.coordinates(x).unwrap();
        prop_assert!(c.iter().zip(&orders).all(|(ci, ni)| ci < ni));
        prop_assert_eq!(g.element_at(&c).unwrap(), x);
    }
}
