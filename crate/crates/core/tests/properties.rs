use proptest::prelude::*;

use tql_core::episearch::{find_quadruples, find_triples, GeneratingQuadruple, GeneratingTriple, QuadrupleSearch, SearchConfig};
use tql_core::fuchsian::snf::{determinant, maximal_minor_gcd, smith_diagonal};
use tql_core::fuchsian::{
    enumerate_subgroup_signatures, relation_matrix, surface_genus_from_order, triangle_subgroup_candidates, Rational,
    Signature,
};
use tql_core::perm::{conjugacy_classes, DEFAULT_ENUMERATION_CAP};
use tql_core::zoo::GroupSpec;
use tql_core::{GroupHandle, GroupMetadata, Permutation};

const SMALL: [&str; 10] = [
    "sym:4", "sym:5", "alt:5", "dih:6", "dih:7", "psl2:7", "psl2:8", "cyc:6", "prod:cyc:2,sym:4", "pgl2:5",
];

fn small_group() -> impl Strategy<Value = GroupHandle> {
    prop::sample::select(SMALL.to_vec()).prop_map(|s| s.parse::<GroupSpec>().unwrap().build().unwrap())
}

fn permutation(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn hyperbolic_sphere() -> impl Strategy<Value = Signature> {
    prop::collection::vec(2u64..=12, 3..=5)
        .prop_map(|p| Signature::sphere(&p).unwrap())
        .prop_filter("hyperbolic", |s| s.is_hyperbolic())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lagrange(gens in prop::collection::vec(permutation(7), 1..=3)) {
        let g = GroupHandle::build(gens.clone(), GroupMetadata::default()).unwrap();
        prop_assert_eq!(5040 % g.order(), 0);
        let h = g.subgroup(gens[..1].to_vec(), GroupMetadata::default()).unwrap();
        prop_assert_eq!(g.order() % h.order(), 0);
        prop_assert_eq!(h.order(), gens[0].order());
        for x in &gens {
            prop_assert!(g.contains(x));
        }
    }

    #[test]
    fn class_sizes_sum_to_order(g in small_group()) {
        let classes = conjugacy_classes(&g, None, DEFAULT_ENUMERATION_CAP).unwrap();
        prop_assert_eq!(classes.iter().map(|c| c.size).sum::<u64>(), g.order());
        for c in &classes {
            prop_assert_eq!(g.order() % c.size, 0);
            prop_assert_eq!(c.representative.order(), c.element_order);
        }
    }

    #[test]
    fn euler_characteristic_is_multiplicative(p in hyperbolic_sphere(), d in 2u64..=8) {
        for s in enumerate_subgroup_signatures(&p, d).unwrap() {
            prop_assert_eq!(s.euler_characteristic(), Rational::integer(d as i64) * p.euler_characteristic());
        }
        if p.periods().len() == 3 {
            for (i, s) in triangle_subgroup_candidates(&p).unwrap() {
                prop_assert_eq!(s.euler_characteristic(), Rational::integer(i as i64) * p.euler_characteristic());
            }
        }
    }

    #[test]
    fn genus_satisfies_riemann_hurwitz(p in hyperbolic_sphere(), order in 1u64..=100_000) {
        let chi = p.euler_characteristic();
        match surface_genus_from_order(order, &p) {
            Ok(g) => {
                let lhs = Rational::integer(2 - 2 * g as i64);
                prop_assert_eq!(lhs, Rational::integer(order as i64) * chi);
            }
            Err(_) => {
                let ok = p.periods().iter().all(|m| order % m == 0);
                let v = Rational::integer(order as i64) * chi;
                prop_assert!(!ok || !v.is_integer() || v.numer() % 2 != 0);
            }
        }
    }

    #[test]
    fn smith_product_is_minor_gcd(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 3..=4)) {
        let diag = smith_diagonal(&rows);
        let prod: i128 = diag.iter().map(|&d| d as i128).product();
        prop_assert_eq!(prod, maximal_minor_gcd(&rows));
        for w in diag.windows(2) {
            prop_assert!(w[1] == 0 || w[1] % w[0] == 0);
        }
        if rows.len() == 3 {
            prop_assert_eq!(prod, determinant(&rows).abs());
        }
    }

    #[test]
    fn signature_smith_check(p in hyperbolic_sphere()) {
        let m = relation_matrix(&p);
        let prod: i128 = smith_diagonal(&m).iter().map(|&d| d as i128).product();
        prop_assert_eq!(prod, maximal_minor_gcd(&m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn triple_counts(g in small_group(), a in 2u64..=4, b in 3u64..=5, c in 3u64..=7) {
        let mut o = [a, b, c];
        o.sort_unstable();
        let one = find_triples(&g, o, &SearchConfig::with_threads(1)).unwrap();
        let three = find_triples(&g, o, &SearchConfig::with_threads(3)).unwrap();
        prop_assert_eq!(&one, &three);
        if let (Some(t), Some(aut)) = (one.total, g.metadata().aut_order) {
            prop_assert_eq!(t % aut, 0);
        }
        for w in &one.witnesses {
            let again = GeneratingTriple::new(&g, w.x.clone(), w.y.clone(), o).unwrap();
            prop_assert_eq!(&again, w);
            prop_assert!((&(&w.x * &w.y) * &w.z).is_identity());
        }
    }

    #[test]
    fn quadruple_counts(g in small_group()) {
        let one = find_quadruples(&g, &QuadrupleSearch::counting(), &SearchConfig::with_threads(1)).unwrap();
        let three = find_quadruples(&g, &QuadrupleSearch::counting(), &SearchConfig::with_threads(3)).unwrap();
        prop_assert_eq!(&one, &three);
        let total = one.total.unwrap();
        prop_assert_eq!(one.n_distribution.values().sum::<u64>(), total);
        if let Some(aut) = g.metadata().aut_order {
            prop_assert_eq!(total % aut, 0);
        }
        let exist = find_quadruples(&g, &QuadrupleSearch::existence(), &SearchConfig::with_threads(2)).unwrap();
        prop_assert_eq!(&exist.n_set, &one.n_set);
        for w in one.witnesses.iter().chain(&exist.witnesses) {
            prop_assert_eq!((&w.x1 * &w.x2).order(), (&w.x3 * &w.x4).order());
            prop_assert_eq!((&w.x1 * &w.x2).order(), w.n);
            let again = GeneratingQuadruple::validate_full(&g, w.x1.clone(), w.x2.clone(), w.x3.clone(), &w.x4).unwrap();
            prop_assert_eq!(&again, w);
        }
        if total > 0 {
            prop_assert!(surface_genus_from_order(g.order(), &"(0;2,2,2,3)".parse().unwrap()).is_ok());
        }
    }
}
