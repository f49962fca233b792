use std::collections::{HashSet, VecDeque};

use tql_core::episearch::{
    classify, find_quadruples, find_subgroups_of_order, find_triples, g7_quadruple_search, QuadrupleSearch,
    SearchConfig,
};
use tql_core::fuchsian::{surface_genus_from_order, triangle_subgroup_candidates, Signature};
use tql_core::perm::{derived_subgroup, is_perfect, CosetAction, DEFAULT_ENUMERATION_CAP};
use tql_core::zoo::{make_pgl2, make_psl2, GroupSpec};
use tql_core::GroupHandle;

fn group(s: &str) -> GroupHandle {
    s.parse::<GroupSpec>().unwrap().build().unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn linear_group_orders() {
    for q in [4u64, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49] {
        let full = q * (q * q - 1);
        assert_eq!(make_psl2(q).unwrap().order(), full / gcd(2, q - 1), "PSL2({q})");
        assert_eq!(make_pgl2(q).unwrap().order(), full, "PGL2({q})");
    }
}

#[test]
fn lagrange_spot_check() {
    for spec in ["psl2:13", "sym:7", "prod:psl2:7,psl2:8"] {
        let g = group(spec);
        for seed in 0..1000 {
            let x = g.random_element(seed);
            assert!(g.contains(&x));
            assert_eq!(g.order() % x.order(), 0, "{spec} seed {seed}");
        }
    }
}

#[test]
fn coset_action_degree_and_kernel() {
    let cfg = SearchConfig::default();
    for (spec, m) in [("sym:4", 6u64), ("sym:4", 8), ("psl2:7", 21), ("alt:5", 12), ("prod:cyc:3,sym:3", 3)] {
        let g = group(spec);
        let u = find_subgroups_of_order(&g, m, 64, 0, &cfg).unwrap().remove(0);
        let a = CosetAction::new(&g, &u).unwrap();
        assert_eq!(a.degree() as u64 * u.order(), g.order());
        let core = g.elements(DEFAULT_ENUMERATION_CAP).unwrap().filter(|x| a.act(x).is_identity()).count() as u64;
        assert_eq!(a.image().order() * core, g.order(), "{spec} / {m}");
    }
}

#[test]
fn derived_subgroup_is_normal() {
    for spec in ["sym:5", "dih:8", "pgl2:7", "prod:sym:3,sym:4"] {
        let g = group(spec);
        let d = derived_subgroup(&g);
        for h in d.generators() {
            for x in g.generators() {
                assert!(d.contains(&h.conjugate_by(x)), "{spec}");
            }
        }
    }
}

#[test]
fn psl2_is_perfect() {
    for q in [7, 8, 13, 27, 49] {
        let g = make_psl2(q).unwrap();
        assert_eq!(derived_subgroup(&g).order(), g.order(), "PSL2({q})");
    }
    assert!(!is_perfect(&make_pgl2(7).unwrap()));
}

#[test]
fn pgl2_is_sharply_three_transitive() {
    for q in [4usize, 5, 7, 8, 9] {
        let g = make_pgl2(q as u64).unwrap();
        let start = (0usize, 1usize, 2usize);
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some((a, b, c)) = queue.pop_front() {
            for x in g.generators() {
                let t = (x.image(a), x.image(b), x.image(c));
                if seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        assert_eq!(seen.len(), (q + 1) * q * (q - 1));
        assert_eq!(g.order() as usize, seen.len());
    }
}

#[test]
fn triangle_candidate_periods() {
    let parent = Signature::triangle(2, 3, 7).unwrap();
    for (_, s) in triangle_subgroup_candidates(&parent).unwrap() {
        assert!(s.periods().iter().all(|m| [2, 3, 7].contains(m)), "{s}");
    }
}

#[test]
fn hurwitz_genus_formula() {
    let s = Signature::triangle(2, 3, 7).unwrap();
    for k in 1..500u64 {
        assert_eq!(surface_genus_from_order(84 * k, &s).unwrap(), 1 + k);
    }
}

#[test]
fn hurwitz_groups_are_perfect() {
    let cfg = SearchConfig::default();
    for spec in ["psl2:7", "psl2:8", "psl2:13", "sym:4", "alt:5", "pgl2:7", "alt:7"] {
        let g = group(spec);
        if !find_triples(&g, [2, 3, 7], &cfg).unwrap().is_empty() {
            assert!(is_perfect(&g), "{spec}");
        }
    }
}

#[test]
fn classification_flags_are_consistent() {
    let cfg = SearchConfig::default();
    for spec in ["psl2:7", "psl2:8", "sym:4", "dih:6", "alt:6", "pgl2:5", "prod:cyc:2,sym:4"] {
        let f = classify(&group(spec), &cfg).unwrap().flags;
        assert!(!f.bounded_surface || f.handlebody, "{spec}");
        assert!(!f.handlebody || f.maximal_reducible, "{spec}");
        assert!(!f.g7 || f.maximal_reducible, "{spec}");
    }
}

#[test]
fn g7_quadruples_have_n_seven() {
    let cfg = SearchConfig::default();
    for q in [8, 13, 27, 29] {
        let g = make_psl2(q).unwrap();
        for t in find_triples(&g, [2, 3, 7], &cfg).unwrap().witnesses {
            if let Some(quad) = g7_quadruple_search(&g, &t, &cfg).unwrap() {
                assert_eq!(quad.n, 7);
                assert!(g.is_generated_by(&[quad.x1.clone(), quad.x2.clone(), quad.x3.clone()]));
            }
        }
    }
}

/// Hurwitz groups with no quotient of order 168 are quadrangle quotients.
#[test]
fn hurwitz_groups_without_klein_quotient_are_reducible() {
    let cfg = SearchConfig::default();
    for q in [8, 13] {
        let g = make_psl2(q).unwrap();
        assert!(!find_triples(&g, [2, 3, 7], &cfg).unwrap().is_empty());
        assert!(!find_quadruples(&g, &QuadrupleSearch::existence(), &cfg).unwrap().is_empty(), "PSL2({q})");
    }
}

#[test]
fn random_elements_cover_s4() {
    let g = group("sym:4");
    let seen: HashSet<Vec<usize>> = (0..10_000)
        .map(|s| {
            let x = g.random_element(s);
            (0..4).map(|i| x.image(i)).collect()
        })
        .collect();
    assert_eq!(seen.len(), 24);
}
