use proptest::prelude::*;

use rainbow_star::bounds::{exact_bound, BoundValue, Objective};
use rainbow_star::constructions::{build, ConstructionFamily, Params};
use rainbow_star::detector::{detect_homomorphic_center, find_rainbow_star, find_rainbow_star_naive};
use rainbow_star::model::{parse_edge_list, DigraphCollection, StarPattern};
use rainbow_star::oracle::{cover_oracle_s0q, max_exact, objective_value, SearchOptions};

/// Random collection on `2..=6` vertices with `1..=4` colors.
fn collection() -> impl Strategy<Value = DigraphCollection> {
    (2usize..=6, 1usize..=4)
        .prop_flat_map(|(n, c)| {
            let edge = (1..=c, 1..=n, 1..=n);
            (Just(n), Just(c), proptest::collection::btree_set(edge, 0..=n * n))
        })
        .prop_map(|(n, c, edges)| {
            let mut coll = DigraphCollection::new(n, c).unwrap();
            for (i, u, v) in edges {
                if u != v {
                    coll.add_edge(i, u, v).unwrap();
                }
            }
            coll
        })
}

fn star() -> impl Strategy<Value = StarPattern> {
    (0usize..=2, 0usize..=2)
        .prop_filter("nonempty", |&(p, q)| p + q > 0)
        .prop_map(|(p, q)| StarPattern::new(p, q).unwrap())
}

fn shuffled(len: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=len).collect::<Vec<_>>()).prop_shuffle()
}

fn with_perms() -> impl Strategy<Value = (DigraphCollection, Vec<usize>, Vec<usize>)> {
    collection().prop_flat_map(|coll| {
        let (n, c) = (coll.n(), coll.c());
        (Just(coll), shuffled(n), shuffled(c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn fast_detector_matches_naive(coll in collection(), pat in star()) {
        let fast = find_rainbow_star(&coll, pat);
        let slow = find_rainbow_star_naive(&coll, pat).unwrap();
        prop_assert_eq!(fast.is_some(), slow.is_some());
        if let Some(e) = fast {
            prop_assert!(e.validate(&coll, pat).is_ok());
            prop_assert!(detect_homomorphic_center(&coll, e.center, pat));
        }
    }

    #[test]
    fn reversal_swaps_in_and_out(coll in collection(), pat in star()) {
        let rev = coll.reverse();
        prop_assert_eq!(find_rainbow_star(&coll, pat).is_some(), find_rainbow_star(&rev, pat.reversed()).is_some());
        prop_assert_eq!(rev.reverse(), coll.clone());
        prop_assert_eq!(rev.edge_counts(), coll.edge_counts());
    }

    #[test]
    fn relabeling_preserves_detection((coll, vperm, cperm) in with_perms(), pat in star()) {
        let moved = coll.permute(&vperm, &cperm).unwrap();
        prop_assert_eq!(find_rainbow_star(&coll, pat).is_some(), find_rainbow_star(&moved, pat).is_some());
        prop_assert_eq!(moved.edge_counts().sum, coll.edge_counts().sum);
        prop_assert_eq!(moved.edge_counts().min, coll.edge_counts().min);
    }

    #[test]
    fn dense_and_sparse_storage_agree(coll in collection(), pat in star()) {
        let mut sparse = DigraphCollection::with_dense_threshold(coll.n(), coll.c(), 0).unwrap();
        for (i, u, v) in coll.edges() {
            sparse.add_edge(i, u, v).unwrap();
        }
        prop_assert!(coll.is_dense());
        prop_assert!(!sparse.is_dense());
        prop_assert_eq!(&sparse, &coll);
        prop_assert_eq!(sparse.to_edge_list(), coll.to_edge_list());
        prop_assert_eq!(find_rainbow_star(&sparse, pat).is_some(), find_rainbow_star(&coll, pat).is_some());
    }

    #[test]
    fn edge_list_round_trip(coll in collection()) {
        let text = coll.to_edge_list();
        let back = parse_edge_list(&text).unwrap();
        prop_assert_eq!(&back, &coll);
        prop_assert_eq!(back.to_edge_list(), text);
    }

    #[test]
    fn min_never_exceeds_average(coll in collection()) {
        let counts = coll.edge_counts();
        prop_assert!(coll.c() as u64 * counts.min <= counts.sum);
    }

    #[test]
    fn out_star_bounds_respect_min_sum_relation(n in 3usize..40, c in 1usize..12, q in 1usize..6) {
        prop_assume!(n > c && c >= q);
        let pat = StarPattern::new(0, q).unwrap();
        let min = exact_bound(pat, n, c, Objective::Min).unwrap();
        let sum = exact_bound(pat, n, c, Objective::Sum).unwrap();
        match (min.value, sum.value) {
            (BoundValue::Integer(m), BoundValue::Integer(s)) => prop_assert!(c as u64 * m <= s),
            other => prop_assert!(false, "unexpected values {:?}", other),
        }
    }

    #[test]
    fn applicable_constructions_are_rainbow_free(
        family in proptest::sample::select(ConstructionFamily::ALL.to_vec()),
        n in 2usize..24,
        c in 1usize..8,
        p in 0usize..3,
        q in 0usize..4,
    ) {
        prop_assume!(p + q > 0);
        if let Ok(out) = build(family, Params::new(n, c, p, q)) {
            let pat = StarPattern::new(p, q).unwrap();
            prop_assert!(find_rainbow_star(&out.collection, pat).is_none(), "{} contains a star", family);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_witness_is_free_and_attains_optimum(n in 2usize..=4, c in 1usize..=3, p in 0usize..=2, q in 0usize..=2) {
        prop_assume!(p + q > 0 && c * n * (n - 1) <= 36);
        let pat = StarPattern::new(p, q).unwrap();
        for objective in [Objective::Sum, Objective::Min] {
            let out = max_exact(n, c, pat, objective, &SearchOptions::default()).unwrap();
            prop_assert!(out.proved_optimal);
            prop_assert!(find_rainbow_star(&out.witness, pat).is_none());
            prop_assert_eq!(objective_value(&out.witness, objective), out.optimum);
        }
        let sum = max_exact(n, c, pat, Objective::Sum, &SearchOptions::default()).unwrap();
        let min = max_exact(n, c, pat, Objective::Min, &SearchOptions::default()).unwrap();
        prop_assert!(c as u64 * min.optimum <= sum.optimum);
    }

    #[test]
    fn cover_oracle_agrees_with_search(n in 3usize..=4, c in 1usize..=3, q in 1usize..=3) {
        prop_assume!(n > c && c >= q && c * n * (n - 1) <= 36);
        for objective in [Objective::Sum, Objective::Min] {
            let cover = cover_oracle_s0q(n, c, q, objective).unwrap();
            let search = max_exact(n, c, StarPattern::new(0, q).unwrap(), objective, &SearchOptions::default()).unwrap();
            prop_assert_eq!(cover.optimum, search.optimum);
        }
    }
}
