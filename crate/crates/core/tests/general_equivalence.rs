use flowvit_core::general::{
    all_arc_vitalities, arc_vitality_lemma1, arc_vitality_naive, build_ancestor_tree,
    min_cut_crossing_arc,
};
use flowvit_core::oracle::{crossing_cut_bruteforce, random_network, vitality_bruteforce};
use flowvit_core::{Method, Resource};
use proptest::prelude::*;

fn undirected() -> impl Strategy<Value = (usize, usize, u64)> {
    (2usize..=10, 0usize..=12, any::<u64>()).prop_map(|(n, extra, seed)| (n, n - 1 + extra, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn crossing_cut_matches_enumeration((n, m, seed) in undirected()) {
        let net = random_network(n, m, false, seed);
        for e in 0..net.arc_count() {
            let (fast, cut) = min_cut_crossing_arc(&net, e).unwrap();
            let (brute, _) = crossing_cut_bruteforce(&net, e).unwrap();
            prop_assert!((fast - brute).abs() <= 1e-9, "arc {}: {} vs {}", e, fast, brute);
            let arc = net.arcs()[e];
            prop_assert!(cut.separates(arc.tail, arc.head));
            prop_assert!(cut.separates(net.source(), net.sink()));
        }
    }

    #[test]
    fn lemma1_matches_deletion((n, m, seed) in undirected()) {
        let net = random_network(n, m, false, seed);
        for e in 0..net.arc_count() {
            let fast = arc_vitality_lemma1(&net, e).unwrap();
            let naive = arc_vitality_naive(&net, e).unwrap();
            let brute = vitality_bruteforce(&net, &Resource::Arc(e)).unwrap();
            prop_assert!((fast - naive).abs() <= 1e-9);
            prop_assert!((naive - brute).abs() <= 1e-9);
        }
    }

    #[test]
    fn ancestor_tree_matches_naive((n, m, seed) in undirected()) {
        let net = random_network(n, m, false, seed);
        let tree = build_ancestor_tree(&net).unwrap();
        prop_assert_eq!(tree.stats().maxflow_calls, 2 * (n as u64 - 1));
        tree.check_invariants(&net).map_err(TestCaseError::fail)?;
        let naive = all_arc_vitalities(&net, Method::Naive).unwrap();
        let fast = all_arc_vitalities(&net, Method::Ancestor).unwrap();
        prop_assert!((naive.max_flow - fast.max_flow).abs() <= 1e-9);
        for (a, b) in naive.values().iter().zip(fast.values()) {
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn ancestor_queries_match_enumeration((n, m, seed) in undirected()) {
        let net = random_network(n, m, false, seed);
        let tree = build_ancestor_tree(&net).unwrap();
        for e in 0..net.arc_count() {
            let arc = net.arcs()[e];
            let (brute, _) = crossing_cut_bruteforce(&net, e).unwrap();
            prop_assert!((tree.query(arc.tail, arc.head).unwrap() - brute).abs() <= 1e-9);
        }
    }

    #[test]
    fn vitality_is_bounded_by_capacity((n, m, seed) in undirected()) {
        let net = random_network(n, m, false, seed);
        let report = all_arc_vitalities(&net, Method::Lemma1).unwrap();
        for (arc, v) in net.arcs().iter().zip(report.values()) {
            prop_assert!(v >= 0.0 && v <= arc.capacity + 1e-9);
        }
    }
}

#[test]
fn directed_input_is_rejected_by_the_fast_methods() {
    let net = random_network(6, 10, true, 1);
    for method in [Method::Lemma1, Method::Ancestor] {
        assert_eq!(
            all_arc_vitalities(&net, method),
            Err(flowvit_core::Error::DirectedUnsupported)
        );
    }
    assert!(all_arc_vitalities(&net, Method::Naive).is_ok());
}
