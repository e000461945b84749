use flowvit_core::general::{arc_vitality_lemma1, arc_vitality_naive};
use flowvit_core::maxflow::max_flow_value;
use flowvit_core::oracle::{generate_grid, random_contiguous_set, vitality_bruteforce};
use flowvit_core::planar::{
    build_dual, hassin_flow_assignment, planar_max_flow_value, shortest_distances,
};
use flowvit_core::{Arc, Embedding, Network, Resource, VitalityIndex};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn grid() -> impl Strategy<Value = (usize, usize, u64, bool)> {
    (1usize..=6, 1usize..=6, any::<u64>(), any::<bool>())
}

/// Same drawing with s and t exchanged; directed arcs are reversed so that
/// every flow value is unchanged.
fn mirrored(net: &Network) -> Network {
    let arcs = net
        .arcs()
        .iter()
        .map(|a| {
            if net.is_directed() {
                Arc::new(a.head, a.tail, a.capacity)
            } else {
                *a
            }
        })
        .collect();
    Network::new(net.is_directed(), net.node_count(), arcs, net.sink(), net.source()).unwrap()
}

fn mirrored_embedding(net: &Network, emb: &Embedding) -> Embedding {
    let flip = net.is_directed();
    let rotation = (0..net.node_count())
        .map(|v| emb.rotation(v).iter().map(|&d| if flip { d ^ 1 } else { d }).collect())
        .collect();
    Embedding::new(&mirrored(net), rotation).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn dual_distance_is_the_max_flow((rows, cols, seed, directed) in (1usize..=14, 1usize..=14, any::<u64>(), any::<bool>())) {
        let (net, emb) = generate_grid(rows, cols, seed, directed);
        let dual = build_dual(&net, &emb).unwrap();
        let idx = shortest_distances(&dual);
        let d = planar_max_flow_value(&idx);
        prop_assert!((d - max_flow_value(&net)).abs() <= TOL);
        let flow = hassin_flow_assignment(&net, &dual, &idx).unwrap();
        flow.check(&net, TOL).map_err(TestCaseError::fail)?;
        prop_assert!((flow.value - d).abs() <= TOL);
        for a in dual.arcs() {
            prop_assert!(idx.from_upper()[a.head] <= idx.from_upper()[a.tail] + a.length + TOL);
            prop_assert!(idx.to_lower()[a.tail] <= idx.to_lower()[a.head] + a.length + TOL);
        }
        for v in 0..dual.node_count() {
            prop_assert!(idx.from_upper()[v] + idx.to_lower()[v] >= d - TOL);
        }
        if !directed {
            prop_assert!((idx.to_lower()[idx.upper()] - d).abs() <= TOL);
        }
    }

    #[test]
    fn arc_vitality_matches_deletion((rows, cols, seed, directed) in grid()) {
        let (net, emb) = generate_grid(rows, cols, seed, directed);
        let idx = VitalityIndex::new(&net, &emb).unwrap();
        for e in 0..net.arc_count() {
            let q = idx.arc_vitality(e).unwrap();
            let naive = arc_vitality_naive(&net, e).unwrap();
            prop_assert!((q.vitality - naive).abs() <= TOL, "arc {}: {} vs {}", e, q.vitality, naive);
            if !directed {
                prop_assert!((q.vitality - arc_vitality_lemma1(&net, e).unwrap()).abs() <= TOL);
            }
            // zeroing e* and searching again never lengthens U*-L* and lands on min(D, term)
            let zeroed = shortest_distances(&idx.dual().with_removed(&[e]));
            let term = q.dual_distances.0 + q.dual_distances.1;
            let after = planar_max_flow_value(&zeroed);
            prop_assert!(after <= idx.max_flow() + TOL);
            prop_assert!((after - term.min(idx.max_flow())).abs() <= TOL);
        }
    }

    #[test]
    fn node_vitality_matches_deletion((rows, cols, seed, directed) in grid()) {
        let (net, emb) = generate_grid(rows, cols, seed, directed);
        let idx = VitalityIndex::new(&net, &emb).unwrap();
        for entry in idx.all_nodes().entries {
            let brute = vitality_bruteforce(&net, &entry.resource).unwrap();
            prop_assert!((entry.vitality - brute).abs() <= TOL, "{:?}", entry.resource);
        }
    }

    #[test]
    fn set_vitality_matches_deletion((rows, cols, seed, directed) in grid(), set_seed in any::<u64>()) {
        let (net, emb) = generate_grid(rows, cols, seed, directed);
        let idx = VitalityIndex::new(&net, &emb).unwrap();
        for k in 0..8 {
            let set = random_contiguous_set(idx.dual(), 6, set_seed.wrapping_add(k));
            let q = idx.contiguous_set_vitality(&set).unwrap();
            prop_assert!(q.touched <= 2 * set.len());
            let brute = vitality_bruteforce(&net, &Resource::ArcSet(set.clone())).unwrap();
            prop_assert!((q.vitality - brute).abs() <= TOL, "{:?}: {} vs {}", set, q.vitality, brute);
        }
    }

    #[test]
    fn singleton_and_star_sets_agree((rows, cols, seed, directed) in grid()) {
        let (net, emb) = generate_grid(rows, cols, seed, directed);
        let idx = VitalityIndex::new(&net, &emb).unwrap();
        for e in 0..net.arc_count() {
            let single = idx.contiguous_set_vitality(&[e]).unwrap().vitality;
            prop_assert!((single - idx.arc_vitality(e).unwrap().vitality).abs() <= TOL);
        }
        for entry in idx.all_nodes().entries {
            let Resource::Node(v) = entry.resource else { unreachable!() };
            let star = idx.contiguous_set_vitality(&net.incident_arcs(v)).unwrap().vitality;
            prop_assert!((star - entry.vitality).abs() <= TOL);
        }
    }

    #[test]
    fn swapping_terminals_changes_nothing((rows, cols, seed, directed) in grid()) {
        let (net, emb) = generate_grid(rows, cols, seed, directed);
        let idx = VitalityIndex::new(&net, &emb).unwrap();
        let flipped = mirrored(&net);
        let other = VitalityIndex::new(&flipped, &mirrored_embedding(&net, &emb)).unwrap();
        prop_assert!((idx.max_flow() - other.max_flow()).abs() <= TOL);
        for (a, b) in idx.all_arcs().values().iter().zip(other.all_arcs().values()) {
            prop_assert!((a - b).abs() <= TOL);
        }
        for (a, b) in idx.all_nodes().values().iter().zip(other.all_nodes().values()) {
            prop_assert!((a - b).abs() <= TOL);
        }
    }
}

fn check_fixture(directed: bool, n: usize, arcs: &[(usize, usize, f64)], coords: &[(f64, f64)]) {
    let arcs = arcs.iter().map(|&(u, v, c)| Arc::new(u, v, c)).collect();
    let net = Network::new(directed, n, arcs, 0, n - 1).unwrap();
    let emb = Embedding::from_coordinates(&net, coords).unwrap();
    let idx = VitalityIndex::new(&net, &emb).unwrap();
    assert_eq!(idx.max_flow(), max_flow_value(&net));
    for e in 0..net.arc_count() {
        let brute = vitality_bruteforce(&net, &Resource::Arc(e)).unwrap();
        assert_eq!(idx.arc_vitality(e).unwrap().vitality, brute, "arc {e}");
    }
    for entry in idx.all_nodes().entries {
        let brute = vitality_bruteforce(&net, &entry.resource).unwrap();
        assert_eq!(entry.vitality, brute, "{:?}", entry.resource);
    }
}

#[test]
fn source_visited_twice_on_the_outer_walk() {
    // s=0 carries a pendant path 0-1-2 besides the triangle s, a=3, t=4
    let arcs = [(0, 3, 2.0), (3, 4, 3.0), (0, 4, 4.0), (0, 1, 1.0), (1, 2, 5.0)];
    let coords = [(0.0, 0.0), (-1.0, 0.0), (-2.0, 0.0), (1.0, 1.0), (2.0, 0.0)];
    for directed in [true, false] {
        check_fixture(directed, 5, &arcs, &coords);
    }
}

#[test]
fn sink_and_inner_cut_vertex() {
    // s=0 -> a=1 -> t=5 with a triangle 1-2-3 hanging off a and a pendant 5-4 at t
    let arcs = [
        (0, 1, 3.0),
        (1, 5, 2.0),
        (1, 2, 1.0),
        (2, 3, 1.0),
        (3, 1, 1.0),
        (5, 4, 6.0),
        (0, 5, 1.5),
    ];
    let coords = [(0.0, 0.0), (1.0, 1.0), (0.5, 2.0), (1.5, 2.0), (3.0, 0.0), (2.0, 0.0)];
    for directed in [true, false] {
        check_fixture(directed, 6, &arcs, &coords);
    }
}

#[test]
fn bridge_node_on_both_boundaries() {
    // s=0 - a=1 - t=2 plus parallel-free detour 1-3 that does not help
    let arcs = [(0, 1, 3.0), (1, 2, 7.0), (1, 3, 2.0)];
    let coords = [(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (1.0, 1.0)];
    for directed in [true, false] {
        check_fixture(directed, 4, &arcs, &coords);
    }
}

#[test]
fn twenty_by_twenty_flow_value() {
    for directed in [true, false] {
        let (net, emb) = generate_grid(20, 20, 11, directed);
        let idx = shortest_distances(&build_dual(&net, &emb).unwrap());
        assert!((planar_max_flow_value(&idx) - max_flow_value(&net)).abs() <= TOL);
    }
}
