//! All-arc vitality for general undirected networks.
//!
//! `flowVit(e) = max(0, c(minCut) - (c(minCut_e) - c(e)))`, where `minCut_e`
//! is the cheapest s-t cut crossing `e`. The cheapest crossing cut for
//! `e = <x, y>` is the better of two augmented solves: one pinning `x` to the
//! source side and `y` to the sink side with very high capacity arcs, one
//! pinning them the other way round. An [`AncestorTree`] answers these
//! queries for every arc after `n - 1` such pair computations.

mod ancestor;

pub use ancestor::{build_ancestor_tree, AncestorTree};

use crate::error::{Error, Result};
use crate::graph::{ArcId, Cut, Network, NodeId};
use crate::maxflow::{ExtraArc, MaxFlowSolver};
use crate::report::{Method, Resource, VitalityEntry, VitalityReport};

/// `maxFlow(G) - maxFlow(G - e)`; works for directed networks too.
pub fn arc_vitality_naive(net: &Network, e: ArcId) -> Result<f64> {
    vitality_naive(net, &Resource::Arc(e))
}

/// Delete-and-recompute vitality of any resource, directed or not.
pub fn vitality_naive(net: &Network, resource: &Resource) -> Result<f64> {
    let reduced = match resource {
        Resource::Arc(e) => net.remove_arcs(&[*e])?,
        Resource::ArcSet(arcs) if arcs.is_empty() => return Err(Error::EmptySet),
        Resource::ArcSet(arcs) => net.remove_arcs(arcs)?,
        Resource::Node(v) if *v == net.source() || *v == net.sink() => {
            return Err(Error::TerminalNode(*v))
        }
        Resource::Node(v) => net.remove_node(*v)?,
    };
    let mut solver = MaxFlowSolver::new();
    let full = solver.solve(net).value;
    Ok((full - solver.solve(&reduced).value).max(0.0))
}

/// Capacity of the cheapest s-t cut crossing arc `e`, with a witness.
/// Runs exactly two max-flow solves.
pub fn min_cut_crossing_arc(net: &Network, e: ArcId) -> Result<(f64, Cut)> {
    if net.is_directed() {
        return Err(Error::DirectedUnsupported);
    }
    let arc = *net.arc(e)?;
    let cut = min_cut_separating(&mut MaxFlowSolver::new(), net, arc.tail, arc.head);
    Ok((cut.capacity, cut))
}

/// Cheapest cut that separates `x` from `y` and `s` from `t`. The returned
/// cut's capacity is measured in `net` itself.
pub(crate) fn min_cut_separating(
    solver: &mut MaxFlowSolver,
    net: &Network,
    x: NodeId,
    y: NodeId,
) -> Cut {
    let (s, t) = (net.source(), net.sink());
    let big = 1.0 + net.total_capacity();
    let pin = |pairs: [(NodeId, NodeId); 2]| -> Vec<ExtraArc> {
        pairs
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| ExtraArc { a, b, capacity: big })
            .collect()
    };
    let first = solver.solve_augmented(net, &pin([(x, s), (y, t)]));
    let second = solver.solve_augmented(net, &pin([(x, t), (y, s)]));
    // A side assignment that is impossible (x = s and y = s, say) leaves a
    // pinning arc in every cut, so its value is at least `big`.
    let best = if second.value < first.value {
        second
    } else {
        first
    };
    debug_assert!(best.value < big, "both pinnings infeasible for ({x}, {y})");
    let capacity = net
        .cut_capacity_mask(&best.in_source)
        .expect("augmented cut separates s from t");
    Cut::from_mask(best.in_source, capacity)
}

pub fn arc_vitality_lemma1(net: &Network, e: ArcId) -> Result<f64> {
    let (crossing, _) = min_cut_crossing_arc(net, e)?;
    let full = MaxFlowSolver::new().solve(net).value;
    Ok(vitality_from_crossing_cut(full, crossing, net.arc(e)?.capacity))
}

fn vitality_from_crossing_cut(max_flow: f64, crossing: f64, capacity: f64) -> f64 {
    (max_flow - (crossing - capacity)).max(0.0)
}

/// Vitality of every arc, in arc id order.
pub fn all_arc_vitalities(net: &Network, method: Method) -> Result<VitalityReport> {
    if net.is_directed() && matches!(method, Method::Lemma1 | Method::Ancestor) {
        return Err(Error::DirectedUnsupported);
    }
    let (max_flow, values) = match method {
        Method::Naive => {
            let mut solver = MaxFlowSolver::new();
            let full = solver.solve(net).value;
            let mut values = Vec::with_capacity(net.arc_count());
            for e in 0..net.arc_count() {
                let reduced = solver.solve(&net.remove_arcs(&[e])?).value;
                values.push((full - reduced).max(0.0));
            }
            (full, values)
        }
        Method::Lemma1 => {
            let mut solver = MaxFlowSolver::new();
            let full = solver.solve(net).value;
            let values = net
                .arcs()
                .iter()
                .map(|arc| {
                    let cut = min_cut_separating(&mut solver, net, arc.tail, arc.head);
                    vitality_from_crossing_cut(full, cut.capacity, arc.capacity)
                })
                .collect();
            (full, values)
        }
        Method::Ancestor => {
            let tree = build_ancestor_tree(net)?;
            // The s-t query is the global minimum cut, so no extra solve.
            let full = tree.query(net.source(), net.sink())?;
            let values = net
                .arcs()
                .iter()
                .map(|arc| {
                    let crossing = tree.query(arc.tail, arc.head)?;
                    Ok(vitality_from_crossing_cut(full, crossing, arc.capacity))
                })
                .collect::<Result<Vec<_>>>()?;
            (full, values)
        }
        Method::Planar => return Err(Error::EmbeddingRequired("planar")),
    };
    let entries = values
        .into_iter()
        .enumerate()
        .map(|(e, vitality)| VitalityEntry {
            resource: Resource::Arc(e),
            vitality,
            method,
            dual_distances: None,
        })
        .collect();
    Ok(VitalityReport { entries, max_flow })
}
