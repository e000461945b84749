use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{FlowAssignment, Network, NodeId, TOLERANCE};
use crate::instrument;

use super::DualGraph;

/// Dual distances from `U*` and to `L*`, plus the faces around every primal node.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceIndex {
    from_upper: Vec<f64>,
    to_lower: Vec<f64>,
    face_start: Vec<usize>,
    faces: Vec<usize>,
    upper: usize,
    lower: usize,
}

impl DistanceIndex {
    pub fn from_upper(&self) -> &[f64] {
        &self.from_upper
    }

    pub fn to_lower(&self) -> &[f64] {
        &self.to_lower
    }

    /// Dual nodes of the faces around primal node `v`.
    pub fn node_faces(&self, v: NodeId) -> &[usize] {
        &self.faces[self.face_start[v]..self.face_start[v + 1]]
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.lower
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    node: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance, ties by node id
        other
            .dist
            .total_cmp(&self.dist)
            .then(other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Adjacency {
    start: Vec<usize>,
    edges: Vec<(usize, f64)>,
}

impl Adjacency {
    fn build(n: usize, arcs: impl Iterator<Item = (usize, usize, f64)> + Clone) -> Self {
        let mut start = vec![0; n + 1];
        for (u, _, _) in arcs.clone() {
            start[u + 1] += 1;
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut edges = vec![(0, 0.0); start[n]];
        for (u, v, len) in arcs {
            edges[fill[u]] = (v, len);
            fill[u] += 1;
        }
        Adjacency { start, edges }
    }
}

fn dijkstra(adj: &Adjacency, source: usize) -> Vec<f64> {
    instrument::record_sssp();
    let n = adj.start.len() - 1;
    let mut dist = vec![f64::INFINITY; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Entry { dist: 0.0, node: source });
    while let Some(Entry { dist: d, node: u }) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, len) in &adj.edges[adj.start[u]..adj.start[u + 1]] {
            let nd = d + len;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Entry { dist: nd, node: v });
            }
        }
    }
    dist
}

/// One SSSP from `U*` in the dual and one from `L*` in its reversal.
pub fn shortest_distances(dual: &DualGraph) -> DistanceIndex {
    let n = dual.node_count();
    let forward = dual.arcs().iter().map(|a| (a.tail, a.head, a.length));
    let backward = dual.arcs().iter().map(|a| (a.head, a.tail, a.length));
    let (from_upper, to_lower) = if dual.is_directed() {
        (
            dijkstra(&Adjacency::build(n, forward), dual.upper()),
            dijkstra(&Adjacency::build(n, backward), dual.lower()),
        )
    } else {
        // an undirected dual is its own reversal
        let both = Adjacency::build(n, forward.chain(backward));
        (dijkstra(&both, dual.upper()), dijkstra(&both, dual.lower()))
    };
    let (face_start, faces) = dual.all_node_faces();
    DistanceIndex {
        from_upper,
        to_lower,
        face_start,
        faces,
        upper: dual.upper(),
        lower: dual.lower(),
    }
}

pub fn planar_max_flow_value(idx: &DistanceIndex) -> f64 {
    idx.from_upper[idx.lower]
}

/// Flow on `e` is the potential difference `dist(right face) - dist(left face)`
/// of the `U*` distances. Undirected arcs may carry negative (backward) flow.
pub fn hassin_flow_assignment(
    net: &Network,
    dual: &DualGraph,
    idx: &DistanceIndex,
) -> Result<FlowAssignment> {
    if dual.primal_arc_count() != net.arc_count() {
        return Err(Error::InfeasibleReconstruction(
            "dual belongs to another network".into(),
        ));
    }
    let value = planar_max_flow_value(idx);
    let tol = TOLERANCE * (1.0 + value);
    let mut flows = Vec::with_capacity(net.arc_count());
    for (e, arc) in net.arcs().iter().enumerate() {
        let f = idx.from_upper[dual.right(e)] - idx.from_upper[dual.left(e)];
        let lower = if net.is_directed() { 0.0 } else { -arc.capacity };
        if !(lower - tol..=arc.capacity + tol).contains(&f) {
            return Err(Error::InfeasibleReconstruction(format!(
                "arc {e}: potential difference {f} outside [{lower}, {}]",
                arc.capacity
            )));
        }
        flows.push(f.clamp(lower, arc.capacity));
    }
    Ok(FlowAssignment { flows, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Arc;
    use crate::maxflow::max_flow_value;
    use crate::planar::{build_dual, Embedding};

    fn net(directed: bool, n: usize, arcs: &[(usize, usize, f64)], s: usize, t: usize) -> Network {
        let arcs = arcs.iter().map(|&(u, v, c)| Arc::new(u, v, c)).collect();
        Network::new(directed, n, arcs, s, t).unwrap()
    }

    fn triangle(directed: bool) -> (Network, DualGraph) {
        let g = net(directed, 3, &[(0, 1, 2.0), (1, 2, 3.0), (0, 2, 4.0)], 0, 2);
        let emb = Embedding::from_coordinates(&g, &[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]).unwrap();
        let dual = build_dual(&g, &emb).unwrap();
        (g, dual)
    }

    #[test]
    fn single_arc_distances() {
        let g = net(true, 2, &[(0, 1, 5.0)], 0, 1);
        let emb = Embedding::new(&g, vec![vec![0], vec![1]]).unwrap();
        let dual = build_dual(&g, &emb).unwrap();
        let idx = shortest_distances(&dual);
        let (u, l) = (dual.upper(), dual.lower());
        assert_eq!((idx.from_upper()[u], idx.from_upper()[l]), (0.0, 5.0));
        assert_eq!((idx.to_lower()[l], idx.to_lower()[u]), (0.0, 5.0));
        assert_eq!(planar_max_flow_value(&idx), 5.0);
        let flow = hassin_flow_assignment(&g, &dual, &idx).unwrap();
        assert_eq!(flow.flows, vec![5.0]);
    }

    #[test]
    fn triangle_value_and_flow() {
        let (g, dual) = triangle(true);
        let idx = shortest_distances(&dual);
        assert_eq!(planar_max_flow_value(&idx), 6.0);
        let flow = hassin_flow_assignment(&g, &dual, &idx).unwrap();
        assert_eq!(flow.flows, vec![2.0, 2.0, 4.0]);
        assert_eq!(flow.value, 6.0);
        flow.check(&g, 1e-9).unwrap();
        assert_eq!(max_flow_value(&g), 6.0);
    }

    #[test]
    fn undirected_triangle_is_symmetric() {
        let (g, dual) = triangle(false);
        let idx = shortest_distances(&dual);
        assert_eq!(planar_max_flow_value(&idx), 6.0);
        assert_eq!(idx.to_lower()[idx.upper()], 6.0);
        hassin_flow_assignment(&g, &dual, &idx)
            .unwrap()
            .check(&g, 1e-9)
            .unwrap();
    }

    #[test]
    fn distances_respect_triangle_inequality() {
        let (_, dual) = triangle(true);
        let idx = shortest_distances(&dual);
        let d = planar_max_flow_value(&idx);
        for a in dual.arcs() {
            assert!(idx.from_upper()[a.head] <= idx.from_upper()[a.tail] + a.length);
            assert!(idx.to_lower()[a.tail] <= idx.to_lower()[a.head] + a.length);
        }
        for v in 0..dual.node_count() {
            assert!(idx.from_upper()[v] + idx.to_lower()[v] >= d);
        }
    }

    #[test]
    fn counts_two_sweeps() {
        let (_, dual) = triangle(true);
        let before = instrument::snapshot();
        shortest_distances(&dual);
        assert_eq!(instrument::snapshot().since(before).sssp_runs, 2);
    }
}
