//! Constant-time arc and node vitality, and `O(|F|)` contiguous set
//! vitality, for st-planar networks.
//!
//! Removing a set of arcs `F` whose dual arcs form a connected subgraph
//! shrinks those dual arcs to length zero. The shortest `U* -> L*` path then
//! either ignores them or enters their endpoint set `K*` once and leaves it
//! once, so the new flow value is
//! `min(D, min_K dist(U*, .) + min_K dist(., L*))`.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::graph::{ArcId, Network, NodeId};
use crate::planar::{build_dual, shortest_distances, DistanceIndex, DualGraph, Embedding};
use crate::report::{Method, Resource, VitalityEntry, VitalityReport};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarQuery {
    pub vitality: f64,
    /// `(dist from U*, dist to L*)` entering and leaving the removed region.
    pub dual_distances: (f64, f64),
    /// Dual nodes whose distances were read by this query.
    pub touched: usize,
}

#[derive(Debug)]
pub struct VitalityIndex {
    dual: DualGraph,
    distances: DistanceIndex,
    max_flow: f64,
    /// Per primal node: minimum `U*` and `L*` distances over its faces.
    node_reach: Vec<(f64, f64)>,
    touches: AtomicU64,
}

impl VitalityIndex {
    /// Builds the dual and runs the two shortest-path sweeps. Nothing is
    /// computed after this.
    pub fn new(net: &Network, emb: &Embedding) -> Result<Self> {
        let dual = build_dual(net, emb)?;
        let distances = shortest_distances(&dual);
        let max_flow = distances.from_upper()[dual.lower()];
        let node_reach = (0..net.node_count())
            .map(|v| {
                distances.node_faces(v).iter().fold(
                    (f64::INFINITY, f64::INFINITY),
                    |(u, l), &f| (u.min(distances.from_upper()[f]), l.min(distances.to_lower()[f])),
                )
            })
            .collect();
        Ok(VitalityIndex {
            dual,
            distances,
            max_flow,
            node_reach,
            touches: AtomicU64::new(0),
        })
    }

    pub fn max_flow(&self) -> f64 {
        self.max_flow
    }

    pub fn dual(&self) -> &DualGraph {
        &self.dual
    }

    pub fn distances(&self) -> &DistanceIndex {
        &self.distances
    }

    /// Dual nodes read by queries so far.
    pub fn touches(&self) -> u64 {
        self.touches.load(Ordering::Relaxed)
    }

    fn touch(&self, count: usize) {
        self.touches.fetch_add(count as u64, Ordering::Relaxed);
    }

    fn loss(&self, through: (f64, f64)) -> f64 {
        (self.max_flow - (through.0 + through.1)).max(0.0)
    }

    pub fn arc_vitality(&self, e: ArcId) -> Result<PlanarQuery> {
        if e >= self.dual.primal_arc_count() {
            return Err(Error::UnknownArc(e));
        }
        let (up, down) = (self.distances.from_upper(), self.distances.to_lower());
        let (left, right) = (self.dual.left(e), self.dual.right(e));
        let mut through = (up[left], down[right]);
        if !self.dual.is_directed() && up[right] + down[left] < through.0 + through.1 {
            through = (up[right], down[left]);
        }
        self.touch(2);
        Ok(PlanarQuery {
            vitality: self.loss(through),
            dual_distances: through,
            touched: 2,
        })
    }

    /// Vitality of removing every arc at `v`; reads only per-node minima
    /// prepared at construction.
    pub fn node_vitality(&self, v: NodeId) -> Result<PlanarQuery> {
        if v >= self.node_reach.len() {
            return Err(Error::UnknownNode(v));
        }
        let (s, t) = self.dual.terminals();
        if v == s || v == t {
            return Err(Error::TerminalNode(v));
        }
        // an isolated node has infinite reach and so zero vitality
        let through = self.node_reach[v];
        Ok(PlanarQuery {
            vitality: self.loss(through),
            dual_distances: through,
            touched: 0,
        })
    }

    /// Vitality of a set whose dual arcs form a connected subgraph.
    pub fn contiguous_set_vitality(&self, arcs: &[ArcId]) -> Result<PlanarQuery> {
        if arcs.is_empty() {
            return Err(Error::EmptySet);
        }
        if let Some(&e) = arcs.iter().find(|&&e| e >= self.dual.primal_arc_count()) {
            return Err(Error::UnknownArc(e));
        }
        let mut endpoints: Vec<usize> = arcs
            .iter()
            .flat_map(|&e| [self.dual.left(e), self.dual.right(e)])
            .collect();
        endpoints.sort_unstable();
        endpoints.dedup();

        let local = |x: usize| endpoints.binary_search(&x).expect("endpoint is listed");
        let mut parent: Vec<usize> = (0..endpoints.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = endpoints.len();
        for &e in arcs {
            let a = find(&mut parent, local(self.dual.left(e)));
            let b = find(&mut parent, local(self.dual.right(e)));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        if components != 1 {
            return Err(Error::NotContiguous);
        }

        let (up, down) = (self.distances.from_upper(), self.distances.to_lower());
        let through = endpoints.iter().fold((f64::INFINITY, f64::INFINITY), |(u, l), &x| {
            (u.min(up[x]), l.min(down[x]))
        });
        self.touch(endpoints.len());
        Ok(PlanarQuery {
            vitality: self.loss(through),
            dual_distances: through,
            touched: endpoints.len(),
        })
    }

    pub fn all_arcs(&self) -> VitalityReport {
        let entries = (0..self.dual.primal_arc_count())
            .map(|e| entry(Resource::Arc(e), self.arc_vitality(e).expect("arc id in range")))
            .collect();
        VitalityReport {
            entries,
            max_flow: self.max_flow,
        }
    }

    /// Every non-terminal node, in id order.
    pub fn all_nodes(&self) -> VitalityReport {
        let (s, t) = self.dual.terminals();
        let entries = (0..self.node_reach.len())
            .filter(|&v| v != s && v != t)
            .map(|v| entry(Resource::Node(v), self.node_vitality(v).expect("non-terminal node")))
            .collect();
        VitalityReport {
            entries,
            max_flow: self.max_flow,
        }
    }
}

fn entry(resource: Resource, q: PlanarQuery) -> VitalityEntry {
    VitalityEntry {
        resource,
        vitality: q.vitality,
        method: Method::Planar,
        dual_distances: Some(q.dual_distances),
    }
}
