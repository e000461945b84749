//! Capacitated s-t networks, cuts and flow assignments.
//!
//! Node ids are dense `0..n`. Arcs keep their insertion order and that index
//! is the arc id used everywhere else in the crate. Parallel arcs are kept
//! distinct.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type ArcId = usize;

/// Absolute tolerance for every floating-point comparison in the crate.
pub const TOLERANCE: f64 = 1e-9;

pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOLERANCE
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub tail: NodeId,
    pub head: NodeId,
    pub capacity: f64,
}

impl Arc {
    pub fn new(tail: NodeId, head: NodeId, capacity: f64) -> Self {
        Arc {
            tail,
            head,
            capacity,
        }
    }

    /// The endpoint opposite to `v`, if `v` is an endpoint.
    pub fn other(&self, v: NodeId) -> Option<NodeId> {
        if v == self.tail {
            Some(self.head)
        } else if v == self.head {
            Some(self.tail)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    directed: bool,
    node_count: usize,
    arcs: Vec<Arc>,
    source: NodeId,
    sink: NodeId,
}

impl Network {
    /// Builds and validates a network.
    pub fn new(
        directed: bool,
        node_count: usize,
        arcs: Vec<Arc>,
        source: NodeId,
        sink: NodeId,
    ) -> Result<Self> {
        let net = Network {
            directed,
            node_count,
            arcs,
            source,
            sink,
        };
        net.validate()?;
        Ok(net)
    }

    /// Removal views may be disconnected, so they skip the connectivity check.
    fn view(&self, arcs: Vec<Arc>) -> Self {
        Network {
            directed: self.directed,
            node_count: self.node_count,
            arcs,
            source: self.source,
            sink: self.sink,
        }
    }

    /// Checks every network invariant and reports the first violation:
    /// terminals, then arcs in id order, then connectivity.
    pub fn validate(&self) -> Result<()> {
        let n = self.node_count;
        if self.source >= n || self.sink >= n {
            return Err(Error::BadTerminal(format!(
                "terminals ({}, {}) out of range for {} nodes",
                self.source, self.sink, n
            )));
        }
        if self.source == self.sink {
            return Err(Error::BadTerminal("source equals sink".into()));
        }
        for (id, arc) in self.arcs.iter().enumerate() {
            for v in [arc.tail, arc.head] {
                if v >= n {
                    return Err(Error::UnknownNode(v));
                }
            }
            if arc.tail == arc.head {
                return Err(Error::SelfLoop {
                    arc: id,
                    node: arc.tail,
                });
            }
            if !(arc.capacity.is_finite() && arc.capacity >= 0.0) {
                return Err(Error::NegativeCapacity {
                    arc: id,
                    capacity: arc.capacity,
                });
            }
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let adj = self.undirected_adjacency();
        let mut seen = vec![false; self.node_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.node_count
    }

    /// Per node, the incident `(neighbor, arc id)` pairs ignoring direction.
    pub fn undirected_adjacency(&self) -> Vec<Vec<(NodeId, ArcId)>> {
        let mut adj = vec![Vec::new(); self.node_count];
        for (id, arc) in self.arcs.iter().enumerate() {
            adj[arc.tail].push((arc.head, id));
            adj[arc.head].push((arc.tail, id));
        }
        adj
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> Result<&Arc> {
        self.arcs.get(id).ok_or(Error::UnknownArc(id))
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn sink(&self) -> NodeId {
        self.sink
    }

    pub fn total_capacity(&self) -> f64 {
        self.arcs.iter().map(|a| a.capacity).sum()
    }

    /// Capacity of the cut whose source side is `source_side`.
    ///
    /// Directed networks count only arcs leaving the source side; undirected
    /// networks count every crossing arc.
    pub fn cut_capacity(&self, source_side: &[NodeId]) -> Result<f64> {
        let mut mask = vec![false; self.node_count];
        for &v in source_side {
            if v >= self.node_count {
                return Err(Error::UnknownNode(v));
            }
            mask[v] = true;
        }
        self.cut_capacity_mask(&mask)
    }

    pub fn cut_capacity_mask(&self, in_source: &[bool]) -> Result<f64> {
        if in_source.len() != self.node_count {
            return Err(Error::BadPartition(format!(
                "mask has {} entries for {} nodes",
                in_source.len(),
                self.node_count
            )));
        }
        if !in_source[self.source] {
            return Err(Error::BadPartition("source not on the source side".into()));
        }
        if in_source[self.sink] {
            return Err(Error::BadPartition("sink on the source side".into()));
        }
        let total = self
            .arcs
            .iter()
            .filter(|a| {
                let (t, h) = (in_source[a.tail], in_source[a.head]);
                if self.directed {
                    t && !h
                } else {
                    t != h
                }
            })
            .map(|a| a.capacity)
            .sum();
        Ok(total)
    }

    /// `G - R` for an arc set. Arc ids of the result are renumbered densely in
    /// the original order.
    pub fn remove_arcs(&self, removed: &[ArcId]) -> Result<Network> {
        let mut drop = vec![false; self.arcs.len()];
        for &id in removed {
            if id >= self.arcs.len() {
                return Err(Error::UnknownArc(id));
            }
            drop[id] = true;
        }
        let arcs = self
            .arcs
            .iter()
            .zip(&drop)
            .filter(|(_, &d)| !d)
            .map(|(a, _)| *a)
            .collect();
        Ok(self.view(arcs))
    }

    /// `G - v`. The node keeps its id and becomes isolated; all incident arcs
    /// are deleted.
    pub fn remove_node(&self, v: NodeId) -> Result<Network> {
        if v >= self.node_count {
            return Err(Error::UnknownNode(v));
        }
        if v == self.source || v == self.sink {
            return Err(Error::TerminalRemoval(v));
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|a| a.tail != v && a.head != v)
            .copied()
            .collect();
        Ok(self.view(arcs))
    }

    /// Ids of the arcs incident to `v`.
    pub fn incident_arcs(&self, v: NodeId) -> Vec<ArcId> {
        self.arcs
            .iter()
            .enumerate()
            .filter(|(_, a)| a.tail == v || a.head == v)
            .map(|(id, _)| id)
            .collect()
    }
}

/// An s-t cut given by its source side.
#[derive(Debug, Clone, PartialEq)]
pub struct Cut {
    in_source: Vec<bool>,
    pub capacity: f64,
}

impl Cut {
    pub fn from_mask(in_source: Vec<bool>, capacity: f64) -> Self {
        Cut {
            in_source,
            capacity,
        }
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.in_source[v]
    }

    pub fn mask(&self) -> &[bool] {
        &self.in_source
    }

    /// Source-side node ids in increasing order.
    pub fn source_side(&self) -> Vec<NodeId> {
        self.in_source
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn separates(&self, x: NodeId, y: NodeId) -> bool {
        self.in_source[x] != self.in_source[y]
    }
}

/// Per-arc flow values aligned with `Network::arcs`. Undirected arcs carry
/// the signed net flow from tail to head.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowAssignment {
    pub flows: Vec<f64>,
    pub value: f64,
}

impl FlowAssignment {
    /// Verifies capacity and conservation constraints and that `value` is
    /// the net flow out of the source, all within `tol`.
    pub fn check(&self, net: &Network, tol: f64) -> std::result::Result<(), String> {
        if self.flows.len() != net.arc_count() {
            return Err(format!(
                "{} flow values for {} arcs",
                self.flows.len(),
                net.arc_count()
            ));
        }
        let mut balance = vec![0.0; net.node_count()];
        for (id, (arc, &f)) in net.arcs().iter().zip(&self.flows).enumerate() {
            let lower = if net.is_directed() { 0.0 } else { -arc.capacity };
            if f < lower - tol || f > arc.capacity + tol {
                return Err(format!(
                    "arc {id}: flow {f} outside [{lower}, {}]",
                    arc.capacity
                ));
            }
            balance[arc.tail] -= f;
            balance[arc.head] += f;
        }
        for (v, &b) in balance.iter().enumerate() {
            if v != net.source() && v != net.sink() && b.abs() > tol {
                return Err(format!("node {v}: conservation violated by {b}"));
            }
        }
        let out_of_source = -balance[net.source()];
        if (out_of_source - self.value).abs() > tol {
            return Err(format!(
                "reported value {} but {} leaves the source",
                self.value, out_of_source
            ));
        }
        Ok(())
    }
}
