//! Highest-label push-relabel with the gap heuristic.
//!
//! Phase one computes a maximum preflow, phase two returns the stranded
//! excess to the source so the result is a proper flow. The canonical minimum
//! cut is the set of nodes reachable from the source in the final residual
//! graph.

use std::collections::VecDeque;

use crate::graph::{Cut, FlowAssignment, Network, NodeId};
use crate::instrument;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub maxflow_calls: u64,
    /// Push operations across all solves.
    pub augment_ops: u64,
}

/// An undirected arc layered on top of a network for a single solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtraArc {
    pub a: NodeId,
    pub b: NodeId,
    pub capacity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxFlow {
    pub value: f64,
    /// Residual-reachable set from the source.
    pub in_source: Vec<bool>,
    /// Flow on each arc of the input network, signed for undirected arcs.
    pub flows: Vec<f64>,
}

impl MaxFlow {
    pub fn cut(&self) -> Cut {
        Cut::from_mask(self.in_source.clone(), self.value)
    }

    pub fn assignment(&self) -> FlowAssignment {
        FlowAssignment {
            flows: self.flows.clone(),
            value: self.value,
        }
    }
}

/// Reusable solver front-end that counts its calls.
#[derive(Debug, Default)]
pub struct MaxFlowSolver {
    stats: SolverStats,
}

impl MaxFlowSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    pub fn solve(&mut self, net: &Network) -> MaxFlow {
        self.solve_augmented(net, &[])
    }

    pub fn solve_augmented(&mut self, net: &Network, extra: &[ExtraArc]) -> MaxFlow {
        self.stats.maxflow_calls += 1;
        instrument::record_maxflow();
        let mut engine = PushRelabel::new(net, extra);
        engine.run();
        self.stats.augment_ops += engine.pushes;
        engine.into_result(net.arc_count())
    }
}

pub fn max_flow_value(net: &Network) -> f64 {
    MaxFlowSolver::new().solve(net).value
}

pub fn min_cut(net: &Network) -> Cut {
    MaxFlowSolver::new().solve(net).cut()
}

pub fn max_flow_assignment(net: &Network) -> FlowAssignment {
    MaxFlowSolver::new().solve(net).assignment()
}

/// Residual network in CSR layout. Edges come in pairs `e`, `e ^ 1`.
struct PushRelabel {
    n: usize,
    source: NodeId,
    sink: NodeId,
    to: Vec<NodeId>,
    residual: Vec<f64>,
    original: Vec<f64>,
    start: Vec<usize>,
    edges: Vec<usize>,
    excess: Vec<f64>,
    label: Vec<usize>,
    current: Vec<usize>,
    label_count: Vec<usize>,
    buckets: Vec<Vec<NodeId>>,
    highest: usize,
    pushes: u64,
    zero_threshold: f64,
}

impl PushRelabel {
    fn new(net: &Network, extra: &[ExtraArc]) -> Self {
        let n = net.node_count();
        let pairs = net.arc_count() + extra.len();
        let mut to = Vec::with_capacity(2 * pairs);
        let mut residual = Vec::with_capacity(2 * pairs);
        let mut scale = 0.0;
        for arc in net.arcs() {
            to.extend([arc.head, arc.tail]);
            let back = if net.is_directed() { 0.0 } else { arc.capacity };
            residual.extend([arc.capacity, back]);
            scale += arc.capacity;
        }
        for arc in extra {
            to.extend([arc.b, arc.a]);
            residual.extend([arc.capacity, arc.capacity]);
            scale += arc.capacity;
        }

        let mut start = vec![0usize; n + 1];
        for e in 0..to.len() {
            start[to[e ^ 1] + 1] += 1;
        }
        for v in 0..n {
            start[v + 1] += start[v];
        }
        let mut fill = start.clone();
        let mut edges = vec![0; to.len()];
        for e in 0..to.len() {
            let tail = to[e ^ 1];
            edges[fill[tail]] = e;
            fill[tail] += 1;
        }

        PushRelabel {
            n,
            source: net.source(),
            sink: net.sink(),
            original: residual.clone(),
            to,
            residual,
            current: start[..n].to_vec(),
            start,
            edges,
            excess: vec![0.0; n],
            label: vec![0; n],
            label_count: vec![0; 2 * n + 1],
            buckets: vec![Vec::new(); n],
            highest: 0,
            pushes: 0,
            zero_threshold: 8.0 * f64::EPSILON * scale,
        }
    }

    fn out_edges(&self, v: NodeId) -> &[usize] {
        &self.edges[self.start[v]..self.start[v + 1]]
    }

    fn run(&mut self) {
        self.initial_labels();
        self.saturate_source();
        self.maximum_preflow();
        self.return_excess();
    }

    /// Exact distances to the sink in the residual graph; `n` if unreachable.
    fn initial_labels(&mut self) {
        let n = self.n;
        self.label.fill(n);
        self.label[self.sink] = 0;
        let mut queue = VecDeque::from([self.sink]);
        while let Some(x) = queue.pop_front() {
            for i in self.start[x]..self.start[x + 1] {
                let e = self.edges[i];
                let w = self.to[e];
                if self.label[w] == n && w != self.sink && self.residual[e ^ 1] > 0.0 {
                    self.label[w] = self.label[x] + 1;
                    queue.push_back(w);
                }
            }
        }
        self.label[self.source] = n;
        for v in 0..n {
            self.label_count[self.label[v]] += 1;
        }
    }

    fn saturate_source(&mut self) {
        let s = self.source;
        for i in self.start[s]..self.start[s + 1] {
            let e = self.edges[i];
            let delta = self.residual[e];
            if delta > 0.0 {
                let v = self.to[e];
                let was_idle = self.excess[v] <= 0.0;
                self.apply_push(e, delta);
                self.excess[s] -= delta;
                self.excess[v] += delta;
                if was_idle {
                    self.activate(v);
                }
            }
        }
    }

    fn apply_push(&mut self, e: usize, delta: f64) {
        if delta == self.residual[e] {
            self.residual[e] = 0.0;
        } else {
            self.residual[e] -= delta;
        }
        self.residual[e ^ 1] += delta;
        self.pushes += 1;
    }

    fn activate(&mut self, v: NodeId) {
        if v != self.source && v != self.sink && self.label[v] < self.n {
            self.buckets[self.label[v]].push(v);
            self.highest = self.highest.max(self.label[v]);
        }
    }

    fn maximum_preflow(&mut self) {
        loop {
            let Some(u) = self.buckets[self.highest].pop() else {
                if self.highest == 0 {
                    break;
                }
                self.highest -= 1;
                continue;
            };
            // Entries can go stale when a gap lifts a queued node to n.
            if self.label[u] != self.highest || self.excess[u] <= 0.0 {
                continue;
            }
            self.discharge_preflow(u);
        }
    }

    fn discharge_preflow(&mut self, u: NodeId) {
        let n = self.n;
        while self.excess[u] > 0.0 {
            if self.current[u] == self.start[u + 1] {
                self.relabel_with_gap(u);
                if self.label[u] >= n {
                    return;
                }
                self.current[u] = self.start[u];
                continue;
            }
            let e = self.edges[self.current[u]];
            let v = self.to[e];
            if self.residual[e] > 0.0 && self.label[u] == self.label[v] + 1 {
                self.push(u, e);
            } else {
                self.current[u] += 1;
            }
        }
    }

    fn push(&mut self, u: NodeId, e: usize) {
        let v = self.to[e];
        let delta = self.excess[u].min(self.residual[e]);
        let was_idle = self.excess[v] <= 0.0;
        self.apply_push(e, delta);
        if delta == self.excess[u] {
            self.excess[u] = 0.0;
        } else {
            self.excess[u] -= delta;
        }
        self.excess[v] += delta;
        if was_idle {
            self.activate(v);
        }
    }

    fn relabel_with_gap(&mut self, u: NodeId) {
        let n = self.n;
        let old = self.label[u];
        if self.label_count[old] == 1 {
            // Nothing remains at `old`, so nodes at or above it cannot reach the sink.
            for w in 0..n {
                let d = self.label[w];
                if d >= old && d < n {
                    self.label_count[d] -= 1;
                    self.label[w] = n;
                    self.label_count[n] += 1;
                }
            }
            return;
        }
        let next = self
            .out_edges(u)
            .iter()
            .filter(|&&e| self.residual[e] > 0.0)
            .map(|&e| self.label[self.to[e]] + 1)
            .min()
            .unwrap_or(n)
            .min(n);
        self.label_count[old] -= 1;
        self.label[u] = next;
        self.label_count[next] += 1;
    }

    /// Generic FIFO push-relabel over the nodes left with excess; every such
    /// node has a residual path back to the source.
    fn return_excess(&mut self) {
        let (s, t) = (self.source, self.sink);
        let mut queue: VecDeque<NodeId> = (0..self.n)
            .filter(|&v| v != s && v != t && self.excess[v] > 0.0)
            .collect();
        while let Some(u) = queue.pop_front() {
            while self.excess[u] > 0.0 {
                if self.current[u] == self.start[u + 1] {
                    let next = self
                        .out_edges(u)
                        .iter()
                        .filter(|&&e| self.residual[e] > 0.0)
                        .map(|&e| self.label[self.to[e]] + 1)
                        .min();
                    match next {
                        Some(d) => self.label[u] = d,
                        None => {
                            debug_assert!(false, "excess at node {u} cannot return to the source");
                            break;
                        }
                    }
                    self.current[u] = self.start[u];
                    continue;
                }
                let e = self.edges[self.current[u]];
                let v = self.to[e];
                if self.residual[e] > 0.0 && self.label[u] == self.label[v] + 1 {
                    let was_idle = self.excess[v] <= 0.0;
                    let delta = self.excess[u].min(self.residual[e]);
                    self.apply_push(e, delta);
                    if delta == self.excess[u] {
                        self.excess[u] = 0.0;
                    } else {
                        self.excess[u] -= delta;
                    }
                    self.excess[v] += delta;
                    if was_idle && v != s && v != t {
                        queue.push_back(v);
                    }
                } else {
                    self.current[u] += 1;
                }
            }
        }
    }

    fn into_result(self, arc_count: usize) -> MaxFlow {
        let mut in_source = vec![false; self.n];
        in_source[self.source] = true;
        let mut queue = VecDeque::from([self.source]);
        while let Some(u) = queue.pop_front() {
            for &e in self.out_edges(u) {
                let v = self.to[e];
                if !in_source[v] && self.residual[e] > self.zero_threshold {
                    in_source[v] = true;
                    queue.push_back(v);
                }
            }
        }
        let flows = (0..arc_count)
            .map(|i| self.original[2 * i] - self.residual[2 * i])
            .collect();
        MaxFlow {
            value: self.excess[self.sink],
            in_source,
            flows,
        }
    }
}
