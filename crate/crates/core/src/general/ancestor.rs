//! Ancestor tree for the cut cost that is the ordinary capacity when the
//! cut separates s from t and infinite otherwise.
//!
//! Leaves are inserted one node at a time. For a new node `z` the tree is
//! descended from the root following the side of each stored cut that
//! contains `z`, ending at a leaf `w`. One pair computation gives the
//! cheapest cut `Z` separating `z` from `w` (value `mu`). Along the descent
//! path the stored values never decrease; `z` is attached above the first
//! path node whose value exceeds `mu`. Every leaf `u` below that point has
//! `lambda(w, u) > mu`, so `Z` must separate `z` from `u` (otherwise it
//! would separate `w` from `u` at cost `mu`). Leaves hanging off earlier
//! path nodes are already separated from `z` by those nodes' cuts at their
//! exact value. Hence every lowest common ancestor stores the cheapest cut
//! for its pair, with `n - 1` pair computations in total.

use crate::error::{Error, Result};
use crate::graph::{Cut, Network, NodeId, TOLERANCE};
use crate::maxflow::{MaxFlowSolver, SolverStats};

use super::min_cut_separating;

#[derive(Debug, Clone)]
enum TreeNode {
    Leaf(NodeId),
    /// `children[0]` holds the leaves on the cut's source side.
    Internal { cut: Cut, children: [usize; 2] },
}

#[derive(Debug, Clone)]
pub struct AncestorTree {
    nodes: Vec<TreeNode>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    leaf: Vec<usize>,
    root: usize,
    stats: SolverStats,
}

pub fn build_ancestor_tree(net: &Network) -> Result<AncestorTree> {
    if net.is_directed() {
        return Err(Error::DirectedUnsupported);
    }
    let n = net.node_count();
    let mut solver = MaxFlowSolver::new();
    let mut nodes = vec![TreeNode::Leaf(0)];
    let mut leaf = vec![usize::MAX; n];
    leaf[0] = 0;
    let mut root = 0;

    for z in 1..n {
        // (tree node, child slot taken) along the descent
        let mut path: Vec<(usize, usize)> = Vec::new();
        let mut at = root;
        while let TreeNode::Internal { cut, children } = &nodes[at] {
            let slot = if cut.contains(z) { 0 } else { 1 };
            path.push((at, slot));
            at = children[slot];
        }
        let TreeNode::Leaf(w) = nodes[at] else {
            unreachable!("descent ends at a leaf")
        };

        let cut = min_cut_separating(&mut solver, net, z, w);
        let mu = cut.capacity;
        let split = path
            .iter()
            .position(|&(a, _)| capacity_of(&nodes[a]) > mu + TOLERANCE)
            .unwrap_or(path.len());
        let subtree = path.get(split).map_or(at, |&(a, _)| a);

        let z_leaf = nodes.len();
        nodes.push(TreeNode::Leaf(z));
        leaf[z] = z_leaf;
        let children = if cut.contains(z) {
            [z_leaf, subtree]
        } else {
            [subtree, z_leaf]
        };
        let joint = nodes.len();
        nodes.push(TreeNode::Internal { cut, children });

        match split.checked_sub(1).map(|i| path[i]) {
            Some((above, slot)) => {
                if let TreeNode::Internal { children, .. } = &mut nodes[above] {
                    children[slot] = joint;
                }
            }
            None => root = joint,
        }
    }

    let mut tree = AncestorTree {
        parent: vec![None; nodes.len()],
        depth: vec![0; nodes.len()],
        nodes,
        leaf,
        root,
        stats: solver.stats(),
    };
    tree.index_parents();
    Ok(tree)
}

fn capacity_of(node: &TreeNode) -> f64 {
    match node {
        TreeNode::Leaf(_) => f64::INFINITY,
        TreeNode::Internal { cut, .. } => cut.capacity,
    }
}

impl AncestorTree {
    fn index_parents(&mut self) {
        let mut stack = vec![self.root];
        while let Some(a) = stack.pop() {
            if let TreeNode::Internal { children, .. } = &self.nodes[a] {
                for &c in children {
                    self.parent[c] = Some(a);
                    self.depth[c] = self.depth[a] + 1;
                    stack.push(c);
                }
            }
        }
    }

    /// Solver counters accumulated while building.
    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf.len()
    }

    pub fn internal_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, TreeNode::Internal { .. }))
            .count()
    }

    fn lca(&self, x: NodeId, y: NodeId) -> Result<usize> {
        let n = self.leaf.len();
        for v in [x, y] {
            if v >= n {
                return Err(Error::UnknownNode(v));
            }
        }
        if x == y {
            return Err(Error::BadPartition(format!(
                "query needs two distinct nodes, got {x} twice"
            )));
        }
        let (mut a, mut b) = (self.leaf[x], self.leaf[y]);
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].expect("non-root has a parent");
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].expect("non-root has a parent");
        }
        while a != b {
            a = self.parent[a].expect("non-root has a parent");
            b = self.parent[b].expect("non-root has a parent");
        }
        Ok(a)
    }

    /// Capacity of the cheapest cut separating both `x` from `y` and `s`
    /// from `t`, read at the lowest common ancestor.
    pub fn query(&self, x: NodeId, y: NodeId) -> Result<f64> {
        Ok(self.query_cut(x, y)?.capacity)
    }

    pub fn query_cut(&self, x: NodeId, y: NodeId) -> Result<&Cut> {
        match &self.nodes[self.lca(x, y)?] {
            TreeNode::Internal { cut, .. } => Ok(cut),
            TreeNode::Leaf(_) => unreachable!("distinct leaves meet at an internal node"),
        }
    }

    fn leaves_under(&self, a: usize) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            match &self.nodes[x] {
                TreeNode::Leaf(v) => out.push(*v),
                TreeNode::Internal { children, .. } => stack.extend(children),
            }
        }
        out
    }

    /// Checks the structural invariants: `n` leaves, `n - 1` internal nodes,
    /// every stored cut separates s from t and separates the leaves of its
    /// two subtrees.
    pub fn check_invariants(&self, net: &Network) -> std::result::Result<(), String> {
        let n = net.node_count();
        if self.leaves_under(self.root).len() != n {
            return Err(format!("tree does not reach all {n} leaves"));
        }
        if self.internal_count() != n.saturating_sub(1) {
            return Err(format!("{} internal nodes for {n} leaves", self.internal_count()));
        }
        for (a, node) in self.nodes.iter().enumerate() {
            let TreeNode::Internal { cut, children } = node else {
                continue;
            };
            if !cut.contains(net.source()) || cut.contains(net.sink()) {
                return Err(format!("internal node {a} does not separate s from t"));
            }
            for (side, &child) in children.iter().enumerate() {
                if let Some(v) = self
                    .leaves_under(child)
                    .into_iter()
                    .find(|&v| cut.contains(v) != (side == 0))
                {
                    return Err(format!("internal node {a}: leaf {v} on the wrong side"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::general::min_cut_crossing_arc;
    use crate::graph::Arc;

    fn undirected(n: usize, arcs: &[(usize, usize, f64)], s: usize, t: usize) -> Network {
        let arcs = arcs.iter().map(|&(u, v, c)| Arc::new(u, v, c)).collect();
        Network::new(false, n, arcs, s, t).unwrap()
    }

    #[test]
    fn two_nodes() {
        let net = undirected(2, &[(0, 1, 5.0)], 0, 1);
        let tree = build_ancestor_tree(&net).unwrap();
        assert_eq!(tree.internal_count(), 1);
        assert_eq!(tree.query(0, 1).unwrap(), 5.0);
        assert_eq!(tree.stats().maxflow_calls, 2);
        tree.check_invariants(&net).unwrap();
    }

    #[test]
    fn path_queries_match_direct() {
        let net = undirected(3, &[(0, 1, 3.0), (1, 2, 7.0)], 0, 2);
        let tree = build_ancestor_tree(&net).unwrap();
        tree.check_invariants(&net).unwrap();
        assert_eq!(tree.internal_count(), 2);
        for e in 0..net.arc_count() {
            let a = net.arcs()[e];
            assert_eq!(
                tree.query(a.tail, a.head).unwrap(),
                min_cut_crossing_arc(&net, e).unwrap().0
            );
        }
        assert_eq!(tree.query(0, 2).unwrap(), 3.0);
        assert_eq!(tree.stats().maxflow_calls, 4);
    }

    #[test]
    fn every_pair_matches_direct_computation() {
        // pendant and parallel arcs around a 4-cycle; s=0, t=2
        let net = undirected(
            6,
            &[
                (0, 1, 4.0),
                (1, 2, 1.0),
                (2, 3, 3.0),
                (3, 0, 2.0),
                (1, 4, 0.5),
                (4, 3, 6.0),
                (0, 5, 1.0),
                (0, 5, 0.25),
            ],
            0,
            2,
        );
        let tree = build_ancestor_tree(&net).unwrap();
        tree.check_invariants(&net).unwrap();
        assert_eq!(tree.stats().maxflow_calls, 10);
        let mut solver = MaxFlowSolver::new();
        for x in 0..6 {
            for y in 0..6 {
                if x != y {
                    let direct = min_cut_separating(&mut solver, &net, x, y).capacity;
                    assert_eq!(tree.query(x, y).unwrap(), direct, "pair ({x}, {y})");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_queries_and_directed() {
        let net = undirected(2, &[(0, 1, 5.0)], 0, 1);
        let tree = build_ancestor_tree(&net).unwrap();
        assert_eq!(tree.query(0, 9), Err(Error::UnknownNode(9)));
        assert!(tree.query(1, 1).is_err());
        let directed = Network::new(true, 2, vec![Arc::new(0, 1, 1.0)], 0, 1).unwrap();
        assert!(matches!(
            build_ancestor_tree(&directed),
            Err(Error::DirectedUnsupported)
        ));
    }
}
