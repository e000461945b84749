//! Brute-force references and instance generators.
//!
//! Nothing here shares code with the fast paths beyond [`Network`] itself:
//! minimum cuts are found by enumerating every bipartition, vitalities by
//! deleting the resource and recomputing.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Arc, ArcId, Cut, Network, NodeId, TOLERANCE};
use crate::maxflow::max_flow_value;
use crate::planar::{DualGraph, Embedding};
use crate::report::Resource;

/// Largest network handed to exhaustive cut enumeration.
pub const BRUTE_FORCE_LIMIT: usize = 16;

/// Cheapest s-t cut over all `2^(n-2)` bipartitions. Ties go to the
/// lexicographically smallest source side.
pub fn min_cut_bruteforce(net: &Network) -> Result<(f64, Cut)> {
    cheapest_cut(net, |_| true)
}

/// Cheapest s-t cut that arc `e` crosses, by enumeration.
pub fn crossing_cut_bruteforce(net: &Network, e: ArcId) -> Result<(f64, Cut)> {
    let arc = *net.arc(e)?;
    cheapest_cut(net, |mask| mask[arc.tail] != mask[arc.head])
}

fn cheapest_cut(net: &Network, admit: impl Fn(&[bool]) -> bool) -> Result<(f64, Cut)> {
    let n = net.node_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            nodes: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let (s, t) = (net.source(), net.sink());
    let free: Vec<NodeId> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut best: Option<(f64, Vec<NodeId>, Vec<bool>)> = None;
    for bits in 0u32..(1 << free.len()) {
        let mut mask = vec![false; n];
        mask[s] = true;
        for (i, &v) in free.iter().enumerate() {
            mask[v] = bits >> i & 1 == 1;
        }
        if !admit(&mask) {
            continue;
        }
        let capacity = net.cut_capacity_mask(&mask)?;
        let side: Vec<NodeId> = (0..n).filter(|&v| mask[v]).collect();
        let better = match &best {
            None => true,
            Some((c, best_side, _)) => {
                capacity < c - TOLERANCE || (capacity <= c + TOLERANCE && side < *best_side)
            }
        };
        if better {
            best = Some((capacity, side, mask));
        }
    }
    // every arc crosses some s-t cut, so `best` is only empty for a
    // filter nothing satisfies
    let (capacity, _, mask) = best.ok_or_else(|| Error::BadPartition("no admissible cut".into()))?;
    Ok((capacity, Cut::from_mask(mask, capacity)))
}

/// `maxFlow(G) - maxFlow(G - R)` by deletion. Small instances use
/// exhaustive cuts so the answer does not depend on the flow solver.
pub fn vitality_bruteforce(net: &Network, resource: &Resource) -> Result<f64> {
    let reduced = match resource {
        Resource::Arc(e) => net.remove_arcs(&[*e])?,
        Resource::ArcSet(arcs) if arcs.is_empty() => return Err(Error::EmptySet),
        Resource::ArcSet(arcs) => net.remove_arcs(arcs)?,
        Resource::Node(v) => net.remove_node(*v)?,
    };
    let (full, rest) = if net.node_count() <= BRUTE_FORCE_LIMIT {
        (min_cut_bruteforce(net)?.0, min_cut_bruteforce(&reduced)?.0)
    } else {
        (max_flow_value(net), max_flow_value(&reduced))
    };
    Ok((full - rest).max(0.0))
}

/// Perturbations for the bipartite example network: `k x k`, every entry
/// strictly between 0 and `1/k`.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonMatrix {
    k: usize,
    values: Vec<f64>,
}

impl EpsilonMatrix {
    /// `values` in row-major order.
    pub fn new(k: usize, values: Vec<f64>) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadEpsilon("k must be positive".into()));
        }
        if values.len() != k * k {
            return Err(Error::BadEpsilon(format!(
                "{} values for a {k}x{k} matrix",
                values.len()
            )));
        }
        let bound = 1.0 / k as f64;
        if let Some((i, &v)) = values
            .iter()
            .enumerate()
            .find(|(_, &v)| !(v > 0.0 && v < bound))
        {
            return Err(Error::BadEpsilon(format!(
                "entry ({}, {}) = {v} not in (0, 1/{k})",
                i / k,
                i % k
            )));
        }
        Ok(EpsilonMatrix { k, values })
    }

    /// Distinct powers of two, `2^-(b + i*k + j)` with `2^-b < 1/k`. Every
    /// row or column partial sum is then a distinct subset sum, so for
    /// `k >= 3` all bipartite vitalities differ. Needs `1 + eps` to stay
    /// exact in a double, which limits `k` to 7.
    pub fn distinct(k: usize) -> Result<Self> {
        let mut b = 3;
        while (1usize << b) <= k {
            b += 1;
        }
        if b + k * k > 53 {
            return Err(Error::BadEpsilon(format!(
                "k = {k} is too large for exact distinct perturbations"
            )));
        }
        let values = (0..k * k).map(|idx| 0.5f64.powi((b + idx) as i32)).collect();
        EpsilonMatrix::new(k, values)
    }

    /// Random dyadic entries `r / 2^(b + 10)` with `r` in `1..1024`.
    pub fn random(k: usize, seed: u64) -> Result<Self> {
        let mut b = 1;
        while (1usize << b) <= k {
            b += 1;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scale = 0.5f64.powi(b + 10);
        let values = (0..k * k)
            .map(|_| rng.gen_range(1..1024) as f64 * scale)
            .collect();
        EpsilonMatrix::new(k, values)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.k + j]
    }

    /// `1 - min(row i without j, column j without i)`: the vitality of the
    /// bipartite arc `<x_i, y_j>`.
    pub fn expected_vitality(&self, i: usize, j: usize) -> f64 {
        let row: f64 = (0..self.k).filter(|&q| q != j).map(|q| self.get(i, q)).sum();
        let col: f64 = (0..self.k).filter(|&p| p != i).map(|p| self.get(p, j)).sum();
        1.0 - row.min(col)
    }
}

/// Undirected bipartite network: `s = 0`, `x_i = 1 + i`, `y_j = 1 + k + j`,
/// `t = 2k + 1`. Arcs: `s-x_i` (capacity `k`), then `x_i-y_j` row-major
/// (capacity `1 + eps[i][j]`), then `y_j-t` (capacity `k`).
pub fn generate_graph_b(eps: &EpsilonMatrix) -> Network {
    let k = eps.k;
    let (s, t) = (0, 2 * k + 1);
    let cap = k as f64;
    let mut arcs: Vec<Arc> = (0..k).map(|i| Arc::new(s, 1 + i, cap)).collect();
    for i in 0..k {
        for j in 0..k {
            arcs.push(Arc::new(1 + i, 1 + k + j, 1.0 + eps.get(i, j)));
        }
    }
    arcs.extend((0..k).map(|j| Arc::new(1 + k + j, t, cap)));
    Network::new(false, 2 * k + 2, arcs, s, t).expect("bipartite network is valid")
}

/// Arc id of `<x_i, y_j>` in [`generate_graph_b`].
pub fn graph_b_arc(k: usize, i: usize, j: usize) -> ArcId {
    k + i * k + j
}

/// Capacity of the arcs joining `s` and `t` to the grid.
pub const GRID_TRUNK: f64 = 4.0;

/// `rows x cols` grid drawn with straight lines. Cell `(r, c)` is node
/// `r * cols + c`; `s` and `t` are the last two nodes, left and right of the
/// grid, joined to every cell of the first and last column. Horizontal arcs
/// point right; vertical arcs get a random direction. Interior capacities
/// are multiples of 1/8 in `[1/8, 2]`.
pub fn generate_grid(rows: usize, cols: usize, seed: u64, directed: bool) -> (Network, Embedding) {
    assert!(rows >= 1 && cols >= 1, "grid needs at least one cell");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cell = |r: usize, c: usize| r * cols + c;
    let (s, t) = (rows * cols, rows * cols + 1);
    let mut capacity = || rng.gen_range(1..=16) as f64 / 8.0;

    let mut arcs = Vec::new();
    for r in 0..rows {
        arcs.push(Arc::new(s, cell(r, 0), GRID_TRUNK));
        arcs.push(Arc::new(cell(r, cols - 1), t, GRID_TRUNK));
    }
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                arcs.push(Arc::new(cell(r, c), cell(r, c + 1), capacity()));
            }
            if r + 1 < rows {
                arcs.push(Arc::new(cell(r, c), cell(r + 1, c), capacity()));
            }
        }
    }
    for arc in arcs.iter_mut().skip(2 * rows) {
        if arc.head == arc.tail + cols && rng.gen_bool(0.5) {
            std::mem::swap(&mut arc.tail, &mut arc.head);
        }
    }

    let mut coords = vec![(0.0, 0.0); rows * cols + 2];
    for r in 0..rows {
        for c in 0..cols {
            coords[cell(r, c)] = ((c + 1) as f64, -(r as f64));
        }
    }
    let middle = -((rows - 1) as f64) / 2.0;
    coords[s] = (0.0, middle);
    coords[t] = ((cols + 1) as f64, middle);

    let net = Network::new(directed, rows * cols + 2, arcs, s, t).expect("grid is valid");
    let emb = Embedding::from_coordinates(&net, &coords).expect("straight-line drawing");
    (net, emb)
}

/// Connected network on `n >= 2` nodes with `m >= n - 1` arcs: a random
/// spanning tree plus random extra arcs (parallel arcs allowed). `s = 0`,
/// `t = n - 1`. Capacities are multiples of 1/4 in `[0, 4]`.
pub fn random_network(n: usize, m: usize, directed: bool, seed: u64) -> Network {
    assert!(n >= 2 && m + 1 >= n, "need n >= 2 and m >= n - 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let capacity = |rng: &mut ChaCha8Rng| rng.gen_range(0..=16) as f64 / 4.0;
    let mut order: Vec<NodeId> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut arcs = Vec::with_capacity(m);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let (u, v) = if rng.gen_bool(0.5) {
            (parent, order[i])
        } else {
            (order[i], parent)
        };
        let c = capacity(&mut rng);
        arcs.push(Arc::new(u, v, c));
    }
    while arcs.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            let c = capacity(&mut rng);
            arcs.push(Arc::new(u, v, c));
        }
    }
    Network::new(directed, n, arcs, 0, n - 1).expect("spanning tree keeps it connected")
}

/// Grows a random arc set of at most `max_size` arcs whose dual arcs stay
/// connected, starting from a random arc.
pub fn random_contiguous_set(dual: &DualGraph, max_size: usize, seed: u64) -> Vec<ArcId> {
    let m = dual.primal_arc_count();
    assert!(m > 0 && max_size > 0, "need a nonempty network and size");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut by_face: Vec<Vec<ArcId>> = vec![Vec::new(); dual.node_count()];
    for e in 0..m {
        by_face[dual.left(e)].push(e);
        by_face[dual.right(e)].push(e);
    }
    let target = rng.gen_range(1..=max_size);
    let mut chosen = vec![rng.gen_range(0..m)];
    let mut faces = vec![dual.left(chosen[0]), dual.right(chosen[0])];
    while chosen.len() < target {
        let mut frontier: Vec<ArcId> = faces
            .iter()
            .flat_map(|&f| by_face[f].iter().copied())
            .filter(|e| !chosen.contains(e))
            .collect();
        frontier.sort_unstable();
        frontier.dedup();
        let Some(&e) = frontier.choose(&mut rng) else {
            break;
        };
        chosen.push(e);
        for f in [dual.left(e), dual.right(e)] {
            if !faces.contains(&f) {
                faces.push(f);
            }
        }
    }
    chosen.sort_unstable();
    chosen
}
