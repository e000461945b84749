//! Instance builders shared by the benchmarks.

use flowvit_core::oracle::{generate_grid, random_network};
use flowvit_core::{Embedding, Network};

pub const SEED: u64 = 0x5eed;

pub fn grid_instance(rows: usize, cols: usize) -> (Network, Embedding) {
    generate_grid(rows, cols, SEED, false)
}

/// Connected undirected network with roughly three arcs per node.
pub fn sparse_instance(n: usize) -> Network {
    random_network(n, 3 * n, false, SEED)
}
