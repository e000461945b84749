//! Per-thread tallies of the expensive subroutines.
//!
//! Solvers keep their own [`SolverStats`](crate::maxflow::SolverStats); these
//! counters additionally let a caller prove that a stretch of code ran no
//! max-flow and no shortest-path computation at all, regardless of which
//! solver instance would have been used.

use std::cell::Cell;

thread_local! {
    static MAXFLOW_SOLVES: Cell<u64> = const { Cell::new(0) };
    static SSSP_RUNS: Cell<u64> = const { Cell::new(0) };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Tally {
    pub maxflow_solves: u64,
    pub sssp_runs: u64,
}

impl Tally {
    pub fn since(self, earlier: Tally) -> Tally {
        Tally {
            maxflow_solves: self.maxflow_solves - earlier.maxflow_solves,
            sssp_runs: self.sssp_runs - earlier.sssp_runs,
        }
    }
}

pub fn snapshot() -> Tally {
    Tally {
        maxflow_solves: MAXFLOW_SOLVES.with(Cell::get),
        sssp_runs: SSSP_RUNS.with(Cell::get),
    }
}

pub(crate) fn record_maxflow() {
    MAXFLOW_SOLVES.with(|c| c.set(c.get() + 1));
}

pub(crate) fn record_sssp() {
    SSSP_RUNS.with(|c| c.set(c.get() + 1));
}
