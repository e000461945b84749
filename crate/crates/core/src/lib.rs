//! Max-flow vitality: how much the maximum s-t flow drops when an arc, a
//! node or a contiguous set of arcs is removed.
//!
//! Two fast methods are provided. For undirected networks,
//! [`general::all_arc_vitalities`] answers every arc from an ancestor tree
//! built with `2(n - 1)` max-flow solves. For st-planar networks,
//! [`planar_vitality::VitalityIndex`] answers arc, node and contiguous set
//! queries in constant or `O(|F|)` time from two dual shortest-path sweeps.
//! [`oracle`] holds the brute-force references both are checked against.

pub mod error;
pub mod general;
pub mod graph;
pub mod instrument;
pub mod io;
pub mod maxflow;
pub mod oracle;
pub mod planar;
pub mod planar_vitality;
pub mod report;

pub use error::{Error, Result};
pub use graph::{approx_eq, Arc, ArcId, Cut, FlowAssignment, Network, NodeId, TOLERANCE};
pub use maxflow::{max_flow_value, min_cut, MaxFlow, MaxFlowSolver, SolverStats};
pub use planar::{Dart, DistanceIndex, DualGraph, Embedding};
pub use planar_vitality::VitalityIndex;
pub use report::{Method, Resource, VitalityEntry, VitalityReport};
