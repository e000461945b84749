use thiserror::Error;

use crate::graph::{ArcId, NodeId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arc {arc} has invalid capacity {capacity} (must be finite and non-negative)")]
    NegativeCapacity { arc: ArcId, capacity: f64 },
    #[error("the underlying undirected graph is not connected")]
    Disconnected,
    #[error("arc {arc} is a self-loop on node {node}")]
    SelfLoop { arc: ArcId, node: NodeId },
    #[error("bad terminals: {0}")]
    BadTerminal(String),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("node {0} is a terminal and cannot be removed")]
    TerminalRemoval(NodeId),
    #[error("unknown arc {0}")]
    UnknownArc(ArcId),
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("directed graphs are not supported by this method (ancestor trees need a symmetric cut function)")]
    DirectedUnsupported,
    #[error("method `{0}` needs a planar embedding")]
    EmbeddingRequired(&'static str),
    #[error("embedding is not planar: {0}")]
    NotPlanar(String),
    #[error("bad rotation system: {0}")]
    BadRotation(String),
    #[error("no face of the embedding contains both s and t")]
    NoStFace,
    #[error("flow reconstruction from dual distances is infeasible: {0}")]
    InfeasibleReconstruction(String),
    #[error("node {0} is a terminal; its vitality is undefined")]
    TerminalNode(NodeId),
    #[error("arc set is not contiguous in the embedding")]
    NotContiguous,
    #[error("arc set is empty")]
    EmptySet,
    #[error("instance too large for brute force ({nodes} nodes, limit {limit})")]
    TooLarge { nodes: usize, limit: usize },
    #[error("bad epsilon matrix: {0}")]
    BadEpsilon(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
