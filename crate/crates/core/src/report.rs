use std::fmt;
use std::str::FromStr;

use crate::graph::{ArcId, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Delete the resource and re-solve.
    Naive,
    /// Global min cut plus the cheapest cut crossing the arc.
    Lemma1,
    /// Crossing-cut capacities read off an ancestor tree.
    Ancestor,
    /// Dual shortest-path distances of an st-planar embedding.
    Planar,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::Lemma1 => "lemma1",
            Method::Ancestor => "ancestor",
            Method::Planar => "planar",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(Method::Naive),
            "lemma1" => Ok(Method::Lemma1),
            "ancestor" => Ok(Method::Ancestor),
            "planar" => Ok(Method::Planar),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resource {
    Arc(ArcId),
    Node(NodeId),
    ArcSet(Vec<ArcId>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct VitalityEntry {
    pub resource: Resource,
    pub vitality: f64,
    pub method: Method,
    /// `(dist from U*, dist to L*)` used by the planar formulas.
    pub dual_distances: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VitalityReport {
    pub entries: Vec<VitalityEntry>,
    pub max_flow: f64,
}

impl VitalityReport {
    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.vitality).collect()
    }
}
