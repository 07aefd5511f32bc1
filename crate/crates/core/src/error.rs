use thiserror::Error;

use crate::graph::{StaticEdge, TemporalEdge, Time};

/// Errors raised by graph construction, relabeling and the algorithms built on top.
///
/// Edges are reported by vertex index; use [`crate::TemporalGraph::describe_edge`]
/// to turn them into names for user-facing output.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lifetime must be at least 1")]
    ZeroLifetime,
    #[error("time label {time} outside of [1, {lifetime}]")]
    TimeOutOfRange { time: Time, lifetime: Time },
    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),
    #[error("vertex index {index} out of range for {n} vertices")]
    UnknownVertex { index: u32, n: usize },
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertexName(String),
    #[error("duplicate temporal edge {0:?}")]
    DuplicateEdge(TemporalEdge),
    #[error("snapshot {time} is not connected")]
    NotAlwaysConnected { time: Time },
    #[error("temporal edge {0:?} does not exist")]
    MissingEdge(TemporalEdge),
    #[error("relabel target {0:?} already exists")]
    Collision(TemporalEdge),
    #[error("relabel must change the time label (got {0} -> {0})")]
    SameTime(Time),
    #[error("graphs do not share the same vertex set and lifetime")]
    IncompatibleGraphs,
    #[error("temporal edge {0:?} is not a bridge")]
    NotABridge(TemporalEdge),
    #[error("temporal edge {0:?} is unchangeable")]
    Unchangeable(TemporalEdge),
    #[error("graphs are already equal")]
    NoDifference,
    #[error("pair {0:?} has a different number of time labels in the two graphs")]
    PairCountMismatch(StaticEdge),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
