use thiserror::Error;

use crate::graph::{Edge, NodeId};

/// Errors raised by the library. Variants carry enough context to
/// reproduce the failing object in a diagnostic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has {0} nodes; at most {max} are supported", max = crate::graph::MAX_NODES)]
    TooManyNodes(usize),

    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(NodeId, NodeId),

    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(NodeId, NodeId),

    #[error("edge ({0}, {1}) has an endpoint outside [0, {2})")]
    NodeOutOfRange(NodeId, NodeId, usize),

    #[error("edge ({0}, {1}) is not ordered; expected u < v")]
    UnorderedEdge(NodeId, NodeId),

    #[error("edge {0} is not an edge of the graph")]
    EdgeNotFound(Edge),

    #[error("nodes must be distinct, got {0} twice")]
    SameEndpoints(NodeId),

    #[error("graph is not connected")]
    Disconnected,

    #[error("base and lifted graph have different node counts ({0} vs {1})")]
    NodeCountMismatch(usize, usize),

    #[error("base edge {0} is missing from the lifted graph")]
    BaseEdgeNotLifted(Edge),

    #[error("lifted graph has {0} edges; at most {max} are supported", max = crate::lifting::MAX_LIFTED_EDGES)]
    TooManyEdges(usize),

    #[error("edge {0} is not a lifted-only edge (not in E' \\ E)")]
    NotLiftedEdge(Edge),

    #[error(
        "edge set is not a multicut: {edge} is cut but its endpoints stay connected via {path:?}"
    )]
    NotAMulticut { edge: Edge, path: Vec<NodeId> },

    #[error("graph is not complete")]
    NotComplete,

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("expected a vector of length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("inequality is not valid for the polytope; violated by {witness}")]
    InvalidInequality { witness: String },

    #[error("edge set is not a minimal cut between {0} and {1}")]
    NotAMinimalCut(NodeId, NodeId),

    #[error("expected a cut with exactly one edge, got {0}")]
    NotSingleEdgeCut(usize),

    #[error("malformed inequality tag: {0}")]
    MalformedTag(String),

    #[error("cost function is missing an entry for edge {0}")]
    MissingCost(Edge),

    #[error("instance has {nodes} nodes; enumeration guard is {limit}")]
    InstanceTooLarge { nodes: usize, limit: usize },

    #[error("value {0} is outside [0, 1]")]
    OutOfBox(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
