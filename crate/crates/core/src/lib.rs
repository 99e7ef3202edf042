//! Lifted multicuts of graphs: feasibility, enumeration, polytope
//! dimension, facet conditions and small exact and heuristic solvers.

pub mod error;
pub mod facets;
pub mod generate;
pub mod graph;
pub mod io;
pub mod lifting;
pub mod partitions;
pub mod polytope;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Cycle, Edge, Graph, NodeId, NodeMask, Path};
pub use lifting::{EdgeLabeling, LiftedPair};
pub use partitions::{Decomposition, EdgeSubset};
pub use polytope::{InequalityTag, LinearInequality, Rational, VectorSet};
