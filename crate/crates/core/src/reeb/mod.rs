//! Reeb graphs of PL fields: construction by sweep, a brute-force oracle,
//! the quotient map, and the f-length metric on the graph.

mod graph;
mod oracle;
mod sweep;

pub use graph::{
    reeb_metric, ArcId, CanonicalForm, GraphPoint, NodeId, QuotientMap, ReebArc, ReebGraph,
    ReebNode,
};
pub use oracle::reeb_oracle;
pub use sweep::build_reeb;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReebError {
    #[error("field has {got} values, complex has {expected} vertices")]
    FieldMismatch { expected: usize, got: usize },
}

/// First Betti number of the graph.
pub fn cycle_rank(g: &ReebGraph) -> usize {
    g.cycle_rank()
}
