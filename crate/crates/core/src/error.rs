use thiserror::Error;

use crate::driver::RunTrace;
use crate::graph::{EdgeId, VertexId};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({src}, {dst}) has an endpoint outside [0, {n})")]
    EndpointOutOfRange { src: VertexId, dst: VertexId, n: usize },

    #[error("potential has {got} entries, graph has {expected} vertices")]
    PotentialLength { expected: usize, got: usize },

    #[error("potential re-weights non-frozen edge {edge} to a negative value")]
    InvalidPotential { edge: EdgeId },

    #[error("filtered negative edge {edge} does not leave the source")]
    NegativeEdgeOffSource { edge: EdgeId },

    #[error("betweenness parameter b = {b} must be at least 1")]
    InvalidBetweennessParam { b: f64 },

    #[error("no bidirectional search result for negative vertex {r}")]
    MissingBidiResult { r: VertexId },

    #[error("vertex {v} is outside [0, {n})")]
    SourceOutOfRange { v: VertexId, n: usize },

    #[error("iteration guard tripped after {iterations} hop-reduction rounds")]
    MaxIterations {
        iterations: u32,
        trace: Box<RunTrace>,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
