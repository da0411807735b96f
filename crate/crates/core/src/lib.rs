//! Single-source shortest paths on directed graphs with real (possibly
//! negative) edge weights.
//!
//! The solver iteratively adds shortcut edges so that shortest paths need
//! fewer and fewer negative hops, re-weighting between rounds with a sampled
//! betweenness-reduction potential, until two hop-bounded Dijkstra passes
//! finish the job. Bellman-Ford and the hop-bounded hybrid are included both
//! as baselines and as oracles for the test suite, and every structural
//! guarantee of the construction is checkable at small scale.

pub mod betweenness;
pub mod bidi;
pub mod driver;
pub mod error;
pub mod frozen;
pub mod generators;
pub mod graph;
pub mod layered;
pub mod shortcut;
pub mod sssp;
pub mod transform;
pub mod weight;

pub use error::{Error, Result};
pub use frozen::{freeze, FrozenGraph};
pub use graph::{Edge, EdgeId, Graph, VertexId};
pub use sssp::{bellman_ford, CycleWitness, Source, SsspOutcome};
pub use weight::{Dist, Rat, Scalar};
