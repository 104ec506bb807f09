//! Length metric on finite metric graphs (weighted 1-complexes).
//!
//! A [`MetricGraph`] is a connected multigraph whose edges are segments of
//! positive length. Points of the space are vertices or positions inside an
//! edge ([`PointRef`]); the distance between two points is the length of a
//! shortest path through the 1-complex.

mod diameter;
mod graph;
mod validate;

pub use diameter::max_min_affine;
pub use graph::{Edge, EdgeId, Leg, MetricGraph, Path, PointRef, VertexId};
pub use validate::{random_point, validate_length_metric, MetricReport};

/// Absolute tolerance used for every real-valued comparison.
pub const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is disconnected: vertex `{0}` is unreachable from `{1}`")]
    DisconnectedGraph(String, String),
    #[error("edge {u}-{v} has non-positive or non-finite length {length}")]
    NonpositiveLength { u: String, v: String, length: f64 },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("invalid point {0:?}")]
    InvalidPoint(PointRef),
    #[error("arc length {s} outside [0, {length}]")]
    OutOfRange { s: f64, length: f64 },
}
