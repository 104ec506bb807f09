//! Spaces built from metric graphs: rescaled wedges and hats.

mod chart;
mod embedding;
mod hat;
mod wedge;

pub use chart::{ChartError, Charts, EdgeChart, EdgeKind, HatChart, PointChart, Region};
pub use embedding::{ChainEdge, ComponentEmbedding};
pub use hat::{
    attach_hat, build_cylinder, build_hat, build_top, Cylinder, HatParams, HatReport, HatSpace,
};
pub use wedge::{counterexample_one, WedgeSpace};

use crate::metric::{MetricError, MetricGraph, VertexId};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("scale factor {0} is not positive")]
    NonpositiveScale(f64),
    #[error("height {0} is not positive")]
    NonpositiveHeight(f64),
    #[error("need at least {min} levels, got {got}")]
    TooFewLevels { min: usize, got: usize },
    #[error("component family is empty")]
    EmptyFamily,
    #[error("truncation {truncate} exceeds family size {family}")]
    TruncationTooLarge { truncate: usize, family: usize },
    #[error("basepoint {0} is not a vertex of component {1}")]
    InvalidBasepoint(VertexId, usize),
    #[error("subspace does not induce a connected subgraph")]
    DisconnectedSubspace,
    #[error("subspace vertex `{0}` is not a base vertex of the space")]
    NotSubgraph(String),
    #[error("subdivision count must be at least 1")]
    ZeroSubdivision,
}

/// Multiply every edge length by `factor`.
pub fn rescale(g: &MetricGraph, factor: f64) -> Result<MetricGraph, ConstructionError> {
    if !(factor > 0.0 && factor.is_finite()) {
        return Err(ConstructionError::NonpositiveScale(factor));
    }
    Ok(MetricGraph::from_parts(
        g.labels().to_vec(),
        g.edges()
            .iter()
            .map(|e| (e.u, e.v, e.length * factor))
            .collect(),
    )?)
}

/// Hat height that makes the shadow argument go through: the largest step
/// the robber will ever take plus the diameter of the base.
pub fn required_height(base: &MetricGraph, agility_max: f64) -> f64 {
    agility_max + base.diameter()
}

/// Split every edge into `parts` equal pieces. The metric space is
/// unchanged; the returned embedding maps the original graph onto the
/// subdivided one. New vertices are labelled `u~v#i`, or `u~v.e#i` on the
/// parallel copies of an edge, where `e` is the edge index.
pub fn subdivide(
    g: &MetricGraph,
    parts: usize,
) -> Result<(MetricGraph, ComponentEmbedding), ConstructionError> {
    if parts == 0 {
        return Err(ConstructionError::ZeroSubdivision);
    }
    let mut labels = g.labels().to_vec();
    let mut edges = Vec::new();
    let mut chains = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (idx, e) in g.edges().iter().enumerate() {
        let first = seen.insert((e.u.min(e.v), e.u.max(e.v)));
        let stem = if first {
            format!("{}~{}", g.label(e.u), g.label(e.v))
        } else {
            format!("{}~{}.{idx}", g.label(e.u), g.label(e.v))
        };
        let piece = e.length / parts as f64;
        let mut chain = Vec::with_capacity(parts);
        let mut prev = e.u;
        for i in 1..=parts {
            let next = if i == parts {
                e.v
            } else {
                labels.push(format!("{stem}#{i}"));
                VertexId(labels.len() as u32 - 1)
            };
            chain.push(crate::metric::EdgeId(edges.len() as u32));
            edges.push((prev, next, piece));
            prev = next;
        }
        if first {
            chains.push(ChainEdge {
                a: e.u.0,
                b: e.v.0,
                chain,
            });
        }
    }
    let sub = MetricGraph::from_parts(labels, edges)?;
    let embedding = ComponentEmbedding {
        index: 1,
        scale: 1.0,
        vertices: g.vertices().collect(),
        edges: chains,
        basepoint: 0,
    };
    Ok((sub, embedding))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{validate_length_metric, PointRef};

    #[test]
    fn rescale_homogeneity() {
        let g = MetricGraph::from_indexed(4, &[(0, 1, 1.0), (1, 2, 2.0), (2, 3, 0.5), (3, 0, 1.5)])
            .unwrap();
        let same = rescale(&g, 1.0).unwrap();
        let scaled = rescale(&g, 0.3).unwrap();
        for a in g.vertices() {
            for b in g.vertices() {
                let (pa, pb) = (PointRef::Vertex(a), PointRef::Vertex(b));
                assert_eq!(same.dist(pa, pb), g.dist(pa, pb));
                assert!((scaled.dist(pa, pb) - 0.3 * g.dist(pa, pb)).abs() < 1e-12);
            }
        }
        assert!(matches!(rescale(&g, 0.0), Err(ConstructionError::NonpositiveScale(_))));
        assert!(matches!(rescale(&g, -1.0), Err(ConstructionError::NonpositiveScale(_))));
    }

    #[test]
    fn paper_edge_length_for_diameter_five() {
        // unit-edge path with diameter 5, second component: 1 / (2 * 5)
        let p6 = MetricGraph::from_indexed(
            6,
            &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (4, 5, 1.0)],
        )
        .unwrap();
        assert_eq!(p6.diameter(), 5.0);
        let g = rescale(&p6, 1.0 / (2.0 * p6.diameter())).unwrap();
        assert!(g.edges().iter().all(|e| (e.length - 0.1).abs() < 1e-15));
    }

    #[test]
    fn required_height_formula() {
        let c4 = MetricGraph::from_indexed(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)])
            .unwrap();
        assert_eq!(required_height(&c4, 1.0), 3.0);
        assert_eq!(required_height(&c4, 0.0), 2.0);
        assert!(required_height(&c4, 2.0) > required_height(&c4, 1.0));
    }

    #[test]
    fn subdivision_preserves_metric() {
        let c3 = MetricGraph::from_indexed(3, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap();
        let (sub, emb) = subdivide(&c3, 4).unwrap();
        assert_eq!(sub.vertex_count(), 3 + 3 * 3);
        assert_eq!(emb.uniform_edge_length(&sub), Some(1.0));
        for a in c3.vertices() {
            for b in c3.vertices() {
                let (pa, pb) = (PointRef::Vertex(a), PointRef::Vertex(b));
                assert!((sub.dist(pa, pb) - c3.dist(pa, pb)).abs() < 1e-12);
            }
        }
        assert!((sub.diameter() - 1.5).abs() < 1e-12);
        assert!(validate_length_metric(&sub, 200, 3).passes(1e-9));
        assert!(matches!(subdivide(&c3, 0), Err(ConstructionError::ZeroSubdivision)));
    }

    #[test]
    fn subdivision_of_parallel_edges() {
        let g = MetricGraph::from_indexed(2, &[(0, 1, 1.0), (0, 1, 3.0)]).unwrap();
        let (sub, emb) = subdivide(&g, 2).unwrap();
        assert_eq!(sub.vertex_count(), 4);
        assert_eq!(emb.edges.len(), 1);
        assert_eq!(sub.vertex_distance(VertexId(0), VertexId(1)), 1.0);
        assert_eq!(sub.label(VertexId(3)), "0~1.1#1");
    }
}
