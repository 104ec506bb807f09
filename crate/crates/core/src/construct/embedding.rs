use serde::{Deserialize, Serialize};

use crate::metric::{EdgeId, MetricGraph, VertexId, TOL};

/// One edge of the discrete graph, realised as a chain of space edges
/// running from `a` to `b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainEdge {
    pub a: u32,
    pub b: u32,
    pub chain: Vec<EdgeId>,
}

/// A finite simple graph drawn inside a metric graph: discrete vertices sit
/// on space vertices and discrete edges are chains of space edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentEmbedding {
    /// Position of the component in its family (1-based for wedges).
    pub index: usize,
    /// Factor applied to the source graph's edge lengths.
    pub scale: f64,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<ChainEdge>,
    /// Discrete vertex sitting on the hub / basepoint.
    pub basepoint: u32,
}

impl ComponentEmbedding {
    /// The whole of `g`, each edge a one-link chain.
    pub fn whole(g: &MetricGraph, basepoint: VertexId) -> Self {
        let mut seen = std::collections::HashSet::new();
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| seen.insert((e.u.min(e.v), e.u.max(e.v))))
            .map(|(i, e)| ChainEdge {
                a: e.u.0,
                b: e.v.0,
                chain: vec![EdgeId(i as u32)],
            })
            .collect();
        ComponentEmbedding {
            index: 1,
            scale: 1.0,
            vertices: g.vertices().collect(),
            edges,
            basepoint: basepoint.0,
        }
    }

    pub fn chain_length(&self, g: &MetricGraph, edge: &ChainEdge) -> f64 {
        edge.chain.iter().map(|&e| g.edge(e).length).sum()
    }

    /// Common length of every chain, if they agree within tolerance.
    pub fn uniform_edge_length(&self, g: &MetricGraph) -> Option<f64> {
        let mut lengths = self.edges.iter().map(|e| self.chain_length(g, e));
        let first = lengths.next()?;
        lengths.all(|l| (l - first).abs() <= TOL).then_some(first)
    }

    /// Discrete edge list `(a, b)`.
    pub fn discrete_edges(&self) -> Vec<(u32, u32)> {
        self.edges.iter().map(|e| (e.a, e.b)).collect()
    }
}
