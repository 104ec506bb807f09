use super::{ChainEdge, ComponentEmbedding, ConstructionError};
use crate::metric::{EdgeId, MetricGraph, VertexId};

/// Finite wedge of rescaled graphs glued at a hub vertex.
#[derive(Debug, Clone)]
pub struct WedgeSpace {
    pub graph: MetricGraph,
    pub hub: VertexId,
    pub components: Vec<ComponentEmbedding>,
}

/// Wedge of the first `truncate` members of `family`. Component `n`
/// (1-based) has its edge lengths multiplied by `1 / (n * diam(G_n))`, so
/// component diameters shrink like `1/n`. A missing basepoint defaults to the
/// lexicographically smallest vertex label.
///
/// Vertices are labelled `w` (hub) and `n:label`.
pub fn counterexample_one(
    family: &[(MetricGraph, Option<VertexId>)],
    truncate: usize,
) -> Result<WedgeSpace, ConstructionError> {
    if family.is_empty() || truncate == 0 {
        return Err(ConstructionError::EmptyFamily);
    }
    if truncate > family.len() {
        return Err(ConstructionError::TruncationTooLarge {
            truncate,
            family: family.len(),
        });
    }
    let hub = VertexId(0);
    let mut labels = vec!["w".to_owned()];
    let mut edges = Vec::new();
    let mut components = Vec::with_capacity(truncate);
    for (i, (g, base)) in family[..truncate].iter().enumerate() {
        let n = i + 1;
        let base = match base {
            Some(b) if b.index() < g.vertex_count() => *b,
            Some(b) => return Err(ConstructionError::InvalidBasepoint(*b, n)),
            None => g
                .vertices()
                .min_by(|a, b| g.label(*a).cmp(g.label(*b)))
                .expect("metric graphs are nonempty"),
        };
        let diam = g.diameter();
        let scale = if diam > 0.0 { 1.0 / (n as f64 * diam) } else { 1.0 };
        let map: Vec<VertexId> = g
            .vertices()
            .map(|v| {
                if v == base {
                    hub
                } else {
                    labels.push(format!("{n}:{}", g.label(v)));
                    VertexId(labels.len() as u32 - 1)
                }
            })
            .collect();
        let mut chains = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for e in g.edges() {
            let id = EdgeId(edges.len() as u32);
            edges.push((map[e.u.index()], map[e.v.index()], e.length * scale));
            if seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                chains.push(ChainEdge {
                    a: e.u.0,
                    b: e.v.0,
                    chain: vec![id],
                });
            }
        }
        components.push(ComponentEmbedding {
            index: n,
            scale,
            vertices: map,
            edges: chains,
            basepoint: base.0,
        });
    }
    Ok(WedgeSpace {
        graph: MetricGraph::from_parts(labels, edges)?,
        hub,
        components,
    })
}
