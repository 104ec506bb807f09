use std::collections::HashMap;

use crate::construct::ComponentEmbedding;
use crate::game::StrategyError;
use crate::metric::{EdgeId, MetricGraph, PointRef, VertexId};

/// Where a point sits relative to an embedded component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Location {
    Outside,
    /// On the space vertex of this discrete vertex.
    Vertex(u32),
    /// Strictly inside discrete edge `chain`, at arc length `s` from its
    /// `a` end.
    Chain { chain: usize, s: f64 },
}

/// Lookup tables from space points to an embedded component.
#[derive(Debug, Clone)]
pub struct ComponentLocator {
    embedding: ComponentEmbedding,
    discrete: HashMap<VertexId, u32>,
    /// Space edge -> (chain, arc length at the edge start, runs a -> b).
    edges: HashMap<EdgeId, (usize, f64, bool)>,
    /// Chain-interior space vertex -> (chain, arc length).
    joints: HashMap<VertexId, (usize, f64)>,
    chain_lengths: Vec<f64>,
}

impl ComponentLocator {
    pub fn new(space: &MetricGraph, embedding: &ComponentEmbedding) -> Result<Self, StrategyError> {
        let bad = |why: String| StrategyError::InconsistentState(why);
        let mut discrete = HashMap::new();
        for (i, &v) in embedding.vertices.iter().enumerate() {
            if v.index() >= space.vertex_count() || discrete.insert(v, i as u32).is_some() {
                return Err(bad(format!("embedding vertex {v} is invalid or repeated")));
            }
        }
        let mut edges = HashMap::new();
        let mut joints = HashMap::new();
        let mut chain_lengths = Vec::with_capacity(embedding.edges.len());
        for (c, ce) in embedding.edges.iter().enumerate() {
            let (Some(&from), Some(&to)) = (
                embedding.vertices.get(ce.a as usize),
                embedding.vertices.get(ce.b as usize),
            ) else {
                return Err(bad(format!("chain {c} has an unknown endpoint")));
            };
            let mut at = from;
            let mut s = 0.0;
            for (j, &e) in ce.chain.iter().enumerate() {
                if e.index() >= space.edge_count() {
                    return Err(bad(format!("chain {c} uses unknown edge {e:?}")));
                }
                let edge = space.edge(e);
                let forward = edge.u == at;
                if !forward && edge.v != at {
                    return Err(bad(format!("chain {c} is not contiguous at edge {e:?}")));
                }
                edges.insert(e, (c, s, forward));
                s += edge.length;
                at = edge.other(at);
                if j + 1 < ce.chain.len() {
                    joints.insert(at, (c, s));
                }
            }
            if at != to {
                return Err(bad(format!("chain {c} does not end at its endpoint")));
            }
            chain_lengths.push(s);
        }
        Ok(ComponentLocator {
            embedding: embedding.clone(),
            discrete,
            edges,
            joints,
            chain_lengths,
        })
    }

    pub fn embedding(&self) -> &ComponentEmbedding {
        &self.embedding
    }

    /// Space vertex of discrete vertex `d`.
    pub fn vertex(&self, d: u32) -> VertexId {
        self.embedding.vertices[d as usize]
    }

    pub fn hub(&self) -> u32 {
        self.embedding.basepoint
    }

    pub fn discrete_of(&self, v: VertexId) -> Option<u32> {
        self.discrete.get(&v).copied()
    }

    pub fn chain_length(&self, chain: usize) -> f64 {
        self.chain_lengths[chain]
    }

    pub fn chain_ends(&self, chain: usize) -> (u32, u32) {
        let c = &self.embedding.edges[chain];
        (c.a, c.b)
    }

    pub fn locate(&self, space: &MetricGraph, p: PointRef) -> Location {
        match p {
            PointRef::Vertex(v) => {
                if let Some(d) = self.discrete_of(v) {
                    Location::Vertex(d)
                } else if let Some(&(chain, s)) = self.joints.get(&v) {
                    Location::Chain { chain, s }
                } else {
                    Location::Outside
                }
            }
            PointRef::Edge { edge, offset } => match self.edges.get(&edge) {
                Some(&(chain, start, forward)) => {
                    let along = if forward {
                        offset
                    } else {
                        space.edge(edge).length - offset
                    };
                    Location::Chain {
                        chain,
                        s: start + along,
                    }
                }
                None => Location::Outside,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::subdivide;

    #[test]
    fn subdivided_chain_positions() {
        let g = MetricGraph::from_indexed(3, &[(0, 1, 1.0), (2, 1, 1.0)]).unwrap();
        let (sub, emb) = subdivide(&g, 4).unwrap();
        let loc = ComponentLocator::new(&sub, &emb).unwrap();
        assert_eq!(loc.locate(&sub, PointRef::Vertex(VertexId(2))), Location::Vertex(2));
        for v in sub.vertices().skip(3) {
            match loc.locate(&sub, PointRef::Vertex(v)) {
                Location::Chain { s, .. } => assert!(s > 0.0 && s < 1.0),
                other => panic!("{other:?}"),
            }
        }
        for (i, e) in sub.edges().iter().enumerate() {
            let p = sub.edge_point(EdgeId(i as u32), e.length / 2.0);
            let Location::Chain { chain, s } = loc.locate(&sub, p) else {
                panic!("edge point outside")
            };
            let (a, _) = loc.chain_ends(chain);
            let expect = sub.dist(PointRef::Vertex(loc.vertex(a)), p);
            assert!((s - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_broken_chains() {
        let g = MetricGraph::from_indexed(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let mut emb = ComponentEmbedding::whole(&g, VertexId(0));
        emb.edges[0].chain = vec![EdgeId(1)];
        assert!(ComponentLocator::new(&g, &emb).is_err());
    }
}
