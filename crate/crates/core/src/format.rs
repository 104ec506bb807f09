//! JSON space files.
//!
//! ```json
//! {"format": "copspace-space/1",
//!  "vertices": ["a", "b"],
//!  "edges": [[0, 1, 0.5]],
//!  "charts": {"a": {"region": "Base", "trace": "a", "height": 0.0}, ...},
//!  "components": [...], "hub": 0, "report": {...}}
//! ```
//!
//! Edges index into `vertices`. Lengths are written with shortest
//! round-trip formatting, so a reloaded space has bit-identical distances.
//! Everything after `edges` is optional. Edge charts are not stored; they
//! are rebuilt from the vertex charts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::construct::{
    ChartError, Charts, ComponentEmbedding, EdgeKind, HatChart, HatReport, HatSpace, Region,
    WedgeSpace,
};
use crate::metric::{MetricError, MetricGraph, VertexId};

pub const SPACE_FORMAT: &str = "copspace-space/1";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unsupported format `{0}`")]
    Version(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartEntry {
    pub region: Region,
    pub trace: String,
    pub height: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub format: String,
    pub vertices: Vec<String>,
    pub edges: Vec<(u32, u32, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charts: Option<BTreeMap<String, ChartEntry>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentEmbedding>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hub: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<HatReport>,
}

/// A space ready for play, with whatever structure its file carried.
#[derive(Debug, Clone)]
pub struct Space {
    pub graph: MetricGraph,
    pub charts: Option<Charts>,
    pub components: Vec<ComponentEmbedding>,
    pub hub: Option<VertexId>,
    pub report: Option<HatReport>,
}

impl Space {
    pub fn plain(graph: MetricGraph) -> Self {
        Space {
            graph,
            charts: None,
            components: Vec::new(),
            hub: None,
            report: None,
        }
    }

    pub fn from_wedge(w: WedgeSpace) -> Self {
        Space {
            graph: w.graph,
            charts: None,
            components: w.components,
            hub: Some(w.hub),
            report: None,
        }
    }

    pub fn from_hat(h: HatSpace, components: Vec<ComponentEmbedding>) -> Self {
        Space {
            graph: h.graph,
            charts: Some(h.charts),
            components,
            hub: None,
            report: Some(h.report),
        }
    }

    /// Charts, or flat ones if the file had none.
    pub fn charts_or_flat(&self) -> Charts {
        self.charts.clone().unwrap_or_else(|| Charts::flat(&self.graph))
    }

    /// The base space: base vertices and base edges, which must be
    /// numbered before everything else.
    pub fn base_graph(&self) -> Result<MetricGraph, FormatError> {
        let Some(charts) = &self.charts else {
            return Ok(self.graph.clone());
        };
        let nv = charts.vertex.iter().take_while(|c| c.region == Region::Base).count();
        let ne = charts.edge.iter().take_while(|c| c.kind == EdgeKind::Base).count();
        let later_base = charts.vertex[nv..].iter().any(|c| c.region == Region::Base)
            || charts.edge[ne..].iter().any(|c| c.kind == EdgeKind::Base);
        if later_base {
            return Err(FormatError::Invalid("base vertices and edges must come first".into()));
        }
        Ok(MetricGraph::from_parts(
            self.graph.labels()[..nv].to_vec(),
            self.graph.edges()[..ne].iter().map(|e| (e.u, e.v, e.length)).collect(),
        )?)
    }

    pub fn to_file(&self) -> SpaceFile {
        let g = &self.graph;
        SpaceFile {
            format: SPACE_FORMAT.to_owned(),
            vertices: g.labels().to_vec(),
            edges: g.edges().iter().map(|e| (e.u.0, e.v.0, e.length)).collect(),
            charts: self.charts.as_ref().map(|c| {
                g.vertices()
                    .map(|v| {
                        let hc = c.vertex_chart(v);
                        (
                            g.label(v).to_owned(),
                            ChartEntry {
                                region: hc.region,
                                trace: g.label(hc.trace).to_owned(),
                                height: hc.height,
                            },
                        )
                    })
                    .collect()
            }),
            components: self.components.clone(),
            hub: self.hub.map(|h| h.0),
            report: self.report,
        }
    }

    pub fn from_file(file: SpaceFile) -> Result<Self, FormatError> {
        if file.format != SPACE_FORMAT {
            return Err(FormatError::Version(file.format));
        }
        let n = file.vertices.len() as u32;
        let mut edges = Vec::with_capacity(file.edges.len());
        for &(u, v, l) in &file.edges {
            if u >= n || v >= n {
                return Err(FormatError::Invalid(format!("edge ({u}, {v}) out of range")));
            }
            edges.push((VertexId(u), VertexId(v), l));
        }
        let graph = MetricGraph::from_parts(file.vertices, edges)?;
        let charts = match file.charts {
            None => None,
            Some(map) => {
                if map.len() != graph.vertex_count() {
                    return Err(FormatError::Invalid(format!(
                        "{} charts for {} vertices",
                        map.len(),
                        graph.vertex_count()
                    )));
                }
                let find = |l: &str| {
                    graph
                        .vertex_by_label(l)
                        .ok_or_else(|| FormatError::UnknownLabel(l.to_owned()))
                };
                let mut vertex = Vec::with_capacity(map.len());
                for v in graph.vertices() {
                    let entry = map
                        .get(graph.label(v))
                        .ok_or_else(|| FormatError::UnknownLabel(graph.label(v).to_owned()))?;
                    if !(entry.height >= 0.0 && entry.height.is_finite()) {
                        return Err(FormatError::Invalid(format!("bad height {}", entry.height)));
                    }
                    vertex.push(HatChart {
                        region: entry.region,
                        trace: find(&entry.trace)?,
                        height: entry.height,
                    });
                }
                // traces are fixed points: base vertices, or the bottom
                // layer of a standalone top
                for c in &vertex {
                    let t = vertex[c.trace.index()];
                    if t.trace != c.trace || !matches!(t.region, Region::Base | Region::Top) {
                        return Err(FormatError::Invalid("trace is not a bottom vertex".into()));
                    }
                }
                Some(Charts::from_vertex_charts(&graph, vertex)?)
            }
        };
        for (i, c) in file.components.iter().enumerate() {
            let bad_vertex = c.vertices.iter().any(|v| v.0 >= n);
            let bad_edge = c.edges.iter().any(|e| {
                e.a as usize >= c.vertices.len()
                    || e.b as usize >= c.vertices.len()
                    || e.chain.is_empty()
                    || e.chain.iter().any(|id| id.index() >= graph.edge_count())
            });
            if bad_vertex || bad_edge || c.basepoint as usize >= c.vertices.len() {
                return Err(FormatError::Invalid(format!("component {i} is out of range")));
            }
        }
        if file.hub.is_some_and(|h| h >= n) {
            return Err(FormatError::Invalid("hub out of range".into()));
        }
        Ok(Space {
            graph,
            charts,
            components: file.components,
            hub: file.hub.map(VertexId),
            report: file.report,
        })
    }
}

pub fn parse_space(text: &str) -> Result<Space, FormatError> {
    let file: SpaceFile = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    Space::from_file(file)
}

pub fn space_to_json(space: &Space) -> String {
    serde_json::to_string_pretty(&space.to_file()).expect("space files serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{attach_hat, counterexample_one, HatParams};
    use crate::metric::PointRef;

    fn c5() -> MetricGraph {
        let edges: Vec<_> = (0..5u32).map(|i| (i, (i + 1) % 5, 0.1 + i as f64 / 3.0)).collect();
        MetricGraph::from_indexed(5, &edges).unwrap()
    }

    #[test]
    fn hat_round_trip_is_exact() {
        let g = c5();
        let params = HatParams {
            height: 2.0 / 3.0,
            levels: 5,
            agility_max: Some(0.3),
        };
        let hat = attach_hat(&g, None, &[VertexId(0), VertexId(1), VertexId(2)], params).unwrap();
        let space = Space::from_hat(hat.clone(), vec![]);
        let back = parse_space(&space_to_json(&space)).unwrap();
        assert_eq!(back.charts.as_ref().unwrap(), &hat.charts);
        assert_eq!(back.report, Some(hat.report));
        for u in back.graph.vertices() {
            for v in back.graph.vertices() {
                let (pu, pv) = (PointRef::Vertex(u), PointRef::Vertex(v));
                assert_eq!(back.graph.dist(pu, pv).to_bits(), hat.graph.dist(pu, pv).to_bits());
            }
        }
        let base = back.base_graph().unwrap();
        assert_eq!(base.vertex_count(), 5);
        assert_eq!(base.edge_count(), 5);
    }

    #[test]
    fn wedge_round_trip() {
        let w = counterexample_one(&[(c5(), None), (c5(), None)], 2).unwrap();
        let space = Space::from_wedge(w.clone());
        let back = parse_space(&space_to_json(&space)).unwrap();
        assert_eq!(back.components, w.components);
        assert_eq!(back.hub, Some(w.hub));
    }

    #[test]
    fn rejects_malformed_files() {
        let ok = r#"{"format":"copspace-space/1","vertices":["a","b"],"edges":[[0,1,1.0]]}"#;
        assert!(parse_space(ok).is_ok());
        for bad in [
            r#"{"format":"other","vertices":["a","b"],"edges":[[0,1,1.0]]}"#,
            r#"{"format":"copspace-space/1","vertices":["a","b"],"edges":[[0,2,1.0]]}"#,
            r#"{"format":"copspace-space/1","vertices":["a","b"],"edges":[[0,1,-1.0]]}"#,
            r#"{"format":"copspace-space/1","vertices":["a","b"],"edges":[]}"#,
            r#"{"format":"copspace-space/1","vertices":["a","b"],"edges":[[0,1,1.0]],"hub":5}"#,
            r#"{"format":"copspace-space/1","vertices":["a","b"],"edges":[[0,1,1.0]],"charts":{"a":{"region":"Base","trace":"a","height":0.0}}}"#,
            r#"{"format":"copspace-space/1","vertices":["a","b"],"edges":[[0,1,1.0]],"extra":1}"#,
            "not json",
        ] {
            assert!(parse_space(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn standalone_top_round_trip() {
        let top = crate::construct::build_top(&c5(), 2.0, 4).unwrap();
        let space = Space::from_hat(top, vec![]);
        let back = parse_space(&space_to_json(&space)).unwrap();
        assert_eq!(back.charts, space.charts);
    }
}
