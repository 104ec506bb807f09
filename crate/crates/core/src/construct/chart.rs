use serde::{Deserialize, Serialize};

use crate::metric::{EdgeId, MetricGraph, PointRef, VertexId};

/// Which part of a hatted space a point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    Base,
    Cylinder,
    Top,
    ConePoint,
}

impl Region {
    /// Cops here are tracked by their shadow; elsewhere the shadow sits.
    pub fn is_tracked(self) -> bool {
        matches!(self, Region::Base | Region::Cylinder)
    }
}

/// Chart of a vertex: region, trace vertex in the base, and height.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HatChart {
    pub region: Region,
    pub trace: VertexId,
    pub height: f64,
}

/// How an edge's interior maps to the base.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeKind {
    /// The edge lies in the base itself.
    Base,
    /// Both endpoints share a trace; only the height varies.
    Vertical,
    /// A (possibly scaled) copy of base edge `base`; `reversed` when the copy
    /// runs `v -> u` relative to the base edge.
    Horizontal { base: EdgeId, reversed: bool },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeChart {
    pub region: Region,
    pub kind: EdgeKind,
}

/// Chart of an arbitrary point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointChart {
    pub region: Region,
    pub trace: PointRef,
    pub height: f64,
}

/// Per-vertex and per-edge chart data for a space with attached hats.
#[derive(Debug, Clone, PartialEq)]
pub struct Charts {
    pub vertex: Vec<HatChart>,
    pub edge: Vec<EdgeChart>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChartError {
    #[error("chart table covers {charts} vertices, graph has {vertices}")]
    VertexCount { charts: usize, vertices: usize },
    #[error("edge {0:?} joins traces that are not adjacent in the base")]
    UnmappedEdge(EdgeId),
}

impl Charts {
    /// Every vertex is its own base point.
    pub fn flat(g: &MetricGraph) -> Self {
        Charts {
            vertex: g
                .vertices()
                .map(|v| HatChart {
                    region: Region::Base,
                    trace: v,
                    height: 0.0,
                })
                .collect(),
            edge: vec![
                EdgeChart {
                    region: Region::Base,
                    kind: EdgeKind::Base,
                };
                g.edge_count()
            ],
        }
    }

    /// Rebuild edge charts from vertex charts alone, as when loading a space
    /// file. An edge between two base vertices is a base edge; equal traces
    /// or a cone endpoint make it vertical; otherwise it copies the
    /// lowest-indexed edge joining the two traces among edges whose
    /// endpoints are their own traces.
    pub fn from_vertex_charts(g: &MetricGraph, vertex: Vec<HatChart>) -> Result<Self, ChartError> {
        if vertex.len() != g.vertex_count() {
            return Err(ChartError::VertexCount {
                charts: vertex.len(),
                vertices: g.vertex_count(),
            });
        }
        let self_traced = |v: VertexId| vertex[v.index()].trace == v;
        let mut edge = Vec::with_capacity(g.edge_count());
        for (i, e) in g.edges().iter().enumerate() {
            let (cu, cv) = (vertex[e.u.index()], vertex[e.v.index()]);
            let region = edge_region(cu.region, cv.region);
            let cone = cu.region == Region::ConePoint || cv.region == Region::ConePoint;
            let kind = if cu.region == Region::Base && cv.region == Region::Base {
                EdgeKind::Base
            } else if cone || cu.trace == cv.trace {
                EdgeKind::Vertical
            } else if self_traced(e.u) && self_traced(e.v) {
                EdgeKind::Horizontal {
                    base: EdgeId(i as u32),
                    reversed: false,
                }
            } else {
                let found = g.incident(cu.trace).iter().copied().find(|&b| {
                    let be = g.edge(b);
                    self_traced(be.u) && self_traced(be.v) && be.other(cu.trace) == cv.trace
                });
                let base = found.ok_or(ChartError::UnmappedEdge(EdgeId(i as u32)))?;
                EdgeKind::Horizontal {
                    base,
                    reversed: g.edge(base).u != cu.trace,
                }
            };
            edge.push(EdgeChart { region, kind });
        }
        Ok(Charts { vertex, edge })
    }

    pub fn vertex_chart(&self, v: VertexId) -> HatChart {
        self.vertex[v.index()]
    }

    /// Region, trace and height of any point, interpolating along edges.
    pub fn chart_at(&self, g: &MetricGraph, p: PointRef) -> PointChart {
        match p {
            PointRef::Vertex(v) => {
                let c = self.vertex[v.index()];
                PointChart {
                    region: c.region,
                    trace: PointRef::Vertex(c.trace),
                    height: c.height,
                }
            }
            PointRef::Edge { edge, offset } => {
                let e = g.edge(edge);
                let frac = offset / e.length;
                let (cu, cv) = (self.vertex[e.u.index()], self.vertex[e.v.index()]);
                let ec = self.edge[edge.index()];
                match ec.kind {
                    EdgeKind::Base => PointChart {
                        region: Region::Base,
                        trace: p,
                        height: 0.0,
                    },
                    EdgeKind::Vertical => PointChart {
                        region: ec.region,
                        trace: PointRef::Vertex(if cu.region == Region::ConePoint {
                            cv.trace
                        } else {
                            cu.trace
                        }),
                        height: cu.height + frac * (cv.height - cu.height),
                    },
                    EdgeKind::Horizontal { base, reversed } => {
                        let bl = g.edge(base).length;
                        let along = if reversed { 1.0 - frac } else { frac };
                        PointChart {
                            region: ec.region,
                            trace: g.edge_point(base, along * bl),
                            height: cu.height + frac * (cv.height - cu.height),
                        }
                    }
                }
            }
        }
    }
}

/// Region of an edge interior given its endpoint regions.
pub(crate) fn edge_region(a: Region, b: Region) -> Region {
    use Region::*;
    match (a, b) {
        (Base, Base) => Base,
        (Top, _) | (_, Top) | (ConePoint, _) | (_, ConePoint) => Top,
        _ => Cylinder,
    }
}
