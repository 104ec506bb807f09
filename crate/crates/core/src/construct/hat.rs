use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::chart::{edge_region, Charts, EdgeChart, EdgeKind, HatChart, Region};
use super::ConstructionError;
use crate::metric::{EdgeId, MetricGraph, PointRef, VertexId};

/// Height, discretisation and (optionally) the agility bound the hat must
/// absorb.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HatParams {
    pub height: f64,
    /// Number of vertical steps in the cylinder, and in the top.
    pub levels: usize,
    /// Largest step the robber will take; enables the height check.
    pub agility_max: Option<f64>,
}

impl HatParams {
    /// Levels so the cylinder spacing is at most `min(tau_min / 4, mesh)`.
    pub fn default_levels(height: f64, mesh: f64, tau_min: Option<f64>) -> usize {
        let mut spacing = mesh;
        if let Some(t) = tau_min {
            spacing = spacing.min(t / 4.0);
        }
        if spacing > 0.0 {
            ((height / spacing).ceil() as usize).max(2)
        } else {
            2
        }
    }

    /// Fewest levels (at least 2) with `2 * (mesh + height / levels) <= tol`,
    /// if the mesh leaves room.
    pub fn levels_for_tolerance(height: f64, mesh: f64, tol: f64) -> Option<usize> {
        let room = tol / 2.0 - mesh;
        if !(room > 0.0) {
            return None;
        }
        let mut levels = ((height / room).ceil() as usize).max(2);
        while 2.0 * (mesh + height / levels as f64) > tol {
            levels += 1;
        }
        Some(levels)
    }
}

/// Discretisation facts about a built hat.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HatReport {
    pub height: f64,
    /// `agility_max + diam(X)` when the agility bound was supplied.
    pub required_height: Option<f64>,
    /// The height is below the required one, so no guarantee carries over.
    pub guarantee_void: bool,
    pub subspace_diameter: f64,
    /// Longest edge of the subspace.
    pub mesh: f64,
    /// Vertical spacing of the cylinder.
    pub level_spacing: f64,
    /// Vertical spacing of the top.
    pub top_spacing: f64,
    /// Chart-law error budget `2 * (mesh + level_spacing)`.
    pub tolerance: f64,
}

/// A cylinder over a graph, without a top.
#[derive(Debug, Clone)]
pub struct Cylinder {
    pub graph: MetricGraph,
    pub charts: Charts,
    /// Vertex ids of layer `j` are `layers[j]`, in base order.
    pub layers: Vec<Vec<VertexId>>,
}

/// A space carrying at least one hat.
#[derive(Debug, Clone)]
pub struct HatSpace {
    pub graph: MetricGraph,
    pub charts: Charts,
    pub cone: VertexId,
    pub report: HatReport,
}

#[derive(Clone, Copy)]
enum Layer {
    Cyl(usize),
    Top(usize),
    Cone,
}

struct Builder {
    labels: Vec<String>,
    edges: Vec<(VertexId, VertexId, f64)>,
    vcharts: Vec<HatChart>,
    echarts: Vec<EdgeChart>,
}

impl Builder {
    fn vertex(&mut self, label: String, chart: HatChart) -> VertexId {
        self.labels.push(label);
        self.vcharts.push(chart);
        VertexId(self.labels.len() as u32 - 1)
    }

    fn edge(&mut self, u: VertexId, v: VertexId, length: f64, kind: EdgeKind) -> EdgeId {
        let region = edge_region(self.vcharts[u.index()].region, self.vcharts[v.index()].region);
        self.edges.push((u, v, length));
        self.echarts.push(EdgeChart { region, kind });
        EdgeId(self.edges.len() as u32 - 1)
    }

    fn finish(self) -> Result<(MetricGraph, Charts), ConstructionError> {
        let g = MetricGraph::from_parts(self.labels, self.edges)?;
        Ok((
            g,
            Charts {
                vertex: self.vcharts,
                edge: self.echarts,
            },
        ))
    }
}

/// The subspace a hat is raised over, already present in the builder.
struct Bottom {
    verts: Vec<VertexId>,
    names: Vec<String>,
    /// `(a, b, length, base edge, reversed)` with `a`, `b` indices into `verts`.
    edges: Vec<(usize, usize, f64, EdgeId, bool)>,
    diameter: f64,
    base_height: f64,
}

/// Stack cylinder layers `1..=levels` (and optionally the top and cone) over
/// `bottom`. Returns the layer table and the cone vertex.
fn raise(
    b: &mut Builder,
    bottom: &Bottom,
    height: f64,
    levels: usize,
    cylinder: bool,
    top: bool,
    name: &dyn Fn(&str, Layer) -> String,
) -> (Vec<Vec<VertexId>>, Option<VertexId>) {
    let mut layers = vec![bottom.verts.clone()];
    let add_layer = |b: &mut Builder,
                         layers: &mut Vec<Vec<VertexId>>,
                         layer: Layer,
                         region: Region,
                         h: f64,
                         scale: f64,
                         step: f64| {
        let prev = layers.last().expect("bottom layer").clone();
        let cur: Vec<VertexId> = bottom
            .verts
            .iter()
            .zip(&bottom.names)
            .map(|(&s, n)| {
                b.vertex(
                    name(n, layer),
                    HatChart {
                        region,
                        trace: s,
                        height: h,
                    },
                )
            })
            .collect();
        for &(i, j, len, base, reversed) in &bottom.edges {
            b.edge(cur[i], cur[j], len * scale, EdgeKind::Horizontal { base, reversed });
        }
        for (&lo, &hi) in prev.iter().zip(&cur) {
            b.edge(lo, hi, step, EdgeKind::Vertical);
        }
        layers.push(cur);
    };
    if cylinder {
        let step = height / levels as f64;
        for j in 1..=levels {
            let h = bottom.base_height + j as f64 * step;
            add_layer(b, &mut layers, Layer::Cyl(j), Region::Cylinder, h, 1.0, step);
        }
    }
    if !top {
        return (layers, None);
    }
    let full = height + bottom.diameter;
    let step = full / levels as f64;
    let top_base = if cylinder { bottom.base_height + height } else { bottom.base_height };
    for j in 1..levels {
        let scale = 1.0 - j as f64 / levels as f64;
        add_layer(
            b,
            &mut layers,
            Layer::Top(j),
            Region::Top,
            top_base + j as f64 * step,
            scale,
            step,
        );
    }
    let anchor = *bottom.verts.iter().min().expect("nonempty subspace");
    let cone = b.vertex(
        name("", Layer::Cone),
        HatChart {
            region: Region::ConePoint,
            trace: anchor,
            height: 2.0 * height,
        },
    );
    let last = layers.last().expect("top layer").clone();
    for v in last {
        b.edge(v, cone, step, EdgeKind::Vertical);
    }
    (layers, Some(cone))
}

fn check_params(height: f64, levels: usize, min_levels: usize) -> Result<(), ConstructionError> {
    if !(height > 0.0 && height.is_finite()) {
        return Err(ConstructionError::NonpositiveHeight(height));
    }
    if levels < min_levels {
        return Err(ConstructionError::TooFewLevels {
            min: min_levels,
            got: levels,
        });
    }
    Ok(())
}

/// Fresh copy of `s` as a bottom layer labelled `label@0`.
fn copy_bottom(s: &MetricGraph, region: Region, base_height: f64) -> (Builder, Bottom) {
    let mut b = Builder {
        labels: Vec::new(),
        edges: Vec::new(),
        vcharts: Vec::new(),
        echarts: Vec::new(),
    };
    let verts: Vec<VertexId> = s
        .vertices()
        .map(|v| {
            b.vertex(
                format!("{}@0", s.label(v)),
                HatChart {
                    region,
                    trace: v,
                    height: base_height,
                },
            )
        })
        .collect();
    let kind_of = |i: usize| {
        if region == Region::Base {
            EdgeKind::Base
        } else {
            EdgeKind::Horizontal {
                base: EdgeId(i as u32),
                reversed: false,
            }
        }
    };
    let edges = s
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let id = b.edge(verts[e.u.index()], verts[e.v.index()], e.length, kind_of(i));
            (e.u.index(), e.v.index(), e.length, id, false)
        })
        .collect();
    let bottom = Bottom {
        verts,
        names: s.labels().to_vec(),
        edges,
        diameter: s.diameter(),
        base_height,
    };
    (b, bottom)
}

fn standalone_name(n: &str, layer: Layer) -> String {
    match layer {
        Layer::Cyl(j) => format!("{n}@{j}"),
        Layer::Top(j) => format!("{n}@t{j}"),
        Layer::Cone => "z".to_owned(),
    }
}

fn report(bottom: &Bottom, mesh: f64, params: HatParams, base_diameter: Option<f64>) -> HatReport {
    let level_spacing = params.height / params.levels as f64;
    let required_height = match (params.agility_max, base_diameter) {
        (Some(m), Some(d)) => Some(m + d),
        _ => None,
    };
    HatReport {
        height: params.height,
        required_height,
        guarantee_void: required_height.is_some_and(|r| params.height < r),
        subspace_diameter: bottom.diameter,
        mesh,
        level_spacing,
        top_spacing: (params.height + bottom.diameter) / params.levels as f64,
        tolerance: 2.0 * (mesh + level_spacing),
    }
}

/// `S x [0, h]` with the l1 product metric, discretised as `levels + 1`
/// copies of `s` joined by vertical edges of length `h / levels`. Layer `j`
/// vertices are labelled `label@j`; layer 0 is the base.
pub fn build_cylinder(
    s: &MetricGraph,
    height: f64,
    levels: usize,
) -> Result<Cylinder, ConstructionError> {
    check_params(height, levels, 1)?;
    let (mut b, bottom) = copy_bottom(s, Region::Base, 0.0);
    let (layers, _) = raise(&mut b, &bottom, height, levels, true, false, &standalone_name);
    let (graph, charts) = b.finish()?;
    Ok(Cylinder {
        graph,
        charts,
        layers,
    })
}

/// The top over `s`: copies of `s` at heights `t_j = j H'/levels`
/// (`H' = h + diam(s)`, `j < levels`) scaled horizontally by `1 - t_j/H'`,
/// joined vertically by edges of length `H'/levels`, and a cone vertex `z`
/// one more step above the last copy. Chart heights are `h + t_j`.
pub fn build_top(s: &MetricGraph, height: f64, levels: usize) -> Result<HatSpace, ConstructionError> {
    check_params(height, levels, 2)?;
    let (mut b, bottom) = copy_bottom(s, Region::Top, height);
    let (_, cone) = raise(&mut b, &bottom, height, levels, false, true, &standalone_name);
    let (graph, charts) = b.finish()?;
    let cone = cone.expect("top has a cone");
    let params = HatParams {
        height,
        levels,
        agility_max: None,
    };
    Ok(HatSpace {
        report: report(&bottom, s.mesh(), params, None),
        graph,
        charts,
        cone,
    })
}

/// Cylinder and top glued along the cylinder's upper layer, carrying the
/// graph metric of the union.
pub fn build_hat(s: &MetricGraph, height: f64, levels: usize) -> Result<HatSpace, ConstructionError> {
    check_params(height, levels, 2)?;
    let (mut b, bottom) = copy_bottom(s, Region::Base, 0.0);
    let (_, cone) = raise(&mut b, &bottom, height, levels, true, true, &standalone_name);
    let (graph, charts) = b.finish()?;
    let params = HatParams {
        height,
        levels,
        agility_max: None,
    };
    Ok(HatSpace {
        report: report(&bottom, s.mesh(), params, None),
        graph,
        charts,
        cone: cone.expect("hat has a cone"),
    })
}

/// Glue a hat onto `space` over the base vertices `subspace`.
///
/// The subspace carries the intrinsic metric of the subgraph it induces,
/// which must be connected; a pair of vertices with no edge between them is
/// also accepted and gets the two-point hat (an arc through the cone point)
/// with `diam(S)` the ambient distance between the two. Existing charts are
/// kept, so hats can be stacked on disjoint subspaces. New vertices are
/// labelled `hatN/label@cj`, `hatN/label@tj` and `hatN/z`.
pub fn attach_hat(
    space: &MetricGraph,
    charts: Option<&Charts>,
    subspace: &[VertexId],
    params: HatParams,
) -> Result<HatSpace, ConstructionError> {
    check_params(params.height, params.levels, 2)?;
    let flat;
    let charts = match charts {
        Some(c) => c,
        None => {
            flat = Charts::flat(space);
            &flat
        }
    };
    let members: BTreeSet<VertexId> = subspace.iter().copied().collect();
    if members.is_empty() {
        return Err(ConstructionError::DisconnectedSubspace);
    }
    for &v in &members {
        if v.index() >= space.vertex_count() {
            return Err(ConstructionError::NotSubgraph(v.to_string()));
        }
        if charts.vertex[v.index()].region != Region::Base {
            return Err(ConstructionError::NotSubgraph(space.label(v).to_owned()));
        }
    }
    let verts: Vec<VertexId> = members.iter().copied().collect();
    let pos = |v: VertexId| verts.binary_search(&v).ok();
    let mut induced = Vec::new();
    for (i, e) in space.edges().iter().enumerate() {
        if charts.edge[i].kind != EdgeKind::Base {
            continue;
        }
        if let (Some(a), Some(b)) = (pos(e.u), pos(e.v)) {
            induced.push((a, b, e.length, EdgeId(i as u32), false));
        }
    }
    let diameter = if connected(verts.len(), &induced) {
        MetricGraph::from_parts(
            verts.iter().map(|v| space.label(*v).to_owned()).collect(),
            induced
                .iter()
                .map(|&(a, b, l, _, _)| (VertexId(a as u32), VertexId(b as u32), l))
                .collect(),
        )?
        .diameter()
    } else if verts.len() == 2 {
        space.dist(PointRef::Vertex(verts[0]), PointRef::Vertex(verts[1]))
    } else {
        return Err(ConstructionError::DisconnectedSubspace);
    };
    let mesh = induced.iter().map(|e| e.2).fold(0.0, f64::max);
    let bottom = Bottom {
        names: verts.iter().map(|v| space.label(*v).to_owned()).collect(),
        verts,
        edges: induced,
        diameter,
        base_height: 0.0,
    };
    let tag = format!(
        "hat{}",
        charts
            .vertex
            .iter()
            .filter(|c| c.region == Region::ConePoint)
            .count()
    );
    let mut b = Builder {
        labels: space.labels().to_vec(),
        edges: space.edges().iter().map(|e| (e.u, e.v, e.length)).collect(),
        vcharts: charts.vertex.clone(),
        echarts: charts.edge.clone(),
    };
    let name = |n: &str, layer: Layer| match layer {
        Layer::Cyl(j) => format!("{tag}/{n}@c{j}"),
        Layer::Top(j) => format!("{tag}/{n}@t{j}"),
        Layer::Cone => format!("{tag}/z"),
    };
    let (_, cone) = raise(&mut b, &bottom, params.height, params.levels, true, true, &name);
    let base_diameter = params.agility_max.map(|_| space.diameter());
    let (graph, charts) = b.finish()?;
    Ok(HatSpace {
        report: report(&bottom, mesh, params, base_diameter),
        graph,
        charts,
        cone: cone.expect("hat has a cone"),
    })
}

fn connected(n: usize, edges: &[(usize, usize, f64, EdgeId, bool)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(a, b, ..) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = HashSet::from([0usize]);
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.len() == n
}
