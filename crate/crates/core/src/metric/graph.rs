use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::{MetricError, TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// A segment of the 1-complex, oriented `u -> v` for offsets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub length: f64,
}

impl Edge {
    pub fn other(&self, w: VertexId) -> VertexId {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }

    /// Offset of endpoint `w` in this edge's coordinate.
    pub fn offset_of(&self, w: VertexId) -> f64 {
        if w == self.u {
            0.0
        } else {
            self.length
        }
    }
}

/// A point of a metric graph.
///
/// Edge points always lie strictly inside their edge; use
/// [`MetricGraph::edge_point`] to build one, which canonicalizes endpoints to
/// vertices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "PointRepr", into = "PointRepr")]
pub enum PointRef {
    Vertex(VertexId),
    Edge { edge: EdgeId, offset: f64 },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PointRepr {
    Vertex { vertex: VertexId },
    Edge { edge: EdgeId, offset: f64 },
}

impl From<PointRepr> for PointRef {
    fn from(r: PointRepr) -> Self {
        match r {
            PointRepr::Vertex { vertex } => PointRef::Vertex(vertex),
            PointRepr::Edge { edge, offset } => PointRef::Edge { edge, offset },
        }
    }
}

impl From<PointRef> for PointRepr {
    fn from(p: PointRef) -> Self {
        match p {
            PointRef::Vertex(vertex) => PointRepr::Vertex { vertex },
            PointRef::Edge { edge, offset } => PointRepr::Edge { edge, offset },
        }
    }
}

impl PointRef {
    pub fn vertex(self) -> Option<VertexId> {
        match self {
            PointRef::Vertex(v) => Some(v),
            PointRef::Edge { .. } => None,
        }
    }

    /// Total order used to make distance evaluation argument-order independent.
    fn sort_key_cmp(&self, other: &PointRef) -> Ordering {
        match (self, other) {
            (PointRef::Vertex(a), PointRef::Vertex(b)) => a.cmp(b),
            (PointRef::Vertex(_), PointRef::Edge { .. }) => Ordering::Less,
            (PointRef::Edge { .. }, PointRef::Vertex(_)) => Ordering::Greater,
            (
                PointRef::Edge { edge: e1, offset: o1 },
                PointRef::Edge { edge: e2, offset: o2 },
            ) => e1.cmp(e2).then(o1.total_cmp(o2)),
        }
    }
}

/// One straight piece of a path: travel along `edge` from offset `from` to
/// offset `to`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Leg {
    pub edge: EdgeId,
    pub from: f64,
    pub to: f64,
}

impl Leg {
    pub fn length(&self) -> f64 {
        (self.to - self.from).abs()
    }
}

/// A piecewise path through the 1-complex. `points[i]` and `points[i + 1]`
/// are the ends of `legs[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    pub points: Vec<PointRef>,
    pub legs: Vec<Leg>,
    pub length: f64,
}

impl Path {
    pub fn start(&self) -> PointRef {
        self.points[0]
    }

    pub fn end(&self) -> PointRef {
        *self.points.last().expect("path has at least one point")
    }

    /// Vertices strictly between the two endpoints, in travel order.
    pub fn interior_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        let n = self.points.len();
        self.points
            .iter()
            .enumerate()
            .filter(move |(i, _)| *i > 0 && *i + 1 < n)
            .filter_map(|(_, p)| p.vertex())
    }
}

#[derive(Clone, Copy)]
struct HeapItem(f64, u32);

impl PartialEq for HeapItem {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapItem {}
impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

/// Shortest-path rows keyed by source vertex. Flushed wholesale once the
/// float budget is reached.
struct RowCache {
    rows: Mutex<HashMap<VertexId, Arc<[f64]>>>,
    capacity: usize,
}

const ROW_CACHE_FLOATS: usize = 1 << 24;

impl RowCache {
    fn new(vertex_count: usize) -> Self {
        RowCache {
            rows: Mutex::new(HashMap::new()),
            capacity: (ROW_CACHE_FLOATS / vertex_count.max(1)).max(16),
        }
    }
}

/// Connected weighted multigraph carrying its length metric. Immutable once
/// built.
pub struct MetricGraph {
    labels: Vec<String>,
    lookup: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    incident: Vec<Vec<EdgeId>>,
    rows: RowCache,
}

impl Clone for MetricGraph {
    fn clone(&self) -> Self {
        MetricGraph {
            labels: self.labels.clone(),
            lookup: self.lookup.clone(),
            edges: self.edges.clone(),
            incident: self.incident.clone(),
            rows: RowCache::new(self.labels.len()),
        }
    }
}

impl fmt::Debug for MetricGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricGraph")
            .field("vertices", &self.labels.len())
            .field("edges", &self.edges.len())
            .finish()
    }
}

impl MetricGraph {
    /// Build and validate a metric graph from labelled vertices and
    /// `(u, v, length)` edges.
    pub fn new<S: AsRef<str>>(
        vertices: &[S],
        edges: &[(S, S, f64)],
    ) -> Result<Self, MetricError> {
        let labels: Vec<String> = vertices.iter().map(|s| s.as_ref().to_owned()).collect();
        let mut lookup = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if lookup.insert(l.clone(), VertexId(i as u32)).is_some() {
                return Err(MetricError::DuplicateVertex(l.clone()));
            }
        }
        let find = |s: &str| {
            lookup
                .get(s)
                .copied()
                .ok_or_else(|| MetricError::UnknownVertex(s.to_owned()))
        };
        let mut indexed = Vec::with_capacity(edges.len());
        for (u, v, len) in edges {
            indexed.push((find(u.as_ref())?, find(v.as_ref())?, *len));
        }
        Self::from_parts(labels, indexed)
    }

    /// Build from vertex labels and index-based edges.
    pub fn from_parts(
        labels: Vec<String>,
        edges: Vec<(VertexId, VertexId, f64)>,
    ) -> Result<Self, MetricError> {
        if labels.is_empty() {
            return Err(MetricError::EmptyGraph);
        }
        let mut lookup = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if lookup.insert(l.clone(), VertexId(i as u32)).is_some() {
                return Err(MetricError::DuplicateVertex(l.clone()));
            }
        }
        let n = labels.len();
        let mut incident = vec![Vec::new(); n];
        let mut out = Vec::with_capacity(edges.len());
        for (u, v, length) in edges {
            for w in [u, v] {
                if w.index() >= n {
                    return Err(MetricError::UnknownVertex(w.to_string()));
                }
            }
            if !(length > 0.0 && length.is_finite()) {
                return Err(MetricError::NonpositiveLength {
                    u: labels[u.index()].clone(),
                    v: labels[v.index()].clone(),
                    length,
                });
            }
            if u == v {
                return Err(MetricError::SelfLoop(labels[u.index()].clone()));
            }
            let id = EdgeId(out.len() as u32);
            incident[u.index()].push(id);
            incident[v.index()].push(id);
            out.push(Edge { u, v, length });
        }
        let g = MetricGraph {
            rows: RowCache::new(n),
            labels,
            lookup,
            edges: out,
            incident,
        };
        g.check_connected()?;
        Ok(g)
    }

    /// Vertices labelled `0..n` with index edges.
    pub fn from_indexed(n: usize, edges: &[(u32, u32, f64)]) -> Result<Self, MetricError> {
        Self::from_parts(
            (0..n).map(|i| i.to_string()).collect(),
            edges
                .iter()
                .map(|&(u, v, l)| (VertexId(u), VertexId(v), l))
                .collect(),
        )
    }

    fn check_connected(&self) -> Result<(), MetricError> {
        let n = self.labels.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &e in &self.incident[x] {
                let y = self.edges[e.index()].other(VertexId(x as u32)).index();
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(i) => Err(MetricError::DisconnectedGraph(
                self.labels[i].clone(),
                self.labels[0].clone(),
            )),
            None => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.labels.len() as u32).map(VertexId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v.index()]
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.lookup.get(label).copied()
    }

    /// Longest edge.
    pub fn mesh(&self) -> f64 {
        self.edges.iter().map(|e| e.length).fold(0.0, f64::max)
    }

    /// Point at `offset` along `edge` (measured from `u`), canonicalized to a
    /// vertex at either end.
    pub fn edge_point(&self, edge: EdgeId, offset: f64) -> PointRef {
        let e = &self.edges[edge.index()];
        if offset <= 0.0 {
            PointRef::Vertex(e.u)
        } else if offset >= e.length {
            PointRef::Vertex(e.v)
        } else {
            PointRef::Edge { edge, offset }
        }
    }

    pub fn contains(&self, p: PointRef) -> bool {
        match p {
            PointRef::Vertex(v) => v.index() < self.labels.len(),
            PointRef::Edge { edge, offset } => self
                .edges
                .get(edge.index())
                .is_some_and(|e| offset > 0.0 && offset < e.length),
        }
    }

    pub fn check_point(&self, p: PointRef) -> Result<(), MetricError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(MetricError::InvalidPoint(p))
        }
    }

    /// Vertices reachable from `p` without crossing another vertex, with the
    /// cost of reaching each.
    fn anchors(&self, p: PointRef) -> ([(VertexId, f64); 2], usize) {
        match p {
            PointRef::Vertex(v) => ([(v, 0.0), (v, 0.0)], 1),
            PointRef::Edge { edge, offset } => {
                let e = &self.edges[edge.index()];
                ([(e.u, offset), (e.v, e.length - offset)], 2)
            }
        }
    }

    /// Single-source shortest-path distances from vertex `source`.
    pub fn vertex_row(&self, source: VertexId) -> Arc<[f64]> {
        {
            let rows = self.rows.rows.lock().expect("row cache poisoned");
            if let Some(r) = rows.get(&source) {
                return Arc::clone(r);
            }
        }
        let row: Arc<[f64]> = self.dijkstra(source).into();
        let mut rows = self.rows.rows.lock().expect("row cache poisoned");
        if rows.len() >= self.rows.capacity {
            rows.clear();
        }
        rows.insert(source, Arc::clone(&row));
        row
    }

    fn dijkstra(&self, source: VertexId) -> Vec<f64> {
        let n = self.labels.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut heap = BinaryHeap::new();
        dist[source.index()] = 0.0;
        heap.push(HeapItem(0.0, source.0));
        while let Some(HeapItem(d, x)) = heap.pop() {
            if d > dist[x as usize] {
                continue;
            }
            for &e in &self.incident[x as usize] {
                let edge = &self.edges[e.index()];
                let y = edge.other(VertexId(x));
                let nd = d + edge.length;
                if nd < dist[y.index()] {
                    dist[y.index()] = nd;
                    heap.push(HeapItem(nd, y.0));
                }
            }
        }
        dist
    }

    /// Distance between two vertices.
    pub fn vertex_distance(&self, a: VertexId, b: VertexId) -> f64 {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.vertex_row(a)[b.index()]
    }

    /// Length-metric distance between two points.
    pub fn distance(&self, x: PointRef, y: PointRef) -> Result<f64, MetricError> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(self.dist(x, y))
    }

    /// [`distance`](Self::distance) for points already known to be valid.
    pub fn dist(&self, x: PointRef, y: PointRef) -> f64 {
        let (x, y) = if x.sort_key_cmp(&y) == Ordering::Greater {
            (y, x)
        } else {
            (x, y)
        };
        let mut best = f64::INFINITY;
        if let (
            PointRef::Edge { edge: e1, offset: o1 },
            PointRef::Edge { edge: e2, offset: o2 },
        ) = (x, y)
        {
            if e1 == e2 {
                best = (o1 - o2).abs();
            }
        }
        let (ax, nx) = self.anchors(x);
        let (ay, ny) = self.anchors(y);
        for &(vx, cx) in &ax[..nx] {
            let row = self.vertex_row(vx);
            for &(vy, cy) in &ay[..ny] {
                let d = cx + row[vy.index()] + cy;
                if d < best {
                    best = d;
                }
            }
        }
        best
    }

    /// A shortest `x`–`y` path. Among equal-length candidates the one whose
    /// sequence of vertex ids is lexicographically smallest wins.
    pub fn geodesic(&self, x: PointRef, y: PointRef) -> Result<Path, MetricError> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(self.geodesic_unchecked(x, y))
    }

    pub(crate) fn geodesic_unchecked(&self, x: PointRef, y: PointRef) -> Path {
        if x == y {
            return Path {
                points: vec![x],
                legs: Vec::new(),
                length: 0.0,
            };
        }
        let best = self.dist(x, y);
        // Same edge, no vertex in between: empty vertex sequence beats all.
        if let (
            PointRef::Edge { edge: e1, offset: o1 },
            PointRef::Edge { edge: e2, offset: o2 },
        ) = (x, y)
        {
            if e1 == e2 && (o1 - o2).abs() <= best + TOL {
                return self.assemble(x, y, &[Leg { edge: e1, from: o1, to: o2 }]);
            }
        }
        let (ax, nx) = self.anchors(x);
        let (ay, ny) = self.anchors(y);
        let mut chosen: Option<(Vec<VertexId>, Vec<Leg>)> = None;
        for (ix, &(vx, cx)) in ax[..nx].iter().enumerate() {
            for (iy, &(vy, cy)) in ay[..ny].iter().enumerate() {
                let row = self.vertex_row(vy);
                let total = cx + row[vx.index()] + cy;
                if total > best + TOL {
                    continue;
                }
                let (verts, mid_legs) = self.lex_vertex_path(vx, vy, &row);
                if chosen.as_ref().is_some_and(|(v, _)| *v <= verts) {
                    continue;
                }
                let mut legs = Vec::with_capacity(mid_legs.len() + 2);
                if let PointRef::Edge { edge, offset } = x {
                    legs.push(Leg {
                        edge,
                        from: offset,
                        to: if ix == 0 { 0.0 } else { self.edge(edge).length },
                    });
                }
                legs.extend(mid_legs);
                if let PointRef::Edge { edge, offset } = y {
                    legs.push(Leg {
                        edge,
                        from: if iy == 0 { 0.0 } else { self.edge(edge).length },
                        to: offset,
                    });
                }
                chosen = Some((verts, legs));
            }
        }
        let (_, legs) = chosen.expect("connected graph always yields a route");
        self.assemble(x, y, &legs)
    }

    /// Lexicographically smallest shortest vertex path `from -> to`, given the
    /// distance row of `to`.
    fn lex_vertex_path(
        &self,
        from: VertexId,
        to: VertexId,
        row_to: &[f64],
    ) -> (Vec<VertexId>, Vec<Leg>) {
        let mut verts = vec![from];
        let mut legs = Vec::new();
        let mut cur = from;
        while cur != to {
            let here = row_to[cur.index()];
            let mut pick: Option<(VertexId, f64, EdgeId)> = None;
            for &e in &self.incident[cur.index()] {
                let edge = &self.edges[e.index()];
                let nb = edge.other(cur);
                let there = row_to[nb.index()];
                if there >= here || (edge.length + there - here).abs() > TOL {
                    continue;
                }
                let better = match pick {
                    None => true,
                    Some((pv, pl, pe)) => (nb, edge.length, e)
                        .partial_cmp(&(pv, pl, pe))
                        .is_some_and(|o| o == Ordering::Less),
                };
                if better {
                    pick = Some((nb, edge.length, e));
                }
            }
            let (nb, _, e) = pick.expect("shortest-path row admits a tight edge");
            let edge = &self.edges[e.index()];
            legs.push(Leg {
                edge: e,
                from: edge.offset_of(cur),
                to: edge.offset_of(nb),
            });
            verts.push(nb);
            cur = nb;
        }
        (verts, legs)
    }

    fn assemble(&self, x: PointRef, y: PointRef, legs: &[Leg]) -> Path {
        let mut points = vec![x];
        let mut kept = Vec::with_capacity(legs.len());
        let mut length = 0.0;
        for (i, leg) in legs.iter().enumerate() {
            if leg.length() == 0.0 {
                continue;
            }
            length += leg.length();
            let end = if i + 1 == legs.len() {
                y
            } else {
                self.edge_point(leg.edge, leg.to)
            };
            points.push(end);
            kept.push(*leg);
        }
        if points.len() == 1 {
            points.push(y);
        }
        Path {
            points,
            legs: kept,
            length,
        }
    }

    /// The point at arc length `s` along `path`.
    pub fn point_along(&self, path: &Path, s: f64) -> Result<PointRef, MetricError> {
        if !(s >= -TOL && s <= path.length + TOL) {
            return Err(MetricError::OutOfRange {
                s,
                length: path.length,
            });
        }
        if s <= 0.0 {
            return Ok(path.start());
        }
        let mut left = s;
        for (i, leg) in path.legs.iter().enumerate() {
            let len = leg.length();
            if left < len {
                let dir = if leg.to >= leg.from { 1.0 } else { -1.0 };
                return Ok(self.edge_point(leg.edge, leg.from + dir * left));
            }
            left -= len;
            if left <= 0.0 {
                return Ok(path.points[i + 1]);
            }
        }
        Ok(path.end())
    }

    /// Move from `x` toward `y` by at most `budget` along the chosen geodesic.
    pub fn advance_toward(&self, x: PointRef, y: PointRef, budget: f64) -> PointRef {
        if x == y {
            return x;
        }
        if self.dist(x, y) <= budget {
            return y;
        }
        let path = self.geodesic_unchecked(x, y);
        self.point_along(&path, budget.min(path.length))
            .expect("budget within path length")
    }

    /// Nearest vertex to `p`; ties go to the smaller vertex id.
    pub fn nearest_vertex(&self, p: PointRef) -> VertexId {
        match p {
            PointRef::Vertex(v) => v,
            PointRef::Edge { edge, offset } => {
                let e = &self.edges[edge.index()];
                let du = offset;
                let dv = e.length - offset;
                if du < dv || (du == dv && e.u < e.v) {
                    e.u
                } else {
                    e.v
                }
            }
        }
    }
}
