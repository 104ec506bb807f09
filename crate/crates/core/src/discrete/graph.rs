use std::collections::VecDeque;

use rand::Rng;

use super::SolverError;
use crate::metric::{MetricError, MetricGraph, VertexId};
use crate::rng::stream_rng;

/// Finite simple connected graph for the classical game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteGraph {
    labels: Vec<String>,
    adj: Vec<Vec<u32>>,
    /// Closed neighbourhoods, sorted, each containing the vertex itself.
    closed: Vec<Vec<u32>>,
}

impl DiscreteGraph {
    /// Vertices `0..n`; duplicate edges collapse to one.
    pub fn new(n: usize, edges: &[(u32, u32)]) -> Result<Self, SolverError> {
        Self::with_labels((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn with_labels(labels: Vec<String>, edges: &[(u32, u32)]) -> Result<Self, SolverError> {
        let n = labels.len();
        if n == 0 {
            return Err(SolverError::EmptyGraph);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(SolverError::UnknownVertex(u.max(v)));
            }
            if u == v {
                return Err(SolverError::SelfLoop(u));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let closed = adj
            .iter()
            .enumerate()
            .map(|(i, list)| {
                let mut c = list.clone();
                c.push(i as u32);
                c.sort_unstable();
                c
            })
            .collect();
        let g = DiscreteGraph {
            labels,
            adj,
            closed,
        };
        if g.distances_from(0).contains(&u32::MAX) {
            return Err(SolverError::Disconnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn closed_neighborhood(&self, v: u32) -> &[u32] {
        &self.closed[v as usize]
    }

    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }

    pub fn is_adjacent(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// BFS hop counts from `v`; `u32::MAX` marks unreachable vertices.
    pub fn distances_from(&self, v: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.adj.len()];
        dist[v as usize] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x as usize] {
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = dist[x as usize] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// The 1-complex of this graph with every edge of length `edge_length`.
    pub fn to_metric(&self, edge_length: f64) -> Result<MetricGraph, MetricError> {
        MetricGraph::from_parts(
            self.labels.clone(),
            self.edges()
                .into_iter()
                .map(|(u, v)| (VertexId(u), VertexId(v), edge_length))
                .collect(),
        )
    }

    /// Combinatorial skeleton of a metric graph (parallel edges merged).
    pub fn from_metric(g: &MetricGraph) -> Result<Self, SolverError> {
        let edges: Vec<(u32, u32)> = g.edges().iter().map(|e| (e.u.0, e.v.0)).collect();
        Self::with_labels(g.labels().to_vec(), &edges)
    }

    pub fn path(n: usize) -> Result<Self, SolverError> {
        let edges: Vec<_> = (1..n as u32).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self, SolverError> {
        if n < 3 {
            return Err(SolverError::BadGenerator(format!("cycle:{n} needs n >= 3")));
        }
        let edges: Vec<_> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
        Self::new(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self, SolverError> {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Self::new(n, &edges)
    }

    /// `rows x cols` grid; vertex `r * cols + c` is labelled `r,c`.
    pub fn grid(rows: usize, cols: usize) -> Result<Self, SolverError> {
        let mut edges = Vec::new();
        let id = |r: usize, c: usize| (r * cols + c) as u32;
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    edges.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < rows {
                    edges.push((id(r, c), id(r + 1, c)));
                }
            }
        }
        let labels = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| format!("{r},{c}")))
            .collect();
        Self::with_labels(labels, &edges)
    }

    /// Random recursive tree: vertex `i > 0` hangs off a uniform earlier
    /// vertex.
    pub fn random_tree(n: usize, seed: u64) -> Result<Self, SolverError> {
        let mut rng = stream_rng(seed, "tree");
        let edges: Vec<_> = (1..n as u32).map(|i| (rng.random_range(0..i), i)).collect();
        Self::new(n, &edges)
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Self::new(10, &edges).expect("petersen graph is valid")
    }
}
