use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::{DiscreteGraph, SolverError};
use crate::metric::{MetricError, MetricGraph, VertexId};

/// Parsed edge-list text. Vertices are numbered in order of first
/// appearance.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeList {
    pub labels: Vec<String>,
    pub edges: Vec<(u32, u32, f64)>,
}

/// Parse lines of the form `u v [length]`. A line with a single token
/// declares an isolated vertex; `#` starts a comment. Lengths default to 1.
pub fn parse_edge_list(text: &str) -> Result<EdgeList, SolverError> {
    let mut labels = Vec::new();
    let mut index: HashMap<String, u32> = HashMap::new();
    let mut intern = |name: &str, labels: &mut Vec<String>| {
        *index.entry(name.to_owned()).or_insert_with(|| {
            labels.push(name.to_owned());
            labels.len() as u32 - 1
        })
    };
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let bad = |reason: String| SolverError::BadEdgeList {
            line: i + 1,
            reason,
        };
        match tokens.as_slice() {
            [] => {}
            [v] => {
                intern(v, &mut labels);
            }
            [u, v, rest @ ..] => {
                let length = match rest {
                    [] => 1.0,
                    [len] => len
                        .parse::<f64>()
                        .map_err(|e| bad(format!("length `{len}`: {e}")))?,
                    _ => return Err(bad(format!("expected `u v [length]`, got {} fields", tokens.len()))),
                };
                if !(length > 0.0 && length.is_finite()) {
                    return Err(bad(format!("length {length} is not positive")));
                }
                if u == v {
                    return Err(bad(format!("self-loop at `{u}`")));
                }
                let a = intern(u, &mut labels);
                let b = intern(v, &mut labels);
                edges.push((a, b, length));
            }
        }
    }
    if labels.is_empty() {
        return Err(SolverError::EmptyGraph);
    }
    Ok(EdgeList { labels, edges })
}

impl EdgeList {
    /// Combinatorial graph; lengths are ignored.
    pub fn to_discrete(&self) -> Result<DiscreteGraph, SolverError> {
        let edges: Vec<(u32, u32)> = self.edges.iter().map(|&(u, v, _)| (u, v)).collect();
        DiscreteGraph::with_labels(self.labels.clone(), &edges)
    }

    pub fn to_metric(&self) -> Result<MetricGraph, MetricError> {
        MetricGraph::from_parts(
            self.labels.clone(),
            self.edges
                .iter()
                .map(|&(u, v, l)| (VertexId(u), VertexId(v), l))
                .collect(),
        )
    }
}

/// Built-in graph generators: `path:n`, `cycle:n`, `complete:n`,
/// `grid:RxC`, `tree:n` or `tree:n:seed`, `petersen`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphSpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Grid(usize, usize),
    Tree { n: usize, seed: Option<u64> },
    Petersen,
}

impl GraphSpec {
    /// `default_seed` is used by `tree:n` without an explicit seed.
    pub fn build(&self, default_seed: u64) -> Result<DiscreteGraph, SolverError> {
        match *self {
            GraphSpec::Path(n) => DiscreteGraph::path(n),
            GraphSpec::Cycle(n) => DiscreteGraph::cycle(n),
            GraphSpec::Complete(n) => DiscreteGraph::complete(n),
            GraphSpec::Grid(r, c) => DiscreteGraph::grid(r, c),
            GraphSpec::Tree { n, seed } => DiscreteGraph::random_tree(n, seed.unwrap_or(default_seed)),
            GraphSpec::Petersen => Ok(DiscreteGraph::petersen()),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| SolverError::BadGenerator(format!("`{s}`: {why}"));
        let count = |t: &str| -> Result<usize, SolverError> {
            match t.trim().parse::<usize>() {
                Ok(n) if n >= 1 => Ok(n),
                _ => Err(bad("expected a positive vertex count")),
            }
        };
        let (name, arg) = match s.trim().split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (s.trim(), None),
        };
        match (name, arg) {
            ("petersen", None) => Ok(GraphSpec::Petersen),
            ("path", Some(a)) => Ok(GraphSpec::Path(count(a)?)),
            ("cycle", Some(a)) => {
                let n = count(a)?;
                if n < 3 {
                    return Err(bad("a cycle needs at least 3 vertices"));
                }
                Ok(GraphSpec::Cycle(n))
            }
            ("complete", Some(a)) => Ok(GraphSpec::Complete(count(a)?)),
            ("grid", Some(a)) => {
                let (r, c) = a
                    .split_once(['x', 'X', '×'])
                    .ok_or_else(|| bad("expected grid:RxC"))?;
                Ok(GraphSpec::Grid(count(r)?, count(c)?))
            }
            ("tree", Some(a)) => match a.split_once(':') {
                None => Ok(GraphSpec::Tree {
                    n: count(a)?,
                    seed: None,
                }),
                Some((n, seed)) => Ok(GraphSpec::Tree {
                    n: count(n)?,
                    seed: Some(seed.trim().parse().map_err(|_| bad("bad seed"))?),
                }),
            },
            _ => Err(bad("unknown generator")),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Path(n) => write!(f, "path:{n}"),
            GraphSpec::Cycle(n) => write!(f, "cycle:{n}"),
            GraphSpec::Complete(n) => write!(f, "complete:{n}"),
            GraphSpec::Grid(r, c) => write!(f, "grid:{r}x{c}"),
            GraphSpec::Tree { n, seed: None } => write!(f, "tree:{n}"),
            GraphSpec::Tree { n, seed: Some(s) } => write!(f, "tree:{n}:{s}"),
            GraphSpec::Petersen => write!(f, "petersen"),
        }
    }
}
