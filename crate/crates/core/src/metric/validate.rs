use rand::Rng;
use serde::Serialize;

use super::graph::{EdgeId, MetricGraph, PointRef, VertexId};
use crate::rng::stream_rng;

/// Worst metric-axiom defects seen on random samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricReport {
    pub samples: usize,
    /// `max(d(x,z) - d(x,y) - d(y,z))`, clamped below at 0.
    pub max_triangle_violation: f64,
    /// `max |d(x,y) - d(y,x)|`.
    pub max_asymmetry: f64,
    /// `max |len(geodesic(x,y)) - d(x,y)|`.
    pub max_geodesic_gap: f64,
}

impl MetricReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_triangle_violation <= tol
            && self.max_asymmetry <= tol
            && self.max_geodesic_gap <= tol
    }
}

/// Uniformly random point: a vertex with probability 1/4, otherwise an
/// interior point of a uniformly chosen edge.
pub fn random_point<R: Rng>(g: &MetricGraph, rng: &mut R) -> PointRef {
    if g.edge_count() == 0 || rng.random_bool(0.25) {
        return PointRef::Vertex(VertexId(rng.random_range(0..g.vertex_count() as u32)));
    }
    let e = EdgeId(rng.random_range(0..g.edge_count() as u32));
    let len = g.edge(e).length;
    g.edge_point(e, rng.random_range(0.0..len))
}

/// Sample `sample_count` triples and report triangle, symmetry and geodesic
/// realisation defects.
pub fn validate_length_metric(g: &MetricGraph, sample_count: usize, seed: u64) -> MetricReport {
    let mut rng = stream_rng(seed, "validate-metric");
    let mut report = MetricReport {
        samples: sample_count,
        max_triangle_violation: 0.0,
        max_asymmetry: 0.0,
        max_geodesic_gap: 0.0,
    };
    for _ in 0..sample_count.max(1) {
        let x = random_point(g, &mut rng);
        let y = random_point(g, &mut rng);
        let z = random_point(g, &mut rng);
        let xy = g.dist(x, y);
        let yz = g.dist(y, z);
        let xz = g.dist(x, z);
        report.max_triangle_violation = report.max_triangle_violation.max(xz - xy - yz);
        report.max_asymmetry = report.max_asymmetry.max((xy - g.dist(y, x)).abs());
        let geo = g.geodesic_unchecked(x, y);
        report.max_geodesic_gap = report.max_geodesic_gap.max((geo.length - xy).abs());
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::TOL;

    #[test]
    fn k2_and_c4_pass() {
        let k2 = MetricGraph::from_indexed(2, &[(0, 1, 1.0)]).unwrap();
        let r = validate_length_metric(&k2, 100, 1);
        assert_eq!(r.max_asymmetry, 0.0);
        assert!(r.passes(TOL));
        let c4 = MetricGraph::from_indexed(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)])
            .unwrap();
        let r = validate_length_metric(&c4, 1000, 7);
        assert!(r.max_triangle_violation <= TOL, "{r:?}");
        assert!(r.passes(TOL));
    }
}
