//! Offline checks of traces and spaces. Each check reports the worst margin
//! (bound minus observed value); a check passes when no margin is negative.

use serde::Serialize;

use crate::construct::{Charts, ComponentEmbedding, EdgeKind, Region};
use crate::format::Space;
use crate::game::{GameTrace, MOVE_TOL};
use crate::metric::{random_point, validate_length_metric, MetricGraph, Path, PointRef, TOL};
use crate::rng::stream_rng;
use crate::strategies::{component_graph, ComponentLocator, Location};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Smallest `bound - observed` seen; `+inf` when nothing was checked.
    pub worst_margin: f64,
    pub checked: usize,
    pub first_failure: Option<String>,
}

struct Check {
    report: CheckReport,
}

impl Check {
    fn new(name: &str) -> Self {
        Check {
            report: CheckReport {
                name: name.to_owned(),
                passed: true,
                worst_margin: f64::INFINITY,
                checked: 0,
                first_failure: None,
            },
        }
    }

    /// Record `observed <= bound`.
    fn le(&mut self, observed: f64, bound: f64, what: impl FnOnce() -> String) {
        self.margin(bound - observed, what);
    }

    fn margin(&mut self, margin: f64, what: impl FnOnce() -> String) {
        let r = &mut self.report;
        r.checked += 1;
        r.worst_margin = r.worst_margin.min(margin);
        if !(margin >= 0.0) && r.passed {
            r.passed = false;
            r.first_failure = Some(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.margin(f64::NEG_INFINITY, || what);
    }

    fn done(self) -> CheckReport {
        self.report
    }
}

/// Triangle inequality, symmetry and geodesic realisation on random
/// triples.
pub fn check_metric(g: &MetricGraph, samples: usize, seed: u64) -> CheckReport {
    let m = validate_length_metric(g, samples, seed);
    let mut c = Check::new("metric");
    c.le(m.max_triangle_violation, TOL, || "triangle inequality".into());
    c.le(m.max_asymmetry, TOL, || "symmetry".into());
    c.le(m.max_geodesic_gap, TOL, || "geodesic length".into());
    c.report.checked = m.samples;
    c.done()
}

/// Every move of every agent, shadows included, within the step budget;
/// recorded distances, values and capture flags consistent.
pub fn check_legality(trace: &GameTrace, g: &MetricGraph) -> CheckReport {
    let mut c = Check::new("legality");
    let mut value = f64::INFINITY;
    for (i, s) in trace.steps.iter().enumerate() {
        let points = std::iter::once(&s.robber)
            .chain(&s.cops)
            .chain(s.shadows.iter().flatten());
        if let Some(p) = points.clone().find(|p| !g.contains(**p)) {
            c.fail(format!("step {}: {p:?} is not in the space", s.n));
            continue;
        }
        if s.cops.len() != trace.header.k {
            c.fail(format!("step {}: {} cops", s.n, s.cops.len()));
            continue;
        }
        let min = s
            .cops
            .iter()
            .map(|&p| g.dist(p, s.robber))
            .fold(f64::INFINITY, f64::min);
        c.le((min - s.min_dist).abs(), TOL, || format!("step {}: min_dist", s.n));
        value = value.min(min);
        c.le((value - s.value).abs(), TOL, || format!("step {}: value", s.n));
        if s.captured != (min == 0.0) {
            c.fail(format!("step {}: capture flag", s.n));
        }
        if i == 0 {
            if s.n != 0 {
                c.fail("trace does not start at step 0".into());
            }
            continue;
        }
        let prev = &trace.steps[i - 1];
        if s.n != prev.n + 1 {
            c.fail(format!("step {} follows step {}", s.n, prev.n));
            continue;
        }
        let expected_tau = trace.header.schedule.tau(s.n);
        c.le((s.tau - expected_tau).abs(), TOL, || format!("step {}: tau", s.n));
        let budget = s.tau + MOVE_TOL;
        c.le(g.dist(prev.robber, s.robber), budget, || format!("step {}: robber", s.n));
        for (j, (a, b)) in prev.cops.iter().zip(&s.cops).enumerate() {
            c.le(g.dist(*a, *b), budget, || format!("step {}: cop {j}", s.n));
        }
        if let (Some(pa), Some(pb)) = (&prev.shadows, &s.shadows) {
            for (j, (a, b)) in pa.iter().zip(pb).enumerate() {
                c.le(g.dist(*a, *b), budget, || format!("step {}: shadow {j}", s.n));
            }
        }
    }
    c.done()
}

/// Pretended positions: within `ell / 2` of a cop inside the chosen
/// component, the hub for a cop outside it, and equal or adjacent from one
/// step to the next. When the trace records shadows, those are the cops the
/// pretend robber saw.
pub fn check_pret(trace: &GameTrace, g: &MetricGraph, components: &[ComponentEmbedding]) -> CheckReport {
    let mut c = Check::new("pret");
    let (Some(index), Some(ell)) = (trace.header.notes.component, trace.header.notes.ell) else {
        c.fail("trace header names no component".into());
        return c.done();
    };
    let Some(emb) = index.checked_sub(1).and_then(|i| components.get(i)) else {
        c.fail(format!("space has no component {index}"));
        return c.done();
    };
    let (locator, dg) = match (ComponentLocator::new(g, emb), component_graph(emb)) {
        (Ok(l), Ok(d)) => (l, d),
        _ => {
            c.fail(format!("component {index} is malformed"));
            return c.done();
        }
    };
    let mut prev: Option<Vec<u32>> = None;
    for s in &trace.steps {
        let Some(pretended) = &s.pretended else {
            c.fail(format!("step {}: no pretended positions", s.n));
            return c.done();
        };
        let discrete: Option<Vec<u32>> = pretended.iter().map(|&v| locator.discrete_of(v)).collect();
        let seen = s.shadows.as_ref().unwrap_or(&s.cops);
        let Some(discrete) = discrete.filter(|d| d.len() == seen.len()) else {
            c.fail(format!("step {}: pretended positions off the component", s.n));
            return c.done();
        };
        for (i, (&cop, &p)) in seen.iter().zip(&discrete).enumerate() {
            match locator.locate(g, cop) {
                Location::Outside => {
                    if p != locator.hub() {
                        c.fail(format!("step {}: cop {i} outside but not at the hub", s.n));
                    } else {
                        c.margin(0.0, String::new);
                    }
                }
                _ => {
                    let d = g.dist(PointRef::Vertex(locator.vertex(p)), cop);
                    c.le(d, ell / 2.0 + TOL, || format!("step {}: cop {i} at {d}", s.n));
                }
            }
        }
        if let Some(before) = &prev {
            for (i, (&a, &b)) in before.iter().zip(&discrete).enumerate() {
                if a != b && !dg.is_adjacent(a, b) {
                    c.fail(format!("step {}: pretended cop {i} jumped {a} -> {b}", s.n));
                }
            }
        }
        prev = Some(discrete);
    }
    c.done()
}

/// Every recorded closest-cop distance at least `floor`.
pub fn check_distance_floor(trace: &GameTrace, floor: f64) -> CheckReport {
    let mut c = Check::new("distance-floor");
    for s in &trace.steps {
        c.le(floor, s.min_dist, || format!("step {}: min_dist {}", s.n, s.min_dist));
    }
    c.done()
}

/// Shadows stay in the base and `d(shadow, trace(cop)) <= hei(cop) + tol`.
pub fn check_sce(trace: &GameTrace, space: &Space, tol: f64) -> CheckReport {
    let mut c = Check::new("sce");
    let Some(charts) = charts_of(space, &mut c) else {
        return c.done();
    };
    let g = &space.graph;
    for s in &trace.steps {
        let Some(shadows) = &s.shadows else {
            c.fail(format!("step {}: no shadows", s.n));
            return c.done();
        };
        if shadows.len() != s.cops.len() {
            c.fail(format!("step {}: shadow count", s.n));
            continue;
        }
        for (i, (&sh, &cop)) in shadows.iter().zip(&s.cops).enumerate() {
            if !g.contains(sh) || !g.contains(cop) {
                c.fail(format!("step {}: point outside the space", s.n));
                continue;
            }
            if charts.chart_at(g, sh).region != Region::Base {
                c.fail(format!("step {}: shadow {i} left the base", s.n));
                continue;
            }
            let ch = charts.chart_at(g, cop);
            let d = g.dist(sh, ch.trace);
            c.le(d, ch.height + tol, || format!("step {}: cop {i}, d = {d}, hei = {}", s.n, ch.height));
        }
    }
    c.done()
}

/// `min d(cop, robber) >= min d(shadow, robber) / 3 - tol` over the trace.
pub fn check_eps3(trace: &GameTrace, g: &MetricGraph, tol: f64) -> CheckReport {
    let mut c = Check::new("eps3");
    let mut cop_min = f64::INFINITY;
    let mut shadow_min = f64::INFINITY;
    for s in &trace.steps {
        let Some(shadows) = &s.shadows else {
            c.fail(format!("step {}: no shadows", s.n));
            return c.done();
        };
        cop_min = cop_min.min(s.min_dist);
        for &sh in shadows {
            shadow_min = shadow_min.min(g.dist(sh, s.robber));
        }
    }
    c.le(shadow_min / 3.0 - tol, cop_min, || {
        format!("cop minimum {cop_min}, shadow minimum {shadow_min}")
    });
    c.done()
}

fn charts_of<'a>(space: &'a Space, c: &mut Check) -> Option<&'a Charts> {
    if space.charts.is_none() {
        c.fail("space has no charts".into());
    }
    space.charts.as_ref()
}

/// `|d(x, trace(x)) - hei(x)| <= tol` at every base and cylinder vertex.
pub fn check_hei(space: &Space, tol: f64) -> CheckReport {
    let mut c = Check::new("hei");
    let Some(charts) = charts_of(space, &mut c) else {
        return c.done();
    };
    let g = &space.graph;
    for v in g.vertices() {
        let ch = charts.vertex_chart(v);
        if ch.region.is_tracked() {
            let d = g.vertex_distance(v, ch.trace);
            c.le((d - ch.height).abs(), tol, || format!("{}: d = {d}, hei = {}", g.label(v), ch.height));
        }
    }
    c.done()
}

/// Length of the projection of `path` to the base, or `None` if the path
/// enters the top.
pub fn projected_length(g: &MetricGraph, charts: &Charts, path: &Path) -> Option<f64> {
    let mut total = 0.0;
    for leg in &path.legs {
        let ec = charts.edge[leg.edge.index()];
        if !ec.region.is_tracked() {
            return None;
        }
        total += match ec.kind {
            EdgeKind::Base => leg.length(),
            EdgeKind::Vertical => 0.0,
            EdgeKind::Horizontal { base, .. } => leg.length() * g.edge(base).length / g.edge(leg.edge).length,
        };
    }
    Some(total)
}

/// Projection does not lengthen geodesics between random points below the
/// top, up to `tol`. Paths through the top are skipped.
pub fn check_ell(space: &Space, samples: usize, seed: u64, tol: f64) -> CheckReport {
    let mut c = Check::new("ell");
    let Some(charts) = charts_of(space, &mut c) else {
        return c.done();
    };
    let g = &space.graph;
    let mut rng = stream_rng(seed, "ell");
    let mut tries = 0;
    while c.report.checked < samples && tries < 20 * samples {
        tries += 1;
        let (p, q) = (random_point(g, &mut rng), random_point(g, &mut rng));
        if !charts.chart_at(g, p).region.is_tracked() || !charts.chart_at(g, q).region.is_tracked() {
            continue;
        }
        let Ok(path) = g.geodesic(p, q) else {
            continue;
        };
        if let Some(proj) = projected_length(g, charts, &path) {
            c.le(proj, path.length + tol, || format!("{p:?} -> {q:?}: {proj} > {}", path.length));
        }
    }
    c.done()
}
