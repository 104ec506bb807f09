use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::locate::ComponentLocator;
use crate::construct::ComponentEmbedding;
use crate::discrete::{DiscreteState, StrategyTable, Turn};
use crate::game::{CopStrategy, GameState, StrategyError};
use crate::metric::{random_point, MetricGraph, PointRef, TOL};
use crate::rng::stream_rng;

fn last_cops(history: &[GameState]) -> Result<&[PointRef], StrategyError> {
    history
        .last()
        .map(|s| s.cops.as_slice())
        .ok_or_else(|| StrategyError::InconsistentState("empty history".into()))
}

/// Every cop runs straight at the revealed robber.
#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyCops;

impl CopStrategy for GreedyCops {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn respond(
        &mut self,
        space: &MetricGraph,
        history: &[GameState],
        robber: PointRef,
        tau: f64,
    ) -> Result<Vec<PointRef>, StrategyError> {
        Ok(last_cops(history)?
            .iter()
            .map(|&c| space.advance_toward(c, robber, tau))
            .collect())
    }
}

/// Every cop heads for a fresh uniformly random point and covers a random
/// fraction of its budget.
#[derive(Debug, Clone)]
pub struct RandomCops {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomCops {
    pub fn new(seed: u64) -> Self {
        RandomCops {
            seed,
            rng: stream_rng(seed, "cops"),
        }
    }
}

impl CopStrategy for RandomCops {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn respond(
        &mut self,
        space: &MetricGraph,
        history: &[GameState],
        _robber: PointRef,
        tau: f64,
    ) -> Result<Vec<PointRef>, StrategyError> {
        Ok(last_cops(history)?
            .iter()
            .map(|&c| {
                let target = random_point(space, &mut self.rng);
                let budget = tau * self.rng.random::<f64>();
                space.advance_toward(c, target, budget)
            })
            .collect())
    }
}

/// Optimal discrete cops for one component, moving vertex to vertex with
/// the component's edge length as budget. The robber is snapped to its
/// nearest vertex. A cop that can reach the robber outright does so.
#[derive(Debug, Clone)]
pub struct LiftedCops {
    locator: ComponentLocator,
    table: StrategyTable,
    ell: f64,
}

impl LiftedCops {
    pub fn new(
        space: &MetricGraph,
        embedding: &ComponentEmbedding,
        table: StrategyTable,
    ) -> Result<Self, StrategyError> {
        let locator = ComponentLocator::new(space, embedding)?;
        let ell = embedding.uniform_edge_length(space).ok_or_else(|| {
            StrategyError::InconsistentState("component edges differ in length".into())
        })?;
        if table.graph().vertex_count() != embedding.vertices.len() {
            return Err(StrategyError::InconsistentState(
                "table and component sizes differ".into(),
            ));
        }
        Ok(LiftedCops {
            locator,
            table,
            ell,
        })
    }
}

impl CopStrategy for LiftedCops {
    fn name(&self) -> String {
        "lifted".into()
    }

    fn respond(
        &mut self,
        space: &MetricGraph,
        history: &[GameState],
        robber: PointRef,
        tau: f64,
    ) -> Result<Vec<PointRef>, StrategyError> {
        if (tau - self.ell).abs() > TOL {
            return Err(StrategyError::ScheduleMismatch {
                expected: self.ell,
                got: tau,
            });
        }
        let cops = last_cops(history)?;
        if cops.len() != self.table.cop_count() {
            return Err(StrategyError::CopCount {
                expected: self.table.cop_count(),
                got: cops.len(),
            });
        }
        let on_vertices: Option<Vec<u32>> = cops
            .iter()
            .map(|c| c.vertex().and_then(|v| self.locator.discrete_of(v)))
            .collect();
        let snapped = self.locator.discrete_of(space.nearest_vertex(robber));
        let targets: Vec<PointRef> = match (on_vertices, snapped) {
            (Some(discrete), Some(r)) => self
                .table
                .cop_move(&DiscreteState {
                    cops: discrete,
                    robber: r,
                    turn: Turn::Cops,
                })?
                .into_iter()
                .map(|d| PointRef::Vertex(self.locator.vertex(d)))
                .collect(),
            _ => {
                let hub = PointRef::Vertex(self.locator.vertex(self.locator.hub()));
                cops.iter().map(|&c| space.advance_toward(c, hub, tau)).collect()
            }
        };
        Ok(cops
            .iter()
            .zip(targets)
            .map(|(&c, t)| if space.dist(c, robber) <= tau { robber } else { t })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::ComponentEmbedding;
    use crate::discrete::{k_copwin, DiscreteGraph, DEFAULT_BUDGET};
    use crate::game::{new_game, AgilitySchedule, Placement, RobberStrategy};
    use crate::metric::{EdgeId, VertexId};

    struct Idle(PointRef, Vec<PointRef>, f64);

    impl RobberStrategy for Idle {
        fn name(&self) -> String {
            "idle".into()
        }
        fn place(&mut self, _: &MetricGraph, _: usize) -> Result<Placement, StrategyError> {
            Ok(Placement {
                robber: self.0,
                cops: self.1.clone(),
                schedule: AgilitySchedule::Constant(self.2),
            })
        }
        fn respond(&mut self, _: &MetricGraph, h: &[GameState], _: f64) -> Result<PointRef, StrategyError> {
            Ok(h.last().unwrap().robber)
        }
    }

    fn v(i: u32) -> PointRef {
        PointRef::Vertex(VertexId(i))
    }

    #[test]
    fn greedy_interval_chase_takes_ceil_d_over_tau() {
        let g = MetricGraph::from_indexed(2, &[(0, 1, 2.5)]).unwrap();
        let robber = Box::new(Idle(v(1), vec![v(0)], 1.0));
        let trace = new_game(&g, 1, robber, Box::new(GreedyCops), 10, vec![]).unwrap().run().unwrap();
        assert!(trace.captured());
        assert_eq!(trace.steps.last().unwrap().n, 3);
    }

    #[test]
    fn greedy_stays_on_robber_and_moves_cops_independently() {
        let g = MetricGraph::from_indexed(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let hist = [GameState {
            n: 0,
            tau: 0.0,
            robber: v(1),
            cops: vec![v(1), v(0), v(2)],
        }];
        let out = GreedyCops.respond(&g, &hist, v(1), 0.5).unwrap();
        assert_eq!(out[0], v(1));
        assert_eq!(out[1], g.edge_point(EdgeId(0), 0.5));
        assert_eq!(out[2], g.edge_point(EdgeId(1), 0.5));
    }

    #[test]
    fn random_cops_are_reproducible_and_legal() {
        let g = MetricGraph::from_indexed(3, &[(0, 1, 1.0), (1, 2, 2.0), (2, 0, 0.5)]).unwrap();
        let hist = [GameState {
            n: 0,
            tau: 0.0,
            robber: v(1),
            cops: vec![v(0), v(2)],
        }];
        let a = RandomCops::new(3).respond(&g, &hist, v(1), 0.4).unwrap();
        let b = RandomCops::new(3).respond(&g, &hist, v(1), 0.4).unwrap();
        assert_eq!(a, b);
        for (c, n) in hist[0].cops.iter().zip(&a) {
            assert!(g.dist(*c, *n) <= 0.4 + 1e-12);
        }
    }

    #[test]
    fn lifted_cop_catches_idle_robber_on_a_path() {
        let dg = DiscreteGraph::path(6).unwrap();
        let g = dg.to_metric(0.5).unwrap();
        let emb = ComponentEmbedding::whole(&g, VertexId(0));
        let (win, table) = k_copwin(&dg, 1, DEFAULT_BUDGET).unwrap();
        assert!(win);
        let cops = LiftedCops::new(&g, &emb, table).unwrap();
        let robber = Box::new(Idle(g.edge_point(EdgeId(4), 0.2), vec![v(0)], 0.5));
        let trace = new_game(&g, 1, robber, Box::new(cops), 50, vec![]).unwrap().run().unwrap();
        assert!(trace.captured());
    }

    #[test]
    fn lifted_cops_refuse_other_schedules() {
        let dg = DiscreteGraph::cycle(4).unwrap();
        let g = dg.to_metric(1.0).unwrap();
        let (_, table) = k_copwin(&dg, 2, DEFAULT_BUDGET).unwrap();
        let mut cops = LiftedCops::new(&g, &ComponentEmbedding::whole(&g, VertexId(0)), table).unwrap();
        let hist = [GameState {
            n: 0,
            tau: 0.0,
            robber: v(2),
            cops: vec![v(0), v(0)],
        }];
        assert!(matches!(
            cops.respond(&g, &hist, v(2), 0.5),
            Err(StrategyError::ScheduleMismatch { .. })
        ));
        let moved = cops.respond(&g, &hist, v(2), 1.0).unwrap();
        assert!(moved.iter().all(|&m| g.dist(v(0), m) <= 1.0));
    }
}
