use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::game::{AgilitySchedule, GameState, Placement, RobberStrategy, StrategyError};
use crate::metric::{random_point, MetricGraph, PointRef};
use crate::rng::stream_rng;

/// Fixed placement, then never moves.
#[derive(Debug, Clone)]
pub struct IdleRobber {
    pub placement: Placement,
}

impl RobberStrategy for IdleRobber {
    fn name(&self) -> String {
        "idle".into()
    }

    fn place(&mut self, _space: &MetricGraph, _k: usize) -> Result<Placement, StrategyError> {
        Ok(self.placement.clone())
    }

    fn respond(
        &mut self,
        _space: &MetricGraph,
        history: &[GameState],
        _tau: f64,
    ) -> Result<PointRef, StrategyError> {
        history
            .last()
            .map(|s| s.robber)
            .ok_or_else(|| StrategyError::InconsistentState("empty history".into()))
    }
}

/// Random placement of everyone, then random moves within budget.
#[derive(Debug, Clone)]
pub struct RandomRobber {
    seed: u64,
    schedule: AgilitySchedule,
    rng: ChaCha8Rng,
}

impl RandomRobber {
    pub fn new(seed: u64, schedule: AgilitySchedule) -> Self {
        RandomRobber {
            seed,
            schedule,
            rng: stream_rng(seed, "robber"),
        }
    }
}

impl RobberStrategy for RandomRobber {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn place(&mut self, space: &MetricGraph, k: usize) -> Result<Placement, StrategyError> {
        Ok(Placement {
            robber: random_point(space, &mut self.rng),
            cops: (0..k).map(|_| random_point(space, &mut self.rng)).collect(),
            schedule: self.schedule.clone(),
        })
    }

    fn respond(
        &mut self,
        space: &MetricGraph,
        history: &[GameState],
        tau: f64,
    ) -> Result<PointRef, StrategyError> {
        let here = history
            .last()
            .map(|s| s.robber)
            .ok_or_else(|| StrategyError::InconsistentState("empty history".into()))?;
        let target = random_point(space, &mut self.rng);
        let budget = tau * self.rng.random::<f64>();
        Ok(space.advance_toward(here, target, budget))
    }
}
