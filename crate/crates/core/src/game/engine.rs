use super::{
    AgilitySchedule, Annotation, CopStrategy, GameError, GameState, GameTrace, RobberStrategy,
    TraceHeader, TraceStep, TRACE_FORMAT,
};
use crate::metric::{MetricGraph, PointRef};

/// Slack allowed on top of the step budget.
pub const MOVE_TOL: f64 = 1e-9;

/// A game in progress. Holds no shared mutable state, so separate games may
/// run on separate threads over the same space.
pub struct Game<'a> {
    space: &'a MetricGraph,
    robber: Box<dyn RobberStrategy + 'a>,
    cops: Box<dyn CopStrategy + 'a>,
    schedule: AgilitySchedule,
    history: Vec<GameState>,
    trace: GameTrace,
}

/// Ask the robber player for the initial placement and schedule and record
/// the placement as step 0.
pub fn new_game<'a>(
    space: &'a MetricGraph,
    k: usize,
    mut robber: Box<dyn RobberStrategy + 'a>,
    cops: Box<dyn CopStrategy + 'a>,
    max_steps: usize,
    capture_eps: Vec<f64>,
) -> Result<Game<'a>, GameError> {
    if k == 0 {
        return Err(GameError::NoCops);
    }
    let placement = robber.place(space, k).map_err(|source| GameError::Strategy {
        agent: robber.name(),
        source,
    })?;
    if placement.cops.len() != k {
        return Err(GameError::BadPlacement(format!(
            "{} cops placed, {k} in play",
            placement.cops.len()
        )));
    }
    for p in std::iter::once(&placement.robber).chain(&placement.cops) {
        if !space.contains(*p) {
            return Err(GameError::BadPlacement(format!("{p:?} is not in the space")));
        }
    }
    let header = TraceHeader {
        format: TRACE_FORMAT.to_owned(),
        k,
        robber: robber.name(),
        cops: cops.name(),
        schedule: placement.schedule.clone(),
        max_steps,
        capture_eps,
        seed: None,
        notes: robber.notes(),
    };
    let mut game = Game {
        space,
        robber,
        cops,
        schedule: placement.schedule,
        history: Vec::new(),
        trace: GameTrace {
            header,
            steps: Vec::new(),
        },
    };
    game.record(GameState {
        n: 0,
        tau: 0.0,
        robber: placement.robber,
        cops: placement.cops,
    })?;
    Ok(game)
}

impl<'a> Game<'a> {
    pub fn set_seed(&mut self, seed: u64) {
        self.trace.header.seed = Some(seed);
    }

    pub fn schedule(&self) -> &AgilitySchedule {
        &self.schedule
    }

    pub fn history(&self) -> &[GameState] {
        &self.history
    }

    pub fn trace(&self) -> &GameTrace {
        &self.trace
    }

    pub fn into_trace(self) -> GameTrace {
        self.trace
    }

    pub fn is_over(&self) -> bool {
        self.trace.captured() || self.history.len() > self.trace.header.max_steps
    }

    fn record(&mut self, state: GameState) -> Result<(), GameError> {
        let Annotation { pretended, shadows } =
            self.robber
                .observe(self.space, &state)
                .map_err(|source| GameError::Strategy {
                    agent: self.robber.name(),
                    source,
                })?;
        let dists: Vec<f64> = state
            .cops
            .iter()
            .map(|&c| self.space.dist(c, state.robber))
            .collect();
        let min_dist = dists.iter().copied().fold(f64::INFINITY, f64::min);
        let value = self.trace.value().map_or(min_dist, |v| v.min(min_dist));
        self.trace.steps.push(TraceStep {
            n: state.n,
            tau: state.tau,
            robber: state.robber,
            cops: state.cops.clone(),
            min_dist,
            value,
            captured: dists.contains(&0.0),
            pretended,
            shadows,
        });
        self.history.push(state);
        Ok(())
    }

    fn check_move(
        &self,
        agent: &str,
        step: usize,
        from: PointRef,
        to: PointRef,
        tau: f64,
    ) -> Result<(), GameError> {
        if !self.space.contains(to) {
            return Err(GameError::OffSpace {
                agent: agent.to_owned(),
                step,
                point: to,
            });
        }
        let distance = self.space.dist(from, to);
        if distance > tau + MOVE_TOL {
            return Err(GameError::IllegalMove {
                agent: agent.to_owned(),
                step,
                distance,
                tau,
            });
        }
        Ok(())
    }

    /// Robber moves, the destination is revealed, then every cop moves.
    pub fn step(&mut self) -> Result<&TraceStep, GameError> {
        if self.is_over() {
            return Err(GameError::Finished);
        }
        let prev = self.history.last().expect("placement recorded").clone();
        let n = prev.n + 1;
        let tau = self.schedule.tau(n);
        let robber_name = self.robber.name();
        let robber = self
            .robber
            .respond(self.space, &self.history, tau)
            .map_err(|source| GameError::Strategy {
                agent: robber_name.clone(),
                source,
            })?;
        self.check_move(&robber_name, n, prev.robber, robber, tau)?;
        let cop_name = self.cops.name();
        let cops = self
            .cops
            .respond(self.space, &self.history, robber, tau)
            .map_err(|source| GameError::Strategy {
                agent: cop_name.clone(),
                source,
            })?;
        if cops.len() != prev.cops.len() {
            return Err(GameError::WrongCopCount {
                agent: cop_name,
                step: n,
                expected: prev.cops.len(),
                got: cops.len(),
            });
        }
        for (i, (&from, &to)) in prev.cops.iter().zip(&cops).enumerate() {
            self.check_move(&format!("{cop_name}[{i}]"), n, from, to, tau)?;
        }
        self.record(GameState {
            n,
            tau,
            robber,
            cops,
        })?;
        Ok(self.trace.steps.last().expect("just recorded"))
    }

    /// Step until capture or the horizon.
    pub fn run(mut self) -> Result<GameTrace, GameError> {
        while !self.is_over() {
            self.step()?;
        }
        Ok(self.trace)
    }
}

/// Minimum over recorded steps of the closest cop distance.
pub fn game_value(trace: &GameTrace) -> Result<f64, GameError> {
    trace
        .steps
        .iter()
        .map(|s| s.min_dist)
        .reduce(f64::min)
        .ok_or(GameError::EmptyTrace)
}
