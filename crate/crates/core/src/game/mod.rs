//! The pursuit game on a metric graph: placement by the robber player,
//! then alternating robber moves and cop responses under a shared agility
//! budget.

mod engine;
mod schedule;
mod trace;

pub use engine::{game_value, new_game, Game, MOVE_TOL};
pub use schedule::AgilitySchedule;
pub use trace::{read_trace, write_trace, GameTrace, Summary, TraceHeader, TraceStep, TRACE_FORMAT};

use serde::{Deserialize, Serialize};

use crate::discrete::SolverError;
use crate::metric::{MetricGraph, PointRef, VertexId};

/// Positions after step `n`; `tau` is the budget used to reach them (0 for
/// the initial placement).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameState {
    pub n: usize,
    pub tau: f64,
    pub robber: PointRef,
    pub cops: Vec<PointRef>,
}

/// What the robber player chooses before the first step.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    pub robber: PointRef,
    pub cops: Vec<PointRef>,
    pub schedule: AgilitySchedule,
}

/// Optional per-step fields a robber strategy exposes for verification.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Annotation {
    pub pretended: Option<Vec<VertexId>>,
    pub shadows: Option<Vec<PointRef>>,
}

/// Constants a strategy wants recorded in the trace header.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct StrategyNotes {
    /// Edge length of the component the robber plays on.
    pub ell: Option<f64>,
    /// Chosen component, 1-based.
    pub component: Option<usize>,
    /// Error budget for the shadow bound.
    pub tol: Option<f64>,
}

/// The robber player. It also places the cops and fixes the schedule.
pub trait RobberStrategy {
    fn name(&self) -> String;

    fn place(
        &mut self,
        space: &MetricGraph,
        k: usize,
    ) -> Result<Placement, StrategyError>;

    /// Destination at the step following `history.last()`, within `tau`.
    fn respond(
        &mut self,
        space: &MetricGraph,
        history: &[GameState],
        tau: f64,
    ) -> Result<PointRef, StrategyError>;

    /// Called with every completed state, the placement included.
    fn observe(
        &mut self,
        _space: &MetricGraph,
        _state: &GameState,
    ) -> Result<Annotation, StrategyError> {
        Ok(Annotation::default())
    }

    fn notes(&self) -> StrategyNotes {
        StrategyNotes::default()
    }
}

/// The cop player, who sees the robber's destination before moving.
pub trait CopStrategy {
    fn name(&self) -> String;

    /// One destination per cop, in the order of `history.last().cops`.
    fn respond(
        &mut self,
        space: &MetricGraph,
        history: &[GameState],
        robber: PointRef,
        tau: f64,
    ) -> Result<Vec<PointRef>, StrategyError>;
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StrategyError {
    #[error("no component needs more than {k} cops")]
    NoSuitableComponent { k: usize },
    #[error("inconsistent strategy state: {0}")]
    InconsistentState(String),
    #[error("no chart for point {0:?}")]
    MissingChart(PointRef),
    #[error("strategy needs the constant schedule {expected}, got step budget {got}")]
    ScheduleMismatch { expected: f64, got: f64 },
    #[error("strategy is built for {expected} cops, game has {got}")]
    CopCount { expected: usize, got: usize },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GameError {
    #[error("bad agility schedule `{0}`")]
    BadSchedule(String),
    #[error("at least one cop is required")]
    NoCops,
    #[error("bad placement: {0}")]
    BadPlacement(String),
    #[error("{agent} moved {distance} at step {step}, budget {tau}")]
    IllegalMove {
        agent: String,
        step: usize,
        distance: f64,
        tau: f64,
    },
    #[error("{agent} returned {got} positions at step {step}, expected {expected}")]
    WrongCopCount {
        agent: String,
        step: usize,
        expected: usize,
        got: usize,
    },
    #[error("{agent} returned a point outside the space at step {step}: {point:?}")]
    OffSpace {
        agent: String,
        step: usize,
        point: PointRef,
    },
    #[error("{agent} failed: {source}")]
    Strategy {
        agent: String,
        #[source]
        source: StrategyError,
    },
    #[error("game is over")]
    Finished,
    #[error("trace has no steps")]
    EmptyTrace,
    #[error("trace: {0}")]
    Trace(String),
}
