use crate::construct::{Charts, EdgeKind};
use crate::game::{
    Annotation, GameState, Placement, RobberStrategy, StrategyError, StrategyNotes,
};
use crate::metric::{MetricGraph, PointRef};

/// Shadow positions, one per cop, all inside the base space.
#[derive(Debug, Clone, PartialEq)]
pub struct ShadowState {
    pub shadows: Vec<PointRef>,
}

/// The accomplice's move for one shadow after its cop reached `cop_new`.
///
/// While the cop is in the base or the cylinder the shadow heads for the
/// cop's trace along the chosen geodesic of `base`, covering at most `tau`;
/// while the cop is in a top or at a cone point the shadow sits.
pub fn accomplice_update(
    shadow: PointRef,
    cop_new: PointRef,
    tau: f64,
    space: &MetricGraph,
    charts: &Charts,
    base: &MetricGraph,
) -> Result<PointRef, StrategyError> {
    if !space.contains(cop_new) || charts.vertex.len() != space.vertex_count() {
        return Err(StrategyError::MissingChart(cop_new));
    }
    let chart = charts.chart_at(space, cop_new);
    if !chart.region.is_tracked() {
        return Ok(shadow);
    }
    if !base.contains(chart.trace) || !base.contains(shadow) {
        return Err(StrategyError::MissingChart(cop_new));
    }
    Ok(base.advance_toward(shadow, chart.trace, tau))
}

/// Robber who ignores the true cops and runs `inner` on the base space
/// against shadow cops maintained by [`accomplice_update`].
pub struct ShadowRobber {
    inner: Box<dyn RobberStrategy>,
    base: MetricGraph,
    charts: Charts,
    tol: Option<f64>,
    state: ShadowState,
    inner_history: Vec<GameState>,
}

impl ShadowRobber {
    /// `base` must be the base of `space`: its vertices and edges come first
    /// in `space`, with the same ids and lengths, and carry base charts.
    pub fn new(
        inner: Box<dyn RobberStrategy>,
        space: &MetricGraph,
        charts: Charts,
        base: MetricGraph,
        tol: Option<f64>,
    ) -> Result<Self, StrategyError> {
        let bad = |why: &str| StrategyError::InconsistentState(format!("shadow base: {why}"));
        if charts.vertex.len() != space.vertex_count() || charts.edge.len() != space.edge_count() {
            return Err(bad("charts do not cover the space"));
        }
        if base.vertex_count() > space.vertex_count() || base.edge_count() > space.edge_count() {
            return Err(bad("base is larger than the space"));
        }
        for (i, e) in base.edges().iter().enumerate() {
            let f = &space.edges()[i];
            if (e.u, e.v, e.length) != (f.u, f.v, f.length) || charts.edge[i].kind != EdgeKind::Base {
                return Err(bad("edge ids differ"));
            }
        }
        Ok(ShadowRobber {
            inner,
            base,
            charts,
            tol,
            state: ShadowState {
                shadows: Vec::new(),
            },
            inner_history: Vec::new(),
        })
    }

    pub fn shadow_state(&self) -> &ShadowState {
        &self.state
    }
}

impl RobberStrategy for ShadowRobber {
    fn name(&self) -> String {
        format!("shadow({})", self.inner.name())
    }

    fn place(&mut self, _space: &MetricGraph, k: usize) -> Result<Placement, StrategyError> {
        let placement = self.inner.place(&self.base, k)?;
        self.state.shadows = placement.cops.clone();
        self.inner_history.clear();
        Ok(placement)
    }

    fn respond(
        &mut self,
        _space: &MetricGraph,
        _history: &[GameState],
        tau: f64,
    ) -> Result<PointRef, StrategyError> {
        self.inner.respond(&self.base, &self.inner_history, tau)
    }

    fn observe(&mut self, space: &MetricGraph, state: &GameState) -> Result<Annotation, StrategyError> {
        if state.n == 0 {
            self.state.shadows = state.cops.clone();
        } else {
            if state.cops.len() != self.state.shadows.len() {
                return Err(StrategyError::InconsistentState("cop count changed".into()));
            }
            for (s, &c) in self.state.shadows.iter_mut().zip(&state.cops) {
                *s = accomplice_update(*s, c, state.tau, space, &self.charts, &self.base)?;
            }
        }
        let inner_state = GameState {
            n: state.n,
            tau: state.tau,
            robber: state.robber,
            cops: self.state.shadows.clone(),
        };
        let inner = self.inner.observe(&self.base, &inner_state)?;
        self.inner_history.push(inner_state);
        Ok(Annotation {
            pretended: inner.pretended,
            shadows: Some(self.state.shadows.clone()),
        })
    }

    fn notes(&self) -> StrategyNotes {
        StrategyNotes {
            tol: self.tol,
            ..self.inner.notes()
        }
    }
}
