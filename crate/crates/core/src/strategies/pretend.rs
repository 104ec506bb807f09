use super::locate::{ComponentLocator, Location};
use crate::construct::{ComponentEmbedding, WedgeSpace};
use crate::discrete::{k_copwin, DiscreteGraph, DiscreteState, StrategyTable, Turn};
use crate::game::{
    AgilitySchedule, Annotation, GameState, Placement, RobberStrategy, StrategyError,
    StrategyNotes,
};
use crate::metric::{MetricGraph, PointRef, TOL};

/// Relative slack for recognising an edge midpoint.
const MIDPOINT_REL: f64 = 1e-12;

/// Vertices of the chosen component that the robber pretends the cops
/// occupy.
#[derive(Debug, Clone, PartialEq)]
pub struct PretendState {
    /// Chosen component, 1-based.
    pub component: usize,
    /// Discrete vertex per cop.
    pub pretended: Vec<u32>,
    /// Edge length of the chosen component.
    pub ell: f64,
}

/// Pretended position of one cop now at `x`, given its previous pretended
/// vertex `prev`.
///
/// Outside the component the cop idles at the hub; inside an edge it sits
/// at the closer endpoint, except at the exact midpoint, where it moves to
/// the last component vertex strictly inside the chosen geodesic from
/// `prev` to `x`, or stays at `prev` if there is none.
pub fn pretend_position(
    space: &MetricGraph,
    locator: &ComponentLocator,
    prev: u32,
    x: PointRef,
) -> u32 {
    match locator.locate(space, x) {
        Location::Outside => locator.hub(),
        Location::Vertex(d) => d,
        Location::Chain { chain, s } => {
            let half = locator.chain_length(chain) / 2.0;
            let (a, b) = locator.chain_ends(chain);
            if (s - half).abs() > MIDPOINT_REL * half {
                return if s < half { a } else { b };
            }
            let path = space.geodesic_unchecked(PointRef::Vertex(locator.vertex(prev)), x);
            path.interior_vertices()
                .filter_map(|v| locator.discrete_of(v))
                .last()
                .unwrap_or(prev)
        }
    }
}

/// Apply [`pretend_position`] to every cop.
pub fn pretend_update(
    prev: &PretendState,
    cops: &[PointRef],
    space: &MetricGraph,
    locator: &ComponentLocator,
) -> Result<PretendState, StrategyError> {
    let n = locator.embedding().vertices.len() as u32;
    if prev.pretended.len() != cops.len() || prev.pretended.iter().any(|&p| p >= n) {
        return Err(StrategyError::InconsistentState(format!(
            "{} pretended positions for {} cops",
            prev.pretended.len(),
            cops.len()
        )));
    }
    Ok(PretendState {
        pretended: prev
            .pretended
            .iter()
            .zip(cops)
            .map(|(&p, &c)| pretend_position(space, locator, p, c))
            .collect(),
        ..prev.clone()
    })
}

/// The discrete graph drawn by an embedding.
pub fn component_graph(embedding: &ComponentEmbedding) -> Result<DiscreteGraph, StrategyError> {
    Ok(DiscreteGraph::new(
        embedding.vertices.len(),
        &embedding.discrete_edges(),
    )?)
}

/// Robber who plays a discrete winning strategy on one component against
/// the cops' pretended positions.
#[derive(Debug, Clone)]
pub struct PretendRobber {
    locator: ComponentLocator,
    component: usize,
    table: Option<StrategyTable>,
    k: usize,
    ell: f64,
    state: Option<PretendState>,
    robber: u32,
}

impl PretendRobber {
    /// Pick the first component whose discrete cop number exceeds `k`.
    pub fn new(
        space: &MetricGraph,
        components: &[ComponentEmbedding],
        k: usize,
        budget: u64,
    ) -> Result<Self, StrategyError> {
        for (i, emb) in components.iter().enumerate() {
            let table = if k == 0 {
                None
            } else {
                let (cops_win, table) = k_copwin(&component_graph(emb)?, k, budget)?;
                if cops_win {
                    continue;
                }
                Some(table)
            };
            return Self::with_table(space, emb, i + 1, table, k);
        }
        Err(StrategyError::NoSuitableComponent { k })
    }

    pub fn from_wedge(wedge: &WedgeSpace, k: usize, budget: u64) -> Result<Self, StrategyError> {
        Self::new(&wedge.graph, &wedge.components, k, budget)
    }

    /// Use a solved table directly; it must be robber-winning for `k` cops.
    pub fn with_table(
        space: &MetricGraph,
        embedding: &ComponentEmbedding,
        component: usize,
        table: Option<StrategyTable>,
        k: usize,
    ) -> Result<Self, StrategyError> {
        let locator = ComponentLocator::new(space, embedding)?;
        let ell = embedding.uniform_edge_length(space).ok_or_else(|| {
            StrategyError::InconsistentState("component edges differ in length".into())
        })?;
        if let Some(t) = &table {
            if t.cop_count() != k {
                return Err(StrategyError::CopCount {
                    expected: t.cop_count(),
                    got: k,
                });
            }
            if t.graph().vertex_count() != embedding.vertices.len() || t.cops_win() {
                return Err(StrategyError::InconsistentState(
                    "table does not describe a robber win on this component".into(),
                ));
            }
        }
        Ok(PretendRobber {
            robber: locator.hub(),
            locator,
            component,
            table,
            k,
            ell,
            state: None,
        })
    }

    pub fn component(&self) -> usize {
        self.component
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn locator(&self) -> &ComponentLocator {
        &self.locator
    }

    pub fn pretend_state(&self) -> Option<&PretendState> {
        self.state.as_ref()
    }
}

impl RobberStrategy for PretendRobber {
    fn name(&self) -> String {
        "pretend".into()
    }

    fn place(&mut self, _space: &MetricGraph, k: usize) -> Result<Placement, StrategyError> {
        if k != self.k {
            return Err(StrategyError::CopCount {
                expected: self.k,
                got: k,
            });
        }
        let hub = self.locator.hub();
        let cops = vec![hub; k];
        self.robber = match &self.table {
            None => hub,
            Some(t) => t.robber_placement(&cops)?.ok_or_else(|| {
                StrategyError::InconsistentState("no surviving robber start".into())
            })?,
        };
        self.state = None;
        Ok(Placement {
            robber: PointRef::Vertex(self.locator.vertex(self.robber)),
            cops: vec![PointRef::Vertex(self.locator.vertex(hub)); k],
            schedule: AgilitySchedule::Constant(self.ell),
        })
    }

    fn respond(
        &mut self,
        _space: &MetricGraph,
        _history: &[GameState],
        tau: f64,
    ) -> Result<PointRef, StrategyError> {
        if (tau - self.ell).abs() > TOL {
            return Err(StrategyError::ScheduleMismatch {
                expected: self.ell,
                got: tau,
            });
        }
        let state = self
            .state
            .as_ref()
            .ok_or_else(|| StrategyError::InconsistentState("no observed state".into()))?;
        if let Some(t) = &self.table {
            self.robber = t.robber_move(&DiscreteState {
                cops: state.pretended.clone(),
                robber: self.robber,
                turn: Turn::Robber,
            })?;
        }
        Ok(PointRef::Vertex(self.locator.vertex(self.robber)))
    }

    fn observe(&mut self, space: &MetricGraph, state: &GameState) -> Result<Annotation, StrategyError> {
        let prev = match self.state.take() {
            Some(s) if state.n > 0 => s,
            _ => PretendState {
                component: self.component,
                pretended: vec![self.locator.hub(); state.cops.len()],
                ell: self.ell,
            },
        };
        let next = pretend_update(&prev, &state.cops, space, &self.locator)?;
        let ann = Annotation {
            pretended: Some(next.pretended.iter().map(|&d| self.locator.vertex(d)).collect()),
            shadows: None,
        };
        self.state = Some(next);
        Ok(ann)
    }

    fn notes(&self) -> StrategyNotes {
        StrategyNotes {
            ell: Some(self.ell),
            component: Some(self.component),
            tol: None,
        }
    }
}
