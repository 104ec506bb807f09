//! Exact solver for the classical Cops and Robber game on finite graphs.

mod dismantle;
mod graph;
mod solver;
mod source;

pub use dismantle::is_dismantlable;
pub use graph::DiscreteGraph;
pub use solver::{
    cop_number_discrete, k_copwin, DiscreteState, StrategyTable, TableFile, Turn,
    DEFAULT_BUDGET,
};
pub use source::{parse_edge_list, EdgeList, GraphSpec};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolverError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("unknown vertex {0}")]
    UnknownVertex(u32),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("bad generator: {0}")]
    BadGenerator(String),
    #[error("edge list line {line}: {reason}")]
    BadEdgeList { line: usize, reason: String },
    #[error("{states} states exceed the budget of {budget}")]
    BudgetExceeded { states: u64, budget: u64 },
    #[error("state not in table: {0}")]
    UnknownState(String),
    #[error("state has the other side to move")]
    WrongTurn,
    #[error("at least one cop is required")]
    NoCops,
}
