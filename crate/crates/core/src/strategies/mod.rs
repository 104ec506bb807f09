//! Robber and cop strategies: the pretended-position robber, the
//! shadow-cop robber, and baseline cops and robbers.

mod cops;
mod locate;
mod pretend;
mod robbers;
mod shadow;

pub use cops::{GreedyCops, LiftedCops, RandomCops};
pub use locate::{ComponentLocator, Location};
pub use pretend::{component_graph, pretend_position, pretend_update, PretendRobber, PretendState};
pub use robbers::{IdleRobber, RandomRobber};
pub use shadow::{accomplice_update, ShadowRobber, ShadowState};
