//! Celebrity games: network creation where players pay for links and are
//! penalised by the weight of players farther away than a critical distance.

pub mod analysis;
pub mod bestresponse;
pub mod equilibrium;
pub mod game;
pub mod graph;
pub mod rational;

pub use bestresponse::{BestResponse, Method, SolverError};
pub use equilibrium::{EquilibriumSet, NeCertificate};
pub use game::{CelebrityGame, GameError, StrategyProfile};
pub use graph::{Graph, VertexSet};
pub use rational::Rational;
