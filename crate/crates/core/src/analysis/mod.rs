//! Rest-point location and stability, the two-strategy taxonomy, dominance
//! elimination, and sampling-based structural certificates.

mod certificates;
mod dominance;
mod rest_points;
mod two_strategy;

pub use certificates::{
    self_negation_witness, strict_equilibrium_inflow_check, SELF_NEGATION_STATES,
    SELF_NEGATION_TOL,
};
pub use dominance::{
    growth_rate_gap, iterated_elimination, strictly_dominated_pairs, weakly_dominated_pairs,
    EliminationRound, EliminationTrace,
};
pub use rest_points::{
    classify_rest_point, find_rest_points, reduced_jacobian, ReducedJacobian, RestPointReport,
    RestPointScan, StabilityClass, HYPERBOLICITY_TOL,
};
pub use two_strategy::{catalog, classify_two_strategy, CatalogEntry, DynamicsRow, TwoStrategyClass};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("face enumeration supports at most 6 strategies, got {0}")]
    TooManyStrategies(usize),
    #[error("operation requires a 2-strategy game, got n = {0}")]
    NotTwoStrategies(usize),
    #[error("strategy {0} has zero share; growth rates need interior states")]
    ZeroShare(usize),
    #[error("({0}, {0}) is not a strict equilibrium")]
    NotStrictEquilibrium(usize),
    #[error(transparent)]
    Dynamics(#[from] crate::dynamics::DynamicsError),
}
