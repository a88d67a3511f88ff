//! Ordinal imitative dynamics for symmetric population games.
//!
//! The toolkit is built around the imitate-the-better-realization (IBR)
//! revision protocol — copy a randomly observed opponent's strategy whenever
//! the opponent's realized payoff beats your own — and the quartic mean
//! dynamics it induces on the strategy simplex. Because the rule compares
//! payoffs only by order, the dynamics is invariant under monotone payoff
//! transforms and behaves quite differently from the replicator dynamics,
//! which ships alongside for comparison.
//!
//! Modules:
//! - [`game`]: payoff matrices, simplex states, ordinal patterns, transforms;
//! - [`presets`]: the bundled catalog of named example games;
//! - [`dynamics`]: switch rates and mean-field velocities;
//! - [`analysis`]: rest points, stability, taxonomy, dominance, certificates;
//! - [`flow`]: adaptive integration, return maps, orbit verdicts;
//! - [`stochastic`]: finite-agent event chains and mean-field deviations;
//! - [`cli`]: the `ibr` command-line front end and report generators.

pub mod analysis;
pub mod cli;
pub mod dynamics;
pub mod flow;
pub mod game;
pub mod presets;
pub mod sampling;
pub mod stochastic;

pub use dynamics::{FieldKind, Velocity};
pub use game::{GameError, OrdinalPattern, PayoffMatrix, Permutation, PopulationState};
