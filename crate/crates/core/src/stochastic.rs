//! Finite populations of imitating agents.
//!
//! N agents each carry a rate-1 revision clock, so events arrive at rate N
//! with exponential gaps. At an event the reviser observes one candidate and
//! copies the candidate's strategy iff the candidate's realized payoff beats
//! the reviser's own realized payoff. Both realized payoffs come from
//! independent matches drawn with replacement from the population; only the
//! candidate draw can exclude the reviser itself.
//!
//! With self-exclusion on, the expected per-event increment is exactly
//! `N/(N-1)` times the mean field at `counts/N`; without it the two agree
//! exactly. Runs are deterministic per seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dynamics::FieldKind;
use crate::flow::{FlowError, Trajectory};
use crate::game::{PayoffMatrix, PopulationState};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("need at least 2 agents, got {0}")]
    TooFewAgents(usize),
    #[error("bad simulation input: {0}")]
    BadInput(String),
    #[error("output grids do not match: {0}")]
    GridMismatch(String),
    #[error(transparent)]
    Flow(#[from] FlowError),
}

/// Integer strategy counts for a finite agent population.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentPopulation {
    counts: Vec<usize>,
}

impl AgentPopulation {
    pub fn new(counts: Vec<usize>) -> Result<Self, SimError> {
        let total: usize = counts.iter().sum();
        if total < 2 {
            return Err(SimError::TooFewAgents(total));
        }
        if counts.len() < 2 {
            return Err(SimError::BadInput(format!(
                "need at least 2 strategies, got {}",
                counts.len()
            )));
        }
        Ok(AgentPopulation { counts })
    }

    /// Rounds shares to integer counts summing to `n_agents` (largest
    /// remainder method, ties to the lowest index).
    pub fn from_shares(n_agents: usize, shares: &PopulationState) -> Result<Self, SimError> {
        if n_agents < 2 {
            return Err(SimError::TooFewAgents(n_agents));
        }
        let n = shares.n();
        let ideal: Vec<f64> = (0..n).map(|i| shares.share(i) * n_agents as f64).collect();
        let mut counts: Vec<usize> = ideal.iter().map(|v| v.floor() as usize).collect();
        let mut short = n_agents - counts.iter().sum::<usize>();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            let ra = ideal[a] - ideal[a].floor();
            let rb = ideal[b] - ideal[b].floor();
            rb.partial_cmp(&ra).unwrap().then(a.cmp(&b))
        });
        for &i in order.iter().cycle() {
            if short == 0 {
                break;
            }
            counts[i] += 1;
            short -= 1;
        }
        AgentPopulation::new(counts)
    }

    pub fn n_strategies(&self) -> usize {
        self.counts.len()
    }

    pub fn n_agents(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn count(&self, i: usize) -> usize {
        self.counts[i]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Empirical state `counts / N`.
    pub fn shares(&self) -> PopulationState {
        let total = self.n_agents() as f64;
        PopulationState::from_normalized(
            self.counts.iter().map(|&c| c as f64 / total).collect(),
        )
    }

    /// Maps a uniform agent index to its strategy.
    fn strategy_of(&self, mut agent: usize) -> usize {
        for (s, &c) in self.counts.iter().enumerate() {
            if agent < c {
                return s;
            }
            agent -= c;
        }
        unreachable!("agent index out of range")
    }

    /// Same, with one agent of strategy `excluded` removed from the pool.
    fn strategy_of_excluding(&self, mut agent: usize, excluded: usize) -> usize {
        for (s, &c) in self.counts.iter().enumerate() {
            let c = if s == excluded { c - 1 } else { c };
            if agent < c {
                return s;
            }
            agent -= c;
        }
        unreachable!("agent index out of range")
    }
}

/// Simulation parameters. `output_grid` counts the samples on `[0, horizon]`
/// including both endpoints; `self_exclusion` removes the reviser itself from
/// the candidate pool.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub seed: u64,
    pub n_agents: usize,
    pub horizon: f64,
    pub output_grid: usize,
    pub self_exclusion: bool,
}

impl SimConfig {
    pub fn new(seed: u64, n_agents: usize, horizon: f64) -> Self {
        SimConfig {
            seed,
            n_agents,
            horizon,
            output_grid: 1000,
            self_exclusion: true,
        }
    }
}

/// One revision event. Draw order: reviser, reviser's match, candidate,
/// candidate's match. Returns the executed switch, if any.
pub fn revise_once(
    pop: &mut AgentPopulation,
    game: &PayoffMatrix,
    rng: &mut impl Rng,
    self_exclusion: bool,
) -> Option<(usize, usize)> {
    let n_agents = pop.n_agents();
    let reviser = pop.strategy_of(rng.gen_range(0..n_agents));
    let own_match = pop.strategy_of(rng.gen_range(0..n_agents));
    let candidate = if self_exclusion {
        pop.strategy_of_excluding(rng.gen_range(0..n_agents - 1), reviser)
    } else {
        pop.strategy_of(rng.gen_range(0..n_agents))
    };
    let candidate_match = pop.strategy_of(rng.gen_range(0..n_agents));

    if game.payoff(candidate, candidate_match) > game.payoff(reviser, own_match) {
        pop.counts[reviser] -= 1;
        pop.counts[candidate] += 1;
        if candidate != reviser {
            return Some((reviser, candidate));
        }
    }
    None
}

/// Runs the event chain from `initial`, recording the empirical state on the
/// fixed output grid. Deterministic per `config.seed`.
pub fn simulate(
    config: &SimConfig,
    game: &PayoffMatrix,
    initial: &AgentPopulation,
) -> Result<Trajectory, SimError> {
    if initial.n_strategies() != game.n() {
        return Err(SimError::BadInput(format!(
            "population has {} strategies but the game has {}",
            initial.n_strategies(),
            game.n()
        )));
    }
    if initial.n_agents() != config.n_agents {
        return Err(SimError::BadInput(format!(
            "population holds {} agents, config says {}",
            initial.n_agents(),
            config.n_agents
        )));
    }
    if !(config.horizon > 0.0) {
        return Err(SimError::BadInput(format!(
            "horizon must be positive, got {}",
            config.horizon
        )));
    }
    if config.output_grid < 2 {
        return Err(SimError::BadInput("need at least 2 output samples".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let rate = config.n_agents as f64;
    let mut pop = initial.clone();
    let mut next_event = exponential_gap(&mut rng) / rate;

    let grid = config.output_grid;
    let mut times = Vec::with_capacity(grid);
    let mut states = Vec::with_capacity(grid);
    for g in 0..grid {
        let tg = config.horizon * g as f64 / (grid - 1) as f64;
        while next_event <= tg {
            revise_once(&mut pop, game, &mut rng, config.self_exclusion);
            next_event += exponential_gap(&mut rng) / rate;
        }
        times.push(tg);
        states.push(pop.shares());
    }
    Ok(Trajectory::from_parts(times, states, FieldKind::Ibr, game.clone())?)
}

fn exponential_gap(rng: &mut impl Rng) -> f64 {
    -(1.0 - rng.gen::<f64>()).ln()
}

/// Largest empirical-vs-deterministic gap over a shared output grid.
#[derive(Debug, Clone)]
pub struct DeviationReport {
    pub sup_gap: f64,
    pub t_at_sup: f64,
    pub per_strategy: Vec<f64>,
}

/// Compares two trajectories sample by sample; the grids must agree.
pub fn deviation_report(
    empirical: &Trajectory,
    deterministic: &Trajectory,
) -> Result<DeviationReport, SimError> {
    if empirical.len() != deterministic.len() {
        return Err(SimError::GridMismatch(format!(
            "{} samples vs {}",
            empirical.len(),
            deterministic.len()
        )));
    }
    let n = empirical.states[0].n();
    if n != deterministic.states[0].n() {
        return Err(SimError::GridMismatch("strategy counts differ".into()));
    }
    for (a, b) in empirical.times.iter().zip(&deterministic.times) {
        if (a - b).abs() > 1e-12 {
            return Err(SimError::GridMismatch(format!("times {a} vs {b}")));
        }
    }
    let mut sup_gap = 0.0;
    let mut t_at_sup = empirical.times[0];
    let mut per_strategy = vec![0.0; n];
    for (idx, t) in empirical.times.iter().enumerate() {
        let e = empirical.states[idx].as_slice();
        let d = deterministic.states[idx].as_slice();
        for i in 0..n {
            let gap = (e[i] - d[i]).abs();
            if gap > per_strategy[i] {
                per_strategy[i] = gap;
            }
            if gap > sup_gap {
                sup_gap = gap;
                t_at_sup = *t;
            }
        }
    }
    Ok(DeviationReport {
        sup_gap,
        t_at_sup,
        per_strategy,
    })
}
