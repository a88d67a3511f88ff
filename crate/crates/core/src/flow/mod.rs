//! Trajectories of the mean dynamics: integration, conserved quantities,
//! return maps, and orbit verdicts.

mod integrator;
mod poincare;

pub use integrator::{integrate, integrate_to, IntegrationOptions};
pub use poincare::{poincare_returns, PoincareReturns, SectionCrossing};

use thiserror::Error;

use crate::dynamics::FieldKind;
use crate::game::{PayoffMatrix, PopulationState};
use crate::sampling;

/// Two consecutive returns closer than this certify a closed orbit.
pub const ORBIT_TOL: f64 = 1e-6;
/// Default cutoff share below which a strategy counts as extinct in probes.
pub const SURVIVAL_THRESHOLD: f64 = 1e-3;
/// Default integration horizon for orbit classification.
pub const CLASSIFY_HORIZON: f64 = 200.0;
/// Default integration horizon for elimination and survival probes.
pub const PROBE_HORIZON: f64 = 500.0;

#[derive(Debug, Error)]
pub enum FlowError {
    #[error("integration step fell below the minimum at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("integration step fell below the minimum at t = {t}; partial trajectory attached")]
    StepUnderflowPartial { t: f64, partial: Box<Trajectory> },
    #[error("section analysis requires a 3-strategy game, got n = {0}")]
    NotThreeStrategies(usize),
    #[error("strategy {0} has zero share; the relative-entropy potential needs interior states")]
    ZeroCoordinate(usize),
    #[error("output grids do not match: {0}")]
    GridMismatch(String),
    #[error("orbit evidence is ambiguous: {0}")]
    AmbiguousOrbit(String),
    #[error("bad section: {0}")]
    BadSection(String),
    #[error("bad input: {0}")]
    BadInput(String),
}

/// Time-stamped simplex states produced by integration or simulation.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PopulationState>,
    pub kind: FieldKind,
    pub game: PayoffMatrix,
}

impl Trajectory {
    /// Builds a trajectory from parts, enforcing strictly increasing times
    /// and matching lengths.
    pub fn from_parts(
        times: Vec<f64>,
        states: Vec<PopulationState>,
        kind: FieldKind,
        game: PayoffMatrix,
    ) -> Result<Self, FlowError> {
        if times.len() != states.len() || times.is_empty() {
            return Err(FlowError::BadInput(format!(
                "{} times against {} states",
                times.len(),
                states.len()
            )));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(FlowError::BadInput("times must be strictly increasing".into()));
        }
        Ok(Trajectory {
            times,
            states,
            kind,
            game,
        })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &PopulationState {
        self.states.last().unwrap()
    }

    /// Largest deviation of any recorded state's mass from one.
    pub fn conservation_defect(&self) -> f64 {
        self.states
            .iter()
            .map(|s| (s.as_slice().iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Relative-entropy potential `sum_i x*_i log(x_i / x*_i)`. Nonpositive, zero
/// exactly at `x = x*`, and constant along cyclic-game solutions whose field
/// is a rescaled replicator field.
pub fn lyapunov_h(x: &PopulationState, xstar: &PopulationState) -> Result<f64, FlowError> {
    if x.n() != xstar.n() {
        return Err(FlowError::BadInput(format!(
            "state sizes differ: {} vs {}",
            x.n(),
            xstar.n()
        )));
    }
    let mut h = 0.0;
    for i in 0..x.n() {
        if x.share(i) == 0.0 || xstar.share(i) == 0.0 {
            return Err(FlowError::ZeroCoordinate(i));
        }
        h += xstar.share(i) * (x.share(i) / xstar.share(i)).ln();
    }
    Ok(h)
}

/// What a trajectory ended up doing.
#[derive(Debug, Clone, PartialEq)]
pub enum OrbitKind {
    ClosedOrbit { period: f64 },
    InwardSpiral,
    OutwardSpiral,
    Converged { rest_point: PopulationState },
    ReachedBoundary { extinct: Vec<usize> },
}

impl std::fmt::Display for OrbitKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrbitKind::ClosedOrbit { period } => write!(f, "closed_orbit(period~{period:.6})"),
            OrbitKind::InwardSpiral => write!(f, "inward_spiral"),
            OrbitKind::OutwardSpiral => write!(f, "outward_spiral"),
            OrbitKind::Converged { rest_point } => write!(f, "converged{rest_point}"),
            OrbitKind::ReachedBoundary { extinct } => {
                let labels: Vec<String> =
                    extinct.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "reached_boundary(extinct: {})", labels.join(","))
            }
        }
    }
}

/// Verdict plus the return-distance evidence it was based on.
#[derive(Debug, Clone)]
pub struct OrbitVerdict {
    pub kind: OrbitKind,
    pub return_distances: Vec<f64>,
}

/// Classifies a trajectory's long-run behavior from its Poincaré returns and
/// its tail. Convergence to a known rest point is checked first so that
/// trajectories into a vertex report convergence rather than mere boundary
/// contact; ambiguous evidence is an error, not a guess.
pub fn orbit_classify(
    returns: &PoincareReturns,
    trajectory: &Trajectory,
    rest_points: &[PopulationState],
) -> Result<OrbitVerdict, FlowError> {
    let distances = returns.distances();
    let last = trajectory.final_state();

    for rp in rest_points {
        let dist = last
            .as_slice()
            .iter()
            .zip(rp.as_slice())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        if dist <= 1e-7 {
            return Ok(OrbitVerdict {
                kind: OrbitKind::Converged {
                    rest_point: rp.clone(),
                },
                return_distances: distances,
            });
        }
    }

    let extinct: Vec<usize> = (0..last.n()).filter(|&i| last.share(i) < 1e-9).collect();
    if !extinct.is_empty() {
        return Ok(OrbitVerdict {
            kind: OrbitKind::ReachedBoundary { extinct },
            return_distances: distances,
        });
    }

    if distances.len() >= 2 {
        let l = distances.len();
        if (distances[l - 1] - distances[l - 2]).abs() <= ORBIT_TOL {
            let period = returns.crossings[l - 1].t - returns.crossings[l - 2].t;
            return Ok(OrbitVerdict {
                kind: OrbitKind::ClosedOrbit { period },
                return_distances: distances,
            });
        }
    }
    if distances.len() >= 3 {
        if distances.windows(2).all(|w| w[1] < w[0]) {
            return Ok(OrbitVerdict {
                kind: OrbitKind::InwardSpiral,
                return_distances: distances,
            });
        }
        if distances.windows(2).all(|w| w[1] > w[0]) {
            return Ok(OrbitVerdict {
                kind: OrbitKind::OutwardSpiral,
                return_distances: distances,
            });
        }
    }
    Err(FlowError::AmbiguousOrbit(format!(
        "{} returns with distances {:?}",
        distances.len(),
        distances
    )))
}

/// Fraction of quasi-random interior starts from which strategy `i` still
/// holds more than `threshold` mass at the horizon. Deterministic: the start
/// panel is a fixed low-discrepancy sequence.
pub fn survival_probe(
    game: &PayoffMatrix,
    kind: FieldKind,
    strategy: usize,
    starts: usize,
    horizon: f64,
    threshold: f64,
    opts: &IntegrationOptions,
) -> Result<f64, FlowError> {
    if strategy >= game.n() {
        return Err(FlowError::BadInput(format!(
            "strategy {strategy} out of range for n = {}",
            game.n()
        )));
    }
    let mut alive = 0usize;
    for x0 in sampling::interior_states(game.n(), starts) {
        let end = integrate_to(game, kind, &x0, horizon, opts)?;
        if end.share(strategy) > threshold {
            alive += 1;
        }
    }
    Ok(alive as f64 / starts as f64)
}
