//! Section crossings and return maps for three-strategy flows.
//!
//! The section through a pair `(j, k)` is the locus `x_j = x_k`. Crossings
//! are detected by sign changes of `x_j - x_k` along the accepted integration
//! steps and then sharpened by bisecting the crossing time with short exact
//! re-integrations, so a crossing point is as accurate as the integrator
//! itself. Only crossings traversed in the same direction count as returns;
//! a closed orbit announces itself by consecutive returns at the same
//! distance from the start.

use crate::dynamics::{field_raw, FieldKind};
use crate::game::{PayoffMatrix, PopulationState};

use super::integrator::{integrate_steps, integrate_to_raw, IntegrationOptions};
use super::FlowError;

/// One same-direction crossing of the section.
#[derive(Debug, Clone)]
pub struct SectionCrossing {
    pub t: f64,
    pub state: PopulationState,
    /// Euclidean distance from the trajectory's start.
    pub distance: f64,
}

#[derive(Debug, Clone)]
pub struct PoincareReturns {
    pub section: (usize, usize),
    pub crossings: Vec<SectionCrossing>,
    pub requested: usize,
    /// False when the horizon ran out before `requested` returns.
    pub complete: bool,
}

impl PoincareReturns {
    pub fn distances(&self) -> Vec<f64> {
        self.crossings.iter().map(|c| c.distance).collect()
    }
}

fn section_gap(x: &[f64], section: (usize, usize)) -> f64 {
    x[section.0] - x[section.1]
}

fn section_speed(game: &PayoffMatrix, kind: FieldKind, x: &[f64], section: (usize, usize)) -> f64 {
    let v = field_raw(kind, x, game);
    v[section.0] - v[section.1]
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| (p - q) * (p - q))
        .sum::<f64>()
        .sqrt()
}

/// Collects up to `max_returns` same-direction crossings of the section
/// `x_j = x_k` along the trajectory from `x0`. Three-strategy games only.
pub fn poincare_returns(
    game: &PayoffMatrix,
    kind: FieldKind,
    x0: &PopulationState,
    section: (usize, usize),
    max_returns: usize,
    horizon: f64,
    opts: &IntegrationOptions,
) -> Result<PoincareReturns, FlowError> {
    if game.n() != 3 {
        return Err(FlowError::NotThreeStrategies(game.n()));
    }
    let (j, k) = section;
    if j >= 3 || k >= 3 || j == k {
        return Err(FlowError::BadSection(format!(
            "section needs two distinct strategies below 3, got ({j}, {k})"
        )));
    }
    if x0.n() != 3 {
        return Err(FlowError::BadInput("start state must have 3 shares".into()));
    }

    let (times, states) = integrate_steps(game, kind, x0, horizon, opts)?;
    let refine_opts = IntegrationOptions {
        abs_tol: opts.abs_tol.min(1e-12),
        ..opts.clone()
    };

    // reference crossing direction: fixed by the start when it sits on the
    // section, otherwise by the first crossing observed
    let mut reference: Option<f64> = None;
    if section_gap(x0.as_slice(), section).abs() <= 1e-12 {
        let speed = section_speed(game, kind, x0.as_slice(), section);
        if speed != 0.0 {
            reference = Some(speed.signum());
        }
    }

    let mut crossings = Vec::new();
    for w in 1..times.len() {
        if crossings.len() == max_returns {
            break;
        }
        let (t_a, t_b) = (times[w - 1], times[w]);
        let (x_a, x_b) = (&states[w - 1], &states[w]);
        let s_a = section_gap(x_a, section);
        let s_b = section_gap(x_b, section);
        let has_crossing = (s_a != 0.0 && s_b == 0.0) || s_a * s_b < 0.0;
        if !has_crossing {
            continue;
        }

        // bisect the crossing time with exact re-integrations from x_a
        let span = t_b - t_a;
        let (mut lo, mut hi) = (0.0f64, span);
        let mut g_lo = s_a;
        for _ in 0..60 {
            if hi - lo <= 1e-13 * span.max(1e-6) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let probe = integrate_to_raw(game, kind, x_a, mid, &refine_opts)?;
            let g_mid = section_gap(&probe, section);
            if g_mid == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if g_lo * g_mid < 0.0 {
                hi = mid;
            } else {
                lo = mid;
                g_lo = g_mid;
            }
        }
        let delta = 0.5 * (lo + hi);
        let hit = integrate_to_raw(game, kind, x_a, delta, &refine_opts)?;

        let direction = section_speed(game, kind, &hit, section).signum();
        let dir_ref = *reference.get_or_insert(direction);
        if direction != dir_ref {
            continue;
        }
        crossings.push(SectionCrossing {
            t: t_a + delta,
            distance: euclid(&hit, x0.as_slice()),
            state: PopulationState::from_normalized(hit),
        });
    }

    let complete = crossings.len() >= max_returns;
    Ok(PoincareReturns {
        section,
        crossings,
        requested: max_returns,
        complete,
    })
}
