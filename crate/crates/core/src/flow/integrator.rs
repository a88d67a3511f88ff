//! Adaptive integration of the mean dynamics on the simplex.
//!
//! Classic fourth-order Runge-Kutta with step-doubling error control: each
//! step is computed once at `h` and twice at `h/2`, the discrepancy drives
//! acceptance and the next step size, and the two-half-step state is the one
//! kept. After every accepted step the state is renormalized to unit sum.
//! Coordinates that begin a step at exactly zero stay exactly zero, so faces
//! of the simplex are invariant; interior coordinates may become arbitrarily
//! small but a negative overshoot rejects the step.

use crate::dynamics::{field_raw, FieldKind};
use crate::game::{PayoffMatrix, PopulationState};

use super::{FlowError, Trajectory};

#[derive(Debug, Clone)]
pub struct IntegrationOptions {
    /// Per-component absolute tolerance on the step-doubling discrepancy.
    pub abs_tol: f64,
    pub init_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    /// Samples on the fixed output grid (endpoints included).
    pub output_samples: usize,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        IntegrationOptions {
            abs_tol: 1e-10,
            init_step: 1e-3,
            min_step: 1e-12,
            max_step: 0.1,
            output_samples: 1000,
        }
    }
}

impl IntegrationOptions {
    pub fn with_tol(abs_tol: f64) -> Self {
        IntegrationOptions {
            abs_tol,
            ..Default::default()
        }
    }
}

pub(crate) struct Stepper<'a> {
    game: &'a PayoffMatrix,
    kind: FieldKind,
    abs_tol: f64,
    min_step: f64,
    max_step: f64,
    pub t: f64,
    pub x: Vec<f64>,
    h: f64,
}

fn rk4(game: &PayoffMatrix, kind: FieldKind, x: &[f64], h: f64) -> Vec<f64> {
    let n = x.len();
    let k1 = field_raw(kind, x, game);
    let mid1: Vec<f64> = (0..n).map(|i| x[i] + 0.5 * h * k1[i]).collect();
    let k2 = field_raw(kind, &mid1, game);
    let mid2: Vec<f64> = (0..n).map(|i| x[i] + 0.5 * h * k2[i]).collect();
    let k3 = field_raw(kind, &mid2, game);
    let end: Vec<f64> = (0..n).map(|i| x[i] + h * k3[i]).collect();
    let k4 = field_raw(kind, &end, game);
    (0..n)
        .map(|i| x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect()
}

impl<'a> Stepper<'a> {
    pub fn new(
        game: &'a PayoffMatrix,
        kind: FieldKind,
        x0: Vec<f64>,
        opts: &IntegrationOptions,
    ) -> Self {
        Stepper {
            game,
            kind,
            abs_tol: opts.abs_tol,
            min_step: opts.min_step,
            max_step: opts.max_step,
            t: 0.0,
            x: x0,
            h: opts.init_step.clamp(opts.min_step, opts.max_step),
        }
    }

    /// Takes one accepted step without crossing `t_cap`; lands on `t_cap`
    /// exactly when the proposed step would reach it.
    pub fn step(&mut self, t_cap: f64) -> Result<(), FlowError> {
        let started_zero: Vec<bool> = self.x.iter().map(|&v| v == 0.0).collect();
        loop {
            let remaining = t_cap - self.t;
            let h_try = if self.h >= remaining { remaining } else { self.h };
            let full = rk4(self.game, self.kind, &self.x, h_try);
            let half_mid = rk4(self.game, self.kind, &self.x, h_try / 2.0);
            let mut half = rk4(self.game, self.kind, &half_mid, h_try / 2.0);

            let overshoot = half.iter().chain(full.iter()).any(|v| *v < 0.0 || !v.is_finite());
            let err = full
                .iter()
                .zip(&half)
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));

            if !overshoot && err <= self.abs_tol {
                for (i, v) in half.iter_mut().enumerate() {
                    if started_zero[i] && v.abs() < 1e-15 {
                        *v = 0.0;
                    }
                }
                let sum: f64 = half.iter().sum();
                for v in &mut half {
                    *v /= sum;
                }
                self.x = half;
                self.t = if h_try == remaining { t_cap } else { self.t + h_try };
                let grow = if err == 0.0 {
                    4.0
                } else {
                    (0.9 * (self.abs_tol / err).powf(0.2)).clamp(0.25, 4.0)
                };
                self.h = (h_try * grow).clamp(self.min_step, self.max_step);
                return Ok(());
            }

            let shrink = if overshoot || err == 0.0 {
                0.5
            } else {
                (0.9 * (self.abs_tol / err).powf(0.2)).clamp(0.1, 0.5)
            };
            let h_new = h_try * shrink;
            if h_new < self.min_step {
                return Err(FlowError::StepUnderflow { t: self.t });
            }
            self.h = h_new;
        }
    }
}

fn start_vector(x0: &PopulationState) -> Vec<f64> {
    x0.as_slice().to_vec()
}

/// Integrates the chosen dynamics from `x0` over `[0, horizon]`, recording
/// states on a fixed output grid. On step underflow the partial trajectory
/// gathered so far is returned inside the error.
pub fn integrate(
    game: &PayoffMatrix,
    kind: FieldKind,
    x0: &PopulationState,
    horizon: f64,
    opts: &IntegrationOptions,
) -> Result<Trajectory, FlowError> {
    if x0.n() != game.n() {
        return Err(FlowError::BadInput(format!(
            "state has {} shares but the game has {} strategies",
            x0.n(),
            game.n()
        )));
    }
    if !(horizon > 0.0) {
        return Err(FlowError::BadInput(format!("horizon must be positive, got {horizon}")));
    }
    if opts.output_samples < 2 {
        return Err(FlowError::BadInput(
            "need at least 2 output samples".into(),
        ));
    }
    let grid = opts.output_samples;
    let mut stepper = Stepper::new(game, kind, start_vector(x0), opts);
    let mut times = Vec::with_capacity(grid);
    let mut states = Vec::with_capacity(grid);
    times.push(0.0);
    states.push(x0.clone());
    for g in 1..grid {
        let tg = horizon * g as f64 / (grid - 1) as f64;
        while stepper.t < tg {
            match stepper.step(tg) {
                Ok(()) => {}
                Err(FlowError::StepUnderflow { t }) => {
                    return Err(FlowError::StepUnderflowPartial {
                        t,
                        partial: Box::new(Trajectory {
                            times,
                            states,
                            kind,
                            game: game.clone(),
                        }),
                    });
                }
                Err(other) => return Err(other),
            }
        }
        times.push(tg);
        states.push(PopulationState::from_normalized(stepper.x.clone()));
    }
    Ok(Trajectory {
        times,
        states,
        kind,
        game: game.clone(),
    })
}

/// Integrates and records every accepted step (plus the exact endpoint).
pub(crate) fn integrate_steps(
    game: &PayoffMatrix,
    kind: FieldKind,
    x0: &PopulationState,
    horizon: f64,
    opts: &IntegrationOptions,
) -> Result<(Vec<f64>, Vec<Vec<f64>>), FlowError> {
    let mut stepper = Stepper::new(game, kind, start_vector(x0), opts);
    let mut times = vec![0.0];
    let mut states = vec![start_vector(x0)];
    while stepper.t < horizon {
        stepper.step(horizon)?;
        times.push(stepper.t);
        states.push(stepper.x.clone());
    }
    Ok((times, states))
}

/// Endpoint-only integration from a raw state over `dt`.
pub(crate) fn integrate_to_raw(
    game: &PayoffMatrix,
    kind: FieldKind,
    x0: &[f64],
    dt: f64,
    opts: &IntegrationOptions,
) -> Result<Vec<f64>, FlowError> {
    if dt == 0.0 {
        return Ok(x0.to_vec());
    }
    let mut stepper = Stepper::new(game, kind, x0.to_vec(), opts);
    while stepper.t < dt {
        stepper.step(dt)?;
    }
    Ok(stepper.x)
}

/// Endpoint-only integration: the state reached from `x0` after `horizon`.
pub fn integrate_to(
    game: &PayoffMatrix,
    kind: FieldKind,
    x0: &PopulationState,
    horizon: f64,
    opts: &IntegrationOptions,
) -> Result<PopulationState, FlowError> {
    let end = integrate_to_raw(game, kind, x0.as_slice(), horizon, opts)?;
    Ok(PopulationState::from_normalized(end))
}
