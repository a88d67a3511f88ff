//! Switch rates and mean-field velocities.
//!
//! The imitate-the-better-realization (IBR) rule: a revising agent samples one
//! opponent and adopts that opponent's strategy iff the opponent's realized
//! payoff strictly exceeds the agent's own realized payoff. Its mean dynamics
//! is the quartic
//!
//! ```text
//! dx_i/dt = x_i * sum_j x_j * sum_{k,m} x_k x_m (1{pi_jk < pi_im} - 1{pi_jk > pi_im})
//! ```
//!
//! evaluated here by the definitional O(n^4) sum, with no algebraic
//! simplification: printed closed forms are used as test oracles only. All
//! payoff comparisons are strict and exact; ties contribute no flow in either
//! direction, and near-ties in user data flip indicators discontinuously.
//!
//! The pairwise-proportional-imitation (PPI) rates and the replicator field
//! are provided for comparison.

use thiserror::Error;

use crate::game::{average_payoffs, PayoffMatrix, PopulationState};

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("switch rate needs distinct strategies, got i = j = {0}")]
    SameStrategy(usize),
    #[error("strategy {strategy} out of range for an {n}-strategy game")]
    StrategyOutOfRange { strategy: usize, n: usize },
    #[error("operation requires a 2-strategy game, got n = {0}")]
    NotTwoStrategies(usize),
    #[error("polynomial interpolation failed: residual {residual:e} at x = {at}")]
    InterpolationUnstable { residual: f64, at: f64 },
}

/// Which mean dynamics downstream analysis runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Ibr,
    Replicator,
}

impl FieldKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldKind::Ibr => "ibr",
            FieldKind::Replicator => "replicator",
        }
    }
}

impl std::fmt::Display for FieldKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FieldKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ibr" => Ok(FieldKind::Ibr),
            "replicator" | "rd" => Ok(FieldKind::Replicator),
            other => Err(format!("unknown dynamics kind `{other}` (ibr|replicator)")),
        }
    }
}

/// Velocity vector `dx/dt` at a state; components sum to zero (the field is
/// tangent to the simplex).
#[derive(Debug, Clone, PartialEq)]
pub struct Velocity {
    v: Vec<f64>,
}

impl Velocity {
    pub fn n(&self) -> usize {
        self.v.len()
    }

    #[inline]
    pub fn component(&self, i: usize) -> f64 {
        self.v[i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.v
    }

    pub fn max_norm(&self) -> f64 {
        self.v.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn check_pair(game: &PayoffMatrix, i: usize, j: usize) -> Result<(), DynamicsError> {
    let n = game.n();
    for s in [i, j] {
        if s >= n {
            return Err(DynamicsError::StrategyOutOfRange { strategy: s, n });
        }
    }
    if i == j {
        return Err(DynamicsError::SameStrategy(i));
    }
    Ok(())
}

/// IBR switch rate from strategy `i` to strategy `j`:
/// `x_j * sum_{k,m} x_k x_m 1{pi_jk > pi_im}`. Lies in `[0, x_j]`.
pub fn ibr_switch_rate(
    x: &PopulationState,
    game: &PayoffMatrix,
    i: usize,
    j: usize,
) -> Result<f64, DynamicsError> {
    check_pair(game, i, j)?;
    let n = game.n();
    let mut total = 0.0;
    for k in 0..n {
        let pjk = game.payoff(j, k);
        let mut inner = 0.0;
        for m in 0..n {
            if pjk > game.payoff(i, m) {
                inner += x.share(m);
            }
        }
        total += x.share(k) * inner;
    }
    Ok(x.share(j) * total)
}

/// PPI switch rate on realized payoffs:
/// `x_j * sum_{k,m} x_k x_m [pi_jk - pi_im]_+`.
pub fn ppi_realized_switch_rate(
    x: &PopulationState,
    game: &PayoffMatrix,
    i: usize,
    j: usize,
) -> Result<f64, DynamicsError> {
    check_pair(game, i, j)?;
    let n = game.n();
    let mut total = 0.0;
    for k in 0..n {
        let pjk = game.payoff(j, k);
        let mut inner = 0.0;
        for m in 0..n {
            let adv = pjk - game.payoff(i, m);
            if adv > 0.0 {
                inner += adv * x.share(m);
            }
        }
        total += x.share(k) * inner;
    }
    Ok(x.share(j) * total)
}

/// PPI switch rate on average payoffs: `x_j * [pi_j - pi_i]_+`.
pub fn ppi_average_switch_rate(
    x: &PopulationState,
    game: &PayoffMatrix,
    i: usize,
    j: usize,
) -> Result<f64, DynamicsError> {
    check_pair(game, i, j)?;
    let (pi, _) = average_payoffs(x, game);
    Ok(x.share(j) * (pi[j] - pi[i]).max(0.0))
}

/// Aggregates any switch-rate function into its mean dynamics:
/// `dx_i/dt = sum_j x_j rate(j, i) - x_i sum_j rate(i, j)`.
pub fn mean_field_from_rates(
    x: &PopulationState,
    mut rate: impl FnMut(usize, usize) -> f64,
) -> Velocity {
    let n = x.n();
    let mut v = vec![0.0; n];
    for i in 0..n {
        let mut inflow = 0.0;
        let mut outflow = 0.0;
        for j in 0..n {
            if j == i {
                continue;
            }
            inflow += x.share(j) * rate(j, i);
            outflow += rate(i, j);
        }
        v[i] = inflow - x.share(i) * outflow;
    }
    Velocity { v }
}

/// The IBR mean field, by the definitional quartic sum. A strategy with zero
/// share has exactly zero velocity, so faces of the simplex are invariant.
pub fn ibr_field(x: &PopulationState, game: &PayoffMatrix) -> Velocity {
    Velocity {
        v: ibr_field_raw(x.as_slice(), game),
    }
}

/// Slice-level IBR field. The quartic extends smoothly off the simplex, which
/// the finite-difference Jacobians and the step-control logic rely on.
pub(crate) fn ibr_field_raw(x: &[f64], game: &PayoffMatrix) -> Vec<f64> {
    let n = game.n();
    let mut v = vec![0.0; n];
    for i in 0..n {
        let xi = x[i];
        if xi == 0.0 {
            continue;
        }
        let mut net = 0.0;
        for j in 0..n {
            if j == i {
                continue;
            }
            let xj = x[j];
            if xj == 0.0 {
                continue;
            }
            // probability a row-i draw beats a row-j draw, minus the reverse
            let mut inner = 0.0;
            for k in 0..n {
                let pjk = game.payoff(j, k);
                let mut per_m = 0.0;
                for m in 0..n {
                    let pim = game.payoff(i, m);
                    if pjk < pim {
                        per_m += x[m];
                    } else if pjk > pim {
                        per_m -= x[m];
                    }
                }
                inner += x[k] * per_m;
            }
            net += xj * inner;
        }
        v[i] = xi * net;
    }
    v
}

/// The replicator field `dx_i/dt = x_i (pi_i - pi_bar)`.
pub fn replicator_field(x: &PopulationState, game: &PayoffMatrix) -> Velocity {
    Velocity {
        v: replicator_field_raw(x.as_slice(), game),
    }
}

pub(crate) fn replicator_field_raw(x: &[f64], game: &PayoffMatrix) -> Vec<f64> {
    let n = game.n();
    let mut pi = vec![0.0; n];
    for i in 0..n {
        let row = game.row(i);
        pi[i] = (0..n).map(|j| row[j] * x[j]).sum();
    }
    let mean: f64 = (0..n).map(|i| x[i] * pi[i]).sum();
    (0..n).map(|i| x[i] * (pi[i] - mean)).collect()
}

/// Dispatches on the dynamics kind.
pub fn field(kind: FieldKind, x: &PopulationState, game: &PayoffMatrix) -> Velocity {
    match kind {
        FieldKind::Ibr => ibr_field(x, game),
        FieldKind::Replicator => replicator_field(x, game),
    }
}

pub(crate) fn field_raw(kind: FieldKind, x: &[f64], game: &PayoffMatrix) -> Vec<f64> {
    match kind {
        FieldKind::Ibr => ibr_field_raw(x, game),
        FieldKind::Replicator => replicator_field_raw(x, game),
    }
}

/// Degree-at-most-4 polynomial in the share of strategy 1, `c[0] + c[1] x +
/// ... + c[4] x^4`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgePolynomial {
    coeffs: [f64; 5],
}

impl EdgePolynomial {
    pub fn coeffs(&self) -> &[f64; 5] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c)
    }

    /// Divides out the guaranteed boundary roots at `x = 0` and `x = 1`,
    /// leaving the quadratic whose interior roots are the rest points:
    /// `p(x) = x (1 - x) (b0 + b1 x + b2 x^2)` up to interpolation noise in
    /// the constant term.
    pub fn interior_factor(&self) -> [f64; 3] {
        let c = &self.coeffs;
        [c[1], c[1] + c[2], -c[4]]
    }
}

/// Nodes used to interpolate the edge dynamics.
pub const INTERPOLATION_NODES: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

/// Extracts the IBR edge dynamics of a 2-strategy game as a polynomial in the
/// share of strategy 1, by interpolation at five nodes. The fit is verified at
/// twenty fresh nodes to 1e-10.
pub fn two_strategy_polynomial(game: &PayoffMatrix) -> Result<EdgePolynomial, DynamicsError> {
    if game.n() != 2 {
        return Err(DynamicsError::NotTwoStrategies(game.n()));
    }
    let mut vand = nalgebra::Matrix5::<f64>::zeros();
    let mut rhs = nalgebra::Vector5::<f64>::zeros();
    for (r, &t) in INTERPOLATION_NODES.iter().enumerate() {
        let mut power = 1.0;
        for c in 0..5 {
            vand[(r, c)] = power;
            power *= t;
        }
        rhs[r] = edge_velocity(game, t);
    }
    let solved = vand.lu().solve(&rhs).ok_or(DynamicsError::InterpolationUnstable {
        residual: f64::INFINITY,
        at: 0.0,
    })?;
    let poly = EdgePolynomial {
        coeffs: [solved[0], solved[1], solved[2], solved[3], solved[4]],
    };
    for k in 1..=20 {
        let t = k as f64 / 21.0;
        let residual = (poly.eval(t) - edge_velocity(game, t)).abs();
        if residual > 1e-10 {
            return Err(DynamicsError::InterpolationUnstable { residual, at: t });
        }
    }
    Ok(poly)
}

fn edge_velocity(game: &PayoffMatrix, t: f64) -> f64 {
    let x = PopulationState::from_normalized(vec![t, 1.0 - t]);
    ibr_field(&x, game).component(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{ordinal_pattern, Permutation};
    use crate::presets;
    use proptest::prelude::*;

    fn state(v: &[f64]) -> PopulationState {
        PopulationState::new(v.to_vec()).unwrap()
    }

    fn game(rows: &[&[f64]]) -> PayoffMatrix {
        PayoffMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Literal four-index evaluation of the switch rate, kept separate from
    /// the production path as an oracle.
    fn switch_rate_oracle(x: &PopulationState, g: &PayoffMatrix, i: usize, j: usize) -> f64 {
        let n = g.n();
        let mut total = 0.0;
        for k in 0..n {
            for m in 0..n {
                if g.payoff(j, k) > g.payoff(i, m) {
                    total += x.share(k) * x.share(m);
                }
            }
        }
        x.share(j) * total
    }

    #[test]
    fn switch_rate_degenerate_cases() {
        let g = game(&[&[1.0, 1.0], &[0.0, 0.0]]);
        // every row-2 payoff is below every row-1 payoff: no switching 1 -> 2
        for t in [0.1, 0.5, 0.9] {
            assert_eq!(ibr_switch_rate(&state(&[t, 1.0 - t]), &g, 0, 1).unwrap(), 0.0);
        }
        let g = game(&[&[0.0, 0.0], &[1.0, 1.0]]);
        let r = ibr_switch_rate(&state(&[0.5, 0.5]), &g, 0, 1).unwrap();
        assert!((r - 0.5).abs() < 1e-15);
        assert!(matches!(
            ibr_switch_rate(&state(&[0.5, 0.5]), &g, 1, 1),
            Err(DynamicsError::SameStrategy(1))
        ));
    }

    #[test]
    fn switch_rate_matches_quadruple_loop_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let entries: Vec<f64> = (0..9).map(|_| rng.gen_range(-5..=5) as f64).collect();
            let g = PayoffMatrix::new(3, entries).unwrap();
            let raw: Vec<f64> = (0..3).map(|_| rng.gen_range(0.05..1.0)).collect();
            let sum: f64 = raw.iter().sum();
            let x = state(&raw.iter().map(|v| v / sum).collect::<Vec<_>>());
            for i in 0..3 {
                for j in 0..3 {
                    if i == j {
                        continue;
                    }
                    let got = ibr_switch_rate(&x, &g, i, j).unwrap();
                    let want = switch_rate_oracle(&x, &g, i, j);
                    assert!((got - want).abs() <= 1e-14);
                    assert!(got >= 0.0 && got <= x.share(j) + 1e-15);
                }
            }
        }
    }

    #[test]
    fn ppi_realized_rate_weights_payoff_advantages() {
        // an observer earning 2 who sees a candidate earning 4 switches at
        // twice the rate of an observer earning 3
        let g = game(&[&[4.0, 1.0], &[3.0, 2.0]]);
        let x = state(&[0.5, 0.5]);
        // rate 2 -> 1: contributions [4-3]+ = 1, [4-2]+ = 2, [1-3]+ = 0, [1-2]+ = 0
        let r = ppi_realized_switch_rate(&x, &g, 1, 0).unwrap();
        assert!((r - 0.5 * 0.25 * 3.0).abs() < 1e-15);
        let ties = game(&[&[2.0, 2.0], &[2.0, 2.0]]);
        assert_eq!(ppi_realized_switch_rate(&x, &ties, 0, 1).unwrap(), 0.0);
    }

    #[test]
    fn ppi_average_rate_examples() {
        let g = game(&[&[10.0, 0.0], &[3.0, 3.0]]);
        let x = state(&[0.4, 0.6]);
        let r = ppi_average_switch_rate(&x, &g, 1, 0).unwrap();
        assert!((r - 0.4).abs() < 1e-12);
        let rps = presets::symmetric_rps(1.0, 1.0).unwrap();
        let center = PopulationState::uniform(3);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(ppi_average_switch_rate(&center, &rps, i, j).unwrap() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn mean_field_consistency() {
        let g = game(&[&[3.0, 2.0, 0.0], &[2.0, 1.0, 3.0], &[1.0, 0.0, 2.0]]);
        let x = state(&[0.3, 0.45, 0.25]);
        let zero = mean_field_from_rates(&x, |_, _| 0.0);
        assert!(zero.max_norm() == 0.0);

        let via_rates =
            mean_field_from_rates(&x, |i, j| ibr_switch_rate(&x, &g, i, j).unwrap());
        let direct = ibr_field(&x, &g);
        for i in 0..3 {
            assert!((via_rates.component(i) - direct.component(i)).abs() <= 1e-13);
        }

        let schlag =
            mean_field_from_rates(&x, |i, j| ppi_realized_switch_rate(&x, &g, i, j).unwrap());
        let rd = replicator_field(&x, &g);
        for i in 0..3 {
            assert!((schlag.component(i) - rd.component(i)).abs() <= 1e-12);
        }
    }

    #[test]
    fn coordination_edge_velocity() {
        // closed form x(1-x)(2x-1) at x = 0.25
        let g = game(&[&[4.0, 1.0], &[3.0, 2.0]]);
        let v = ibr_field(&state(&[0.25, 0.75]), &g);
        assert!((v.component(0) + 0.09375).abs() < 1e-15);
        assert!((v.component(0) + v.component(1)).abs() < 1e-15);
    }

    #[test]
    fn vertices_are_fixed() {
        let g = game(&[&[3.0, 2.0, 0.0], &[2.0, 1.0, 3.0], &[1.0, 0.0, 2.0]]);
        for i in 0..3 {
            let v = ibr_field(&PopulationState::vertex(3, i), &g);
            assert_eq!(v.max_norm(), 0.0);
            let v = replicator_field(&PopulationState::vertex(3, i), &g);
            assert_eq!(v.max_norm(), 0.0);
        }
    }

    #[test]
    fn standard_rps_speed_factor() {
        let g = presets::symmetric_rps(1.0, 1.0).unwrap();
        let x = state(&[0.5, 0.3, 0.2]);
        let (a, b, c) = (0.5, 0.3, 0.2);
        let factor = 1.0 - a * b - a * c - b * c;
        let expect = [a * (c - b) * factor, b * (a - c) * factor, c * (b - a) * factor];
        let v = ibr_field(&x, &g);
        for i in 0..3 {
            assert!((v.component(i) - expect[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn monotonicity_violation_example() {
        let g = game(&[&[10.0, 0.0], &[3.0, 3.0]]);
        let x = state(&[0.4, 0.6]);
        let rd = replicator_field(&x, &g);
        assert!((rd.component(0) - 0.24).abs() < 1e-12);
        let ibr = ibr_field(&x, &g);
        assert!((ibr.component(0) + 0.048).abs() < 1e-12);
    }

    #[test]
    fn replicator_zero_at_rps_center() {
        let g = presets::symmetric_rps(1.0, 1.0).unwrap();
        let v = replicator_field(&PopulationState::uniform(3), &g);
        assert!(v.max_norm() < 1e-15);
    }

    #[test]
    fn edge_polynomial_examples() {
        // x(1-x)[x + (1-x)^2] = x - 2x^2 + 2x^3 - x^4
        let d9 = presets::preset("table1-D9").unwrap();
        let p = two_strategy_polynomial(&d9).unwrap();
        let want = [0.0, 1.0, -2.0, 2.0, -1.0];
        for (c, w) in p.coeffs().iter().zip(want) {
            assert!((c - w).abs() < 1e-12);
        }

        // x(1-x)[-2x^2 + 4x - 1] = -x + 5x^2 - 6x^3 + 2x^4
        let c1 = presets::preset("table1-C1").unwrap();
        let p = two_strategy_polynomial(&c1).unwrap();
        let want = [0.0, -1.0, 5.0, -6.0, 2.0];
        for (c, w) in p.coeffs().iter().zip(want) {
            assert!((c - w).abs() < 1e-12);
        }

        let ties = game(&[&[7.0, 7.0], &[7.0, 7.0]]);
        let p = two_strategy_polynomial(&ties).unwrap();
        for c in p.coeffs() {
            assert!(c.abs() < 1e-13);
        }

        let rps = presets::symmetric_rps(1.0, 1.0).unwrap();
        assert!(matches!(
            two_strategy_polynomial(&rps),
            Err(DynamicsError::NotTwoStrategies(3))
        ));
    }

    fn arb_game_and_state(max_n: usize) -> impl Strategy<Value = (PayoffMatrix, PopulationState)> {
        (2..=max_n).prop_flat_map(|n| {
            let matrix = proptest::collection::vec(-5..=5i32, n * n).prop_map(move |v| {
                PayoffMatrix::new(n, v.into_iter().map(f64::from).collect()).unwrap()
            });
            let state = proptest::collection::vec(1e-3..1.0f64, n).prop_map(|raw| {
                let sum: f64 = raw.iter().sum();
                PopulationState::from_normalized(raw.into_iter().map(|v| v / sum).collect())
            });
            (matrix, state)
        })
    }

    proptest! {
        #[test]
        fn fields_are_tangent_to_the_simplex((g, x) in arb_game_and_state(5)) {
            let ibr: f64 = ibr_field(&x, &g).as_slice().iter().sum();
            let rd: f64 = replicator_field(&x, &g).as_slice().iter().sum();
            prop_assert!(ibr.abs() <= 1e-12);
            prop_assert!(rd.abs() <= 1e-12);
        }

        #[test]
        fn extinct_strategies_stay_extinct((g, x) in arb_game_and_state(5), dead in 0usize..5) {
            let n = g.n();
            let dead = dead % n;
            let mut shares = x.as_slice().to_vec();
            let freed = shares[dead];
            shares[dead] = 0.0;
            let live = (dead + 1) % n;
            shares[live] += freed;
            let x = PopulationState::from_normalized(shares);
            prop_assert_eq!(ibr_field(&x, &g).component(dead), 0.0);
        }

        #[test]
        fn ibr_is_ordinal((g, x) in arb_game_and_state(4)) {
            let base = ibr_field(&x, &g);
            for mapped in [
                g.map(|t| t * t * t + 5.0 * t).unwrap(),
                g.map(f64::exp).unwrap(),
            ] {
                let v = ibr_field(&x, &mapped);
                for i in 0..g.n() {
                    prop_assert!((v.component(i) - base.component(i)).abs() <= 1e-12);
                }
            }
        }

        #[test]
        fn negation_reverses_time((g, x) in arb_game_and_state(5)) {
            let forward = ibr_field(&x, &g);
            let backward = ibr_field(&x, &g.negate());
            for i in 0..g.n() {
                prop_assert!((forward.component(i) + backward.component(i)).abs() <= 1e-15);
            }
        }

        #[test]
        fn relabeling_is_equivariant((g, x) in arb_game_and_state(4), pick in 0usize..24) {
            let all = Permutation::all(g.n());
            let sigma = &all[pick % all.len()];
            let permuted_game = g.permute(sigma).unwrap();
            let permuted_state = x.permute(sigma).unwrap();
            let lhs = ibr_field(&permuted_state, &permuted_game);
            let rhs = ibr_field(&x, &g);
            for i in 0..g.n() {
                prop_assert!((lhs.component(sigma.apply(i)) - rhs.component(i)).abs() <= 1e-13);
            }
        }

        #[test]
        fn two_payoff_games_rescale_the_replicator(
            (g01, x) in arb_game_and_state(5),
            base in -3.0..3.0f64,
            gap in 0.5..4.0f64,
        ) {
            // map entries onto {base, base + gap}
            let n = g01.n();
            let two = g01
                .map(|t| if t > 0.0 { base + gap } else { base })
                .unwrap();
            let ibr = ibr_field(&x, &two);
            let rd = replicator_field(&x, &two);
            for i in 0..n {
                prop_assert!((ibr.component(i) - rd.component(i) / gap).abs() <= 1e-12);
            }
        }

        #[test]
        fn realized_ppi_generates_the_replicator((g, x) in arb_game_and_state(5)) {
            let mean = mean_field_from_rates(&x, |i, j| {
                ppi_realized_switch_rate(&x, &g, i, j).unwrap()
            });
            let rd = replicator_field(&x, &g);
            for i in 0..g.n() {
                prop_assert!((mean.component(i) - rd.component(i)).abs() <= 1e-10);
            }
        }

        #[test]
        fn switch_rates_are_bounded((g, x) in arb_game_and_state(5), i in 0usize..5, j in 0usize..5) {
            let n = g.n();
            let (i, j) = (i % n, j % n);
            prop_assume!(i != j);
            let r = ibr_switch_rate(&x, &g, i, j).unwrap();
            prop_assert!(r >= 0.0);
            prop_assert!(r <= x.share(j) + 1e-15);
        }
    }

    #[test]
    fn symmetric_rps_keeps_standard_order() {
        let standard = presets::symmetric_rps(1.0, 1.0).unwrap();
        let want = ordinal_pattern(&standard);
        for (a, b) in [(2.0, 5.0), (0.25, 7.0), (3.5, 0.5)] {
            let g = presets::symmetric_rps(a, b).unwrap();
            assert_eq!(ordinal_pattern(&g), want);
        }
    }
}
