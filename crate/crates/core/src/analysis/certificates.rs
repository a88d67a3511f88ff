//! Sampling-based structural certificates.
//!
//! Neither check here is a proof: both evaluate the field on a fixed
//! quasi-random panel of interior states and certify that an identity or an
//! inequality held on every sample.

use super::AnalysisError;
use crate::dynamics::ibr_field;
use crate::game::{PayoffMatrix, Permutation};
use crate::sampling;

/// Number of interior states sampled by the self-negation certificate.
pub const SELF_NEGATION_STATES: usize = 200;
/// Absolute agreement tolerance for the self-negation identity.
pub const SELF_NEGATION_TOL: f64 = 1e-10;

/// Searches for a relabeling `sigma` under which payoff negation maps the
/// game onto itself: `-F(x)_i = F(sigma x)_{sigma(i)}` on every sampled
/// state. Such a game's flow is conjugate to its own time reversal, which
/// forces circling solutions to close up.
///
/// For three strategies only transpositions are searched (a self-negating
/// 3-strategy game must swap exactly one pair). For other sizes every
/// non-identity permutation is tried; treat those results as experimental.
pub fn self_negation_witness(game: &PayoffMatrix) -> Option<Permutation> {
    let n = game.n();
    let candidates: Vec<Permutation> = if n == 3 {
        vec![
            Permutation::transposition(3, 0, 1).unwrap(),
            Permutation::transposition(3, 0, 2).unwrap(),
            Permutation::transposition(3, 1, 2).unwrap(),
        ]
    } else {
        Permutation::all(n)
            .into_iter()
            .filter(|p| *p != Permutation::identity(n))
            .collect()
    };
    let states = sampling::interior_states(n, SELF_NEGATION_STATES);
    'next_sigma: for sigma in candidates {
        for x in &states {
            let forward = ibr_field(x, game);
            let relabeled = ibr_field(&x.permute(&sigma).unwrap(), game);
            for i in 0..n {
                let lhs = -forward.component(i);
                let rhs = relabeled.component(sigma.apply(i));
                if (lhs - rhs).abs() > SELF_NEGATION_TOL {
                    continue 'next_sigma;
                }
            }
        }
        return Some(sigma);
    }
    None
}

/// Certifies that the flow points toward a strict equilibrium `(i, i)`
/// throughout the pinned neighborhood `x_i in (1/sqrt(2) + 1e-6, 1)`:
/// returns true iff `dx_i/dt > 0` at every sampled state there.
///
/// The threshold is where the worst-case inflow-minus-outflow bound
/// `eps (1 - eps) (1 - 4 eps + 2 eps^2)` for `eps = 1 - x_i` turns positive,
/// so the certificate must hold for every strict equilibrium.
pub fn strict_equilibrium_inflow_check(
    game: &PayoffMatrix,
    i: usize,
    samples: usize,
) -> Result<bool, AnalysisError> {
    let n = game.n();
    for j in 0..n {
        if j != i && game.payoff(i, i) <= game.payoff(j, i) {
            return Err(AnalysisError::NotStrictEquilibrium(i));
        }
    }
    let lo = 1.0 / 2.0f64.sqrt() + 1e-6;
    for x in sampling::states_with_share_in(n, i, lo, 1.0, samples) {
        if ibr_field(&x, game).component(i) <= 0.0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn cyclic_center_game_swaps_its_last_two_strategies() {
        let g = presets::preset("table5-C2").unwrap();
        let sigma = self_negation_witness(&g).expect("witness");
        assert_eq!(sigma.as_transposition(), Some((1, 2)));
    }

    #[test]
    fn game_w_is_self_negating() {
        let g = presets::game_w();
        let sigma = self_negation_witness(&g).expect("witness");
        assert!(sigma.as_transposition().is_some());
    }

    #[test]
    fn repelling_cyclic_game_has_no_witness() {
        let g = presets::preset("table5-A1").unwrap();
        assert!(self_negation_witness(&g).is_none());
    }

    #[test]
    fn strict_equilibrium_neighborhood_flows_inward() {
        let g = presets::preset("example1").unwrap();
        assert!(strict_equilibrium_inflow_check(&g, 0, 500).unwrap());
        // (2, 2) is also strict in this coordination game
        assert!(strict_equilibrium_inflow_check(&g, 1, 500).unwrap());
    }

    #[test]
    fn non_strict_profile_is_rejected() {
        let g = presets::symmetric_rps(1.0, 1.0).unwrap();
        assert!(matches!(
            strict_equilibrium_inflow_check(&g, 0, 10),
            Err(AnalysisError::NotStrictEquilibrium(0))
        ));
    }
}
