//! Strict dominance and its iterated elimination.
//!
//! The imitation dynamics is not payoff monotone, yet pure strategies that
//! are iteratively strictly dominated by pure strategies are still wiped out
//! along interior solutions: the growth-rate gap between a dominator and its
//! victim stays positive everywhere in the interior. Weak dominance carries
//! no such guarantee and is deliberately excluded from the elimination loop;
//! it is surfaced separately as an advisory listing.

use super::AnalysisError;
use crate::dynamics::ibr_field;
use crate::game::{PayoffMatrix, PopulationState};

/// All ordered pairs `(dominator, dominated)` with strict dominance:
/// `pi[i][k] > pi[j][k]` for every opponent `k`.
pub fn strictly_dominated_pairs(game: &PayoffMatrix) -> Vec<(usize, usize)> {
    dominated_pairs_within(game, &(0..game.n()).collect::<Vec<_>>())
}

fn dominated_pairs_within(game: &PayoffMatrix, survivors: &[usize]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for &i in survivors {
        for &j in survivors {
            if i == j {
                continue;
            }
            if survivors
                .iter()
                .all(|&k| game.payoff(i, k) > game.payoff(j, k))
            {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Weak-dominance advisory: pairs `(i, j)` with `pi[i][k] >= pi[j][k]` for
/// all `k` and a strict inequality somewhere. Not used for elimination.
pub fn weakly_dominated_pairs(game: &PayoffMatrix) -> Vec<(usize, usize)> {
    let n = game.n();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let weak = (0..n).all(|k| game.payoff(i, k) >= game.payoff(j, k));
            let strict = (0..n).any(|k| game.payoff(i, k) > game.payoff(j, k));
            if weak && strict && !(0..n).all(|k| game.payoff(i, k) > game.payoff(j, k)) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// One elimination step: `dominator` strictly dominates `eliminated` in the
/// game restricted to the strategies still alive at that point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EliminationRound {
    pub dominator: usize,
    pub eliminated: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationTrace {
    pub rounds: Vec<EliminationRound>,
    pub survivors: Vec<usize>,
}

/// Iterated strict elimination. One strategy is removed per round; ties are
/// broken by the lowest dominated index, then the lowest dominator index.
pub fn iterated_elimination(game: &PayoffMatrix) -> EliminationTrace {
    let mut survivors: Vec<usize> = (0..game.n()).collect();
    let mut rounds = Vec::new();
    loop {
        let pairs = dominated_pairs_within(game, &survivors);
        let Some(&eliminated) = pairs.iter().map(|(_, j)| j).min() else {
            break;
        };
        let dominator = pairs
            .iter()
            .filter(|(_, j)| *j == eliminated)
            .map(|(i, _)| *i)
            .min()
            .unwrap();
        rounds.push(EliminationRound {
            dominator,
            eliminated,
        });
        survivors.retain(|&s| s != eliminated);
    }
    EliminationTrace { rounds, survivors }
}

/// Growth-rate gap `v_i / x_i - v_j / x_j` of the imitation dynamics at an
/// interior state. Positive everywhere when `i` strictly dominates `j`.
pub fn growth_rate_gap(
    x: &PopulationState,
    game: &PayoffMatrix,
    i: usize,
    j: usize,
) -> Result<f64, AnalysisError> {
    if x.share(i) == 0.0 {
        return Err(AnalysisError::ZeroShare(i));
    }
    if x.share(j) == 0.0 {
        return Err(AnalysisError::ZeroShare(j));
    }
    let v = ibr_field(x, game);
    Ok(v.component(i) / x.share(i) - v.component(j) / x.share(j))
}
