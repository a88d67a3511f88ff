//! Complete taxonomy of two-strategy games under the imitation dynamics.
//!
//! Up to relabeling the two strategies, every 2x2 game with three or four
//! distinct payoffs matches exactly one of thirty canonical ordinal patterns:
//! twelve with a strictly dominant strategy (D), six with a weakly dominant
//! strategy (W), six coordination games (C) and six anticoordination games
//! (A). Each pattern pins the edge dynamics to a closed-form polynomial row;
//! games with only two distinct payoffs reduce to the replicator dynamics up
//! to speed and are labeled separately.

use super::AnalysisError;
use crate::dynamics::{two_strategy_polynomial, EdgePolynomial};
use crate::game::{ordinal_pattern, OrdinalPattern, PayoffMatrix, Permutation};
use crate::presets::TABLE1;

/// Closed-form rows of the bundled two-strategy dynamics tables. `T2*` rows
/// cover dominance games, `T3*` coordination, `T4*` anticoordination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynamicsRow {
    T2R1,
    T2R2,
    T2R3,
    T2R4,
    T2R5,
    T2R6,
    T2R7,
    T2R8,
    T3R1,
    T3R2,
    T3R3,
    T4R1,
    T4R2,
    T4R3,
}

impl DynamicsRow {
    /// Coefficients of `dx/dt` as a polynomial `c0 + c1 x + ... + c4 x^4`.
    pub fn coeffs(self) -> [f64; 5] {
        match self {
            DynamicsRow::T2R1 => [0.0, 1.0, -1.0, 0.0, 0.0],
            DynamicsRow::T2R2 => [0.0, 1.0, -3.0, 4.0, -2.0],
            DynamicsRow::T2R3 => [0.0, 1.0, -2.0, 2.0, -1.0],
            DynamicsRow::T2R4 => [0.0, 1.0, -2.0, 2.0, -1.0],
            DynamicsRow::T2R5 => [0.0, 1.0, -3.0, 3.0, -1.0],
            DynamicsRow::T2R6 => [0.0, 0.0, 0.0, 1.0, -1.0],
            DynamicsRow::T2R7 => [0.0, 0.0, 2.0, -3.0, 1.0],
            DynamicsRow::T2R8 => [0.0, 1.0, -1.0, -1.0, 1.0],
            DynamicsRow::T3R1 => [0.0, -1.0, 5.0, -6.0, 2.0],
            DynamicsRow::T3R2 => [0.0, -1.0, 3.0, -2.0, 0.0],
            DynamicsRow::T3R3 => [0.0, -1.0, 4.0, -4.0, 1.0],
            DynamicsRow::T4R1 => [0.0, 1.0, -1.0, -2.0, 2.0],
            DynamicsRow::T4R2 => [0.0, 1.0, -3.0, 2.0, 0.0],
            DynamicsRow::T4R3 => [0.0, 1.0, -2.0, 0.0, 1.0],
        }
    }

    /// Human-readable factored form of the row.
    pub fn formula(self) -> &'static str {
        match self {
            DynamicsRow::T2R1 => "x(1-x)",
            DynamicsRow::T2R2 => "x(1-x)[x^2+(1-x)^2]",
            DynamicsRow::T2R3 => "x(1-x)[x+(1-x)^2]",
            DynamicsRow::T2R4 => "x(1-x)[x^2+(1-x)]",
            DynamicsRow::T2R5 => "x(1-x)^3",
            DynamicsRow::T2R6 => "x^3(1-x)",
            DynamicsRow::T2R7 => "x^2(1-x)(2-x)",
            DynamicsRow::T2R8 => "x(1-x)^2(1+x)",
            DynamicsRow::T3R1 => "x(1-x)[-2x^2+4x-1]",
            DynamicsRow::T3R2 => "x(1-x)[2x-1]",
            DynamicsRow::T3R3 => "x(1-x)[-x^2+3x-1]",
            DynamicsRow::T4R1 => "x(1-x)[1-2x^2]",
            DynamicsRow::T4R2 => "x(1-x)[1-2x]",
            DynamicsRow::T4R3 => "x(1-x)[-x^2-x+1]",
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            DynamicsRow::T2R1 => "T2R1",
            DynamicsRow::T2R2 => "T2R2",
            DynamicsRow::T2R3 => "T2R3",
            DynamicsRow::T2R4 => "T2R4",
            DynamicsRow::T2R5 => "T2R5",
            DynamicsRow::T2R6 => "T2R6",
            DynamicsRow::T2R7 => "T2R7",
            DynamicsRow::T2R8 => "T2R8",
            DynamicsRow::T3R1 => "T3R1",
            DynamicsRow::T3R2 => "T3R2",
            DynamicsRow::T3R3 => "T3R3",
            DynamicsRow::T4R1 => "T4R1",
            DynamicsRow::T4R2 => "T4R2",
            DynamicsRow::T4R3 => "T4R3",
        }
    }

    pub fn eval(self, x: f64) -> f64 {
        self.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

const CATALOG_ROWS: [(&str, DynamicsRow); 30] = [
    ("D1", DynamicsRow::T2R1),
    ("D2", DynamicsRow::T2R1),
    ("D3", DynamicsRow::T2R2),
    ("D4", DynamicsRow::T2R1),
    ("D5", DynamicsRow::T2R1),
    ("D6", DynamicsRow::T2R2),
    ("D7", DynamicsRow::T2R1),
    ("D8", DynamicsRow::T2R1),
    ("D9", DynamicsRow::T2R3),
    ("D10", DynamicsRow::T2R4),
    ("D11", DynamicsRow::T2R1),
    ("D12", DynamicsRow::T2R1),
    ("W1", DynamicsRow::T2R5),
    ("W2", DynamicsRow::T2R6),
    ("W3", DynamicsRow::T2R7),
    ("W4", DynamicsRow::T2R8),
    ("W5", DynamicsRow::T2R6),
    ("W6", DynamicsRow::T2R5),
    ("C1", DynamicsRow::T3R1),
    ("C2", DynamicsRow::T3R2),
    ("C3", DynamicsRow::T3R2),
    ("C4", DynamicsRow::T3R3),
    ("C5", DynamicsRow::T3R2),
    ("C6", DynamicsRow::T3R3),
    ("A1", DynamicsRow::T4R1),
    ("A2", DynamicsRow::T4R2),
    ("A3", DynamicsRow::T4R2),
    ("A4", DynamicsRow::T4R3),
    ("A5", DynamicsRow::T4R2),
    ("A6", DynamicsRow::T4R3),
];

/// One canonical two-strategy game with its closed-form dynamics row.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub label: &'static str,
    pub game: PayoffMatrix,
    pub row: DynamicsRow,
}

/// The thirty canonical games, in table order.
pub fn catalog() -> Vec<CatalogEntry> {
    TABLE1
        .iter()
        .zip(CATALOG_ROWS.iter())
        .map(|((label, rows), (row_label, row))| {
            debug_assert_eq!(label, row_label);
            CatalogEntry {
                label,
                game: PayoffMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()]).unwrap(),
                row: *row,
            }
        })
        .collect()
}

/// Classification of a two-strategy game.
#[derive(Debug, Clone)]
pub struct TwoStrategyClass {
    /// Catalog tag (`D1`..`A6`), or `two_payoff` / `degenerate`.
    pub label: String,
    /// Interior rest points in `(0, 1)` of the edge dynamics, ascending.
    pub interior_rest_points: Vec<f64>,
    /// The matching closed-form row, when the game is a catalog type.
    pub dynamics_row: Option<DynamicsRow>,
    /// Set when the match is to the catalog entry with strategies relabeled,
    /// i.e. the input's dynamics is the row mirrored through `x -> 1 - x`.
    pub swapped: bool,
    /// The interpolated edge polynomial of the input game itself.
    pub polynomial: EdgePolynomial,
}

fn swap_pattern(game: &PayoffMatrix) -> OrdinalPattern {
    let sigma = Permutation::transposition(2, 0, 1).unwrap();
    ordinal_pattern(&game.permute(&sigma).unwrap())
}

/// Interior roots of the edge polynomial in `(0, 1)`, by sign scanning the
/// deflated quadratic plus bisection.
fn interior_roots(poly: &EdgePolynomial) -> Vec<f64> {
    let q = poly.interior_factor();
    if q.iter().all(|c| c.abs() <= 1e-12) {
        // the whole edge rests; there are no isolated interior rest points
        return Vec::new();
    }
    let eval = |x: f64| q[0] + x * (q[1] + x * q[2]);
    const CELLS: usize = 4096;
    let mut roots = Vec::new();
    let mut prev_x = 0.0;
    let mut prev_v = eval(0.0);
    for cell in 1..=CELLS {
        let x = cell as f64 / CELLS as f64;
        let v = eval(x);
        if prev_v == 0.0 {
            roots.push(prev_x);
        } else if prev_v * v < 0.0 {
            let (mut lo, mut hi, mut flo) = (prev_x, x, prev_v);
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                let fmid = eval(mid);
                if fmid == 0.0 {
                    lo = mid;
                    hi = mid;
                } else if flo * fmid < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fmid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_v = v;
    }
    // interpolation noise of order 1e-13 smears a boundary double root
    // (factors like (1-x)^2) up to ~3e-7 into the interval; roots closer to
    // the boundary than this margin are indistinguishable from boundary
    // roots and are dropped
    roots.retain(|r| *r > 1e-5 && *r < 1.0 - 1e-5);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9);
    roots
}

/// Matches a 2x2 game against the canonical catalog by ordinal pattern (up to
/// strategy relabeling) and extracts its interior rest points.
pub fn classify_two_strategy(game: &PayoffMatrix) -> Result<TwoStrategyClass, AnalysisError> {
    if game.n() != 2 {
        return Err(AnalysisError::NotTwoStrategies(game.n()));
    }
    let polynomial = two_strategy_polynomial(game)?;
    let interior_rest_points = interior_roots(&polynomial);
    let pattern = ordinal_pattern(game);

    let (label, dynamics_row, swapped) = match pattern.distinct() {
        1 => ("degenerate".to_string(), None, false),
        2 => ("two_payoff".to_string(), None, false),
        _ => {
            let mut found = None;
            for entry in catalog() {
                if pattern == ordinal_pattern(&entry.game) {
                    found = Some((entry.label.to_string(), Some(entry.row), false));
                    break;
                }
                if pattern == swap_pattern(&entry.game) {
                    found = Some((entry.label.to_string(), Some(entry.row), true));
                    break;
                }
            }
            found.unwrap_or(("degenerate".to_string(), None, false))
        }
    };

    Ok(TwoStrategyClass {
        label,
        interior_rest_points,
        dynamics_row,
        swapped,
        polynomial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anticoordination_example() {
        let g = PayoffMatrix::from_rows(&[vec![2.0, 4.0], vec![3.0, 1.0]]).unwrap();
        let c = classify_two_strategy(&g).unwrap();
        assert_eq!(c.label, "A1");
        assert!(!c.swapped);
        assert_eq!(c.interior_rest_points.len(), 1);
        assert!((c.interior_rest_points[0] - 1.0 / 2.0f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn coordination_example() {
        let g = PayoffMatrix::from_rows(&[vec![3.0, 2.0], vec![1.0, 3.0]]).unwrap();
        let c = classify_two_strategy(&g).unwrap();
        assert_eq!(c.label, "C4");
        assert_eq!(c.interior_rest_points.len(), 1);
        assert!((c.interior_rest_points[0] - (3.0 - 5.0f64.sqrt()) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn two_payoff_example() {
        let g = PayoffMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let c = classify_two_strategy(&g).unwrap();
        assert_eq!(c.label, "two_payoff");
        assert!(c.dynamics_row.is_none());
        assert_eq!(c.interior_rest_points.len(), 1);
        assert!((c.interior_rest_points[0] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn all_ties_is_degenerate() {
        let g = PayoffMatrix::new(2, vec![3.0; 4]).unwrap();
        let c = classify_two_strategy(&g).unwrap();
        assert_eq!(c.label, "degenerate");
        assert!(c.interior_rest_points.is_empty());
    }

    #[test]
    fn relabeled_games_match_with_the_swap_flag() {
        // strategy-swapped variant of a catalog game
        let g = PayoffMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let c = classify_two_strategy(&g).unwrap();
        assert_eq!(c.label, "D1");
        assert!(c.swapped);
        // dominance now favors strategy 2, so the polynomial is the mirrored row
        let row = c.dynamics_row.unwrap();
        for k in 1..10 {
            let x = k as f64 / 10.0;
            assert!((c.polynomial.eval(x) + row.eval(1.0 - x)).abs() < 1e-10);
        }
    }

    #[test]
    fn ordinal_classification_ignores_payoff_scale() {
        let g = PayoffMatrix::from_rows(&[vec![400.0, 1.5], vec![30.0, 2.0]]).unwrap();
        let c = classify_two_strategy(&g).unwrap();
        assert_eq!(c.label, "C2");
        assert!((c.interior_rest_points[0] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn catalog_patterns_cover_all_strict_and_tied_orderings() {
        // every 2x2 game with 3 or 4 distinct payoffs classifies to a catalog
        // label, and the 60 patterns (30 entries and their swaps) are distinct
        let mut seen = std::collections::HashSet::new();
        for entry in catalog() {
            let p = ordinal_pattern(&entry.game);
            assert!(seen.insert(p.ranks().to_vec()), "{} duplicated", entry.label);
            let sp = swap_pattern(&entry.game);
            assert!(seen.insert(sp.ranks().to_vec()), "{} swap duplicated", entry.label);
        }
        assert_eq!(seen.len(), 60);

        let values = [1.0, 2.0, 3.0, 4.0];
        let mut strict = 0;
        let mut tied = 0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let g = PayoffMatrix::new(
                            2,
                            vec![values[a], values[b], values[c], values[d]],
                        )
                        .unwrap();
                        let distinct = ordinal_pattern(&g).distinct();
                        if distinct < 3 {
                            continue;
                        }
                        let cls = classify_two_strategy(&g).unwrap();
                        assert_ne!(cls.label, "degenerate", "{:?}", g.entries());
                        assert_ne!(cls.label, "two_payoff");
                        if distinct == 4 {
                            strict += 1;
                        } else {
                            tied += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(strict, 24);
        assert!(tied > 0);
    }

    #[test]
    fn catalog_rows_match_interpolated_polynomials() {
        for entry in catalog() {
            let poly = two_strategy_polynomial(&entry.game).unwrap();
            let coeffs = entry.row.coeffs();
            for (got, want) in poly.coeffs().iter().zip(coeffs) {
                assert!(
                    (got - want).abs() < 1e-10,
                    "{}: {:?} vs {:?}",
                    entry.label,
                    poly.coeffs(),
                    coeffs
                );
            }
        }
    }

    #[test]
    fn coordination_roots_repel_and_anticoordination_roots_attract() {
        for entry in catalog() {
            let cls = classify_two_strategy(&entry.game).unwrap();
            let kind = entry.label.chars().next().unwrap();
            match kind {
                'C' | 'A' => {
                    assert_eq!(cls.interior_rest_points.len(), 1, "{}", entry.label);
                    let r = cls.interior_rest_points[0];
                    let left = cls.polynomial.eval(r - 1e-4);
                    let right = cls.polynomial.eval(r + 1e-4);
                    if kind == 'C' {
                        assert!(left < 0.0 && right > 0.0, "{} should repel", entry.label);
                    } else {
                        assert!(left > 0.0 && right < 0.0, "{} should attract", entry.label);
                    }
                }
                _ => assert!(cls.interior_rest_points.is_empty(), "{}", entry.label),
            }
        }
    }
}
