//! Games and simplex states.
//!
//! A symmetric two-player game is a square payoff matrix: entry `(i, j)` is
//! the payoff of strategy `i` when matched against strategy `j`. Population
//! states live on the probability simplex over strategies. The transforms in
//! this module (negation, strategy relabeling, ordinal rank extraction) are
//! the building blocks for every invariance check in the rest of the crate.

use std::fmt;

use thiserror::Error;

/// Tolerance used when validating that a state sums to one.
pub const SIMPLEX_SUM_TOL: f64 = 1e-12;
/// Largest deviation from unit sum that constructors silently renormalize.
pub const SIMPLEX_RENORM_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum GameError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid payoff matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid population state: {0}")]
    InvalidState(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("bad preset parameter: {0}")]
    PresetParam(String),
}

/// Square payoff matrix of a symmetric two-player game.
///
/// Entries are stored row-major; `payoff(i, j)` is the payoff of strategy `i`
/// against strategy `j`. Strategies are indexed from 0 in the API; reports
/// and the CLI print them 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl PayoffMatrix {
    /// Builds a matrix from row-major entries. Requires `n >= 2`, exactly
    /// `n * n` finite entries.
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self, GameError> {
        if n < 2 {
            return Err(GameError::InvalidMatrix(format!(
                "need at least 2 strategies, got {n}"
            )));
        }
        if entries.len() != n * n {
            return Err(GameError::InvalidMatrix(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|v| !v.is_finite()) {
            return Err(GameError::InvalidMatrix(format!(
                "non-finite payoff {bad}"
            )));
        }
        Ok(PayoffMatrix { n, entries })
    }

    /// Builds a matrix from rows; every row must have length `rows.len()`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, GameError> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GameError::InvalidMatrix(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
        }
        PayoffMatrix::new(n, rows.concat())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Payoff of strategy `i` against strategy `j`.
    #[inline]
    pub fn payoff(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// Row `i` as a slice: the payoffs of strategy `i` against each opponent.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Flips the sign of every payoff, reversing the payoff order.
    pub fn negate(&self) -> PayoffMatrix {
        PayoffMatrix {
            n: self.n,
            entries: self.entries.iter().map(|v| -v).collect(),
        }
    }

    /// Relabels strategies: the result `B` satisfies `B(σ(i), σ(j)) = A(i, j)`.
    pub fn permute(&self, sigma: &Permutation) -> Result<PayoffMatrix, GameError> {
        if sigma.len() != self.n {
            return Err(GameError::InvalidPermutation(format!(
                "permutation over {} strategies applied to a {}-strategy game",
                sigma.len(),
                self.n
            )));
        }
        let mut entries = vec![0.0; self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                entries[sigma.apply(i) * self.n + sigma.apply(j)] = self.payoff(i, j);
            }
        }
        Ok(PayoffMatrix { n: self.n, entries })
    }

    /// Applies `f` to every entry. Useful for monotone payoff transforms.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<PayoffMatrix, GameError> {
        PayoffMatrix::new(self.n, self.entries.iter().map(|&v| f(v)).collect())
    }
}

impl fmt::Display for PayoffMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v}")).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Point on the `(n-1)`-simplex: nonnegative strategy shares summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct PopulationState {
    x: Vec<f64>,
}

impl PopulationState {
    /// Validates and normalizes shares. Inputs whose sum deviates from one by
    /// at most [`SIMPLEX_RENORM_TOL`] are renormalized; anything worse is
    /// rejected, as is any negative or non-finite share.
    pub fn new(x: Vec<f64>) -> Result<Self, GameError> {
        if x.len() < 2 {
            return Err(GameError::InvalidState(format!(
                "need at least 2 shares, got {}",
                x.len()
            )));
        }
        if let Some(bad) = x.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(GameError::InvalidState(format!("bad share {bad}")));
        }
        let sum: f64 = x.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_RENORM_TOL {
            return Err(GameError::InvalidState(format!(
                "shares sum to {sum}, outside the renormalization tolerance"
            )));
        }
        let mut x = x;
        for v in &mut x {
            *v /= sum;
        }
        Ok(PopulationState { x })
    }

    /// The barycenter `(1/n, ..., 1/n)`.
    pub fn uniform(n: usize) -> Self {
        PopulationState {
            x: vec![1.0 / n as f64; n],
        }
    }

    /// The monomorphic state with all mass on strategy `i`.
    pub fn vertex(n: usize, i: usize) -> Self {
        let mut x = vec![0.0; n];
        x[i] = 1.0;
        PopulationState { x }
    }

    /// Internal constructor for values already known to lie on the simplex
    /// (integrator output, exact transforms). Debug builds still check.
    pub(crate) fn from_normalized(x: Vec<f64>) -> Self {
        debug_assert!(x.iter().all(|v| *v >= 0.0));
        debug_assert!((x.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        PopulationState { x }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn share(&self, i: usize) -> f64 {
        self.x[i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.x
    }

    /// Strategies with strictly positive share, in index order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.x.len()).filter(|&i| self.x[i] > 0.0).collect()
    }

    /// True when every share is at least `margin`.
    pub fn is_interior(&self, margin: f64) -> bool {
        self.x.iter().all(|&v| v >= margin)
    }

    /// Relabels shares: mass on strategy `i` moves to label `σ(i)`.
    pub fn permute(&self, sigma: &Permutation) -> Result<PopulationState, GameError> {
        if sigma.len() != self.x.len() {
            return Err(GameError::InvalidPermutation(format!(
                "permutation over {} strategies applied to a {}-strategy state",
                sigma.len(),
                self.x.len()
            )));
        }
        let mut x = vec![0.0; self.x.len()];
        for i in 0..self.x.len() {
            x[sigma.apply(i)] = self.x[i];
        }
        Ok(PopulationState { x })
    }
}

impl fmt::Display for PopulationState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.x.iter().map(|v| format!("{v:.6}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Bijection on strategy indices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self, GameError> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(GameError::InvalidPermutation(format!(
                    "{map:?} is not a bijection on 0..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation(map))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Transposition swapping strategies `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, GameError> {
        if a >= n || b >= n || a == b {
            return Err(GameError::InvalidPermutation(format!(
                "cannot swap {a} and {b} among {n} strategies"
            )));
        }
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(a, b);
        Ok(Permutation(map))
    }

    /// All permutations of `0..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(current.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            map[v] = i;
        }
        Permutation(map)
    }

    /// The pairs moved by this permutation, if it is a transposition.
    pub fn as_transposition(&self) -> Option<(usize, usize)> {
        let moved: Vec<usize> = (0..self.0.len()).filter(|&i| self.0[i] != i).collect();
        match moved.as_slice() {
            [a, b] if self.0[*a] == *b && self.0[*b] == *a => Some((*a, *b)),
            _ => None,
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Dense ranks of the payoff entries: `ranks(i, j)` is the 1-based rank of
/// `π_ij` among the distinct payoff values (ties share a rank), and `k` is
/// the number of distinct payoffs. Two games with equal patterns induce the
/// same imitation dynamics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinalPattern {
    n: usize,
    ranks: Vec<usize>,
    k: usize,
}

impl OrdinalPattern {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self, i: usize, j: usize) -> usize {
        self.ranks[i * self.n + j]
    }

    /// Number of distinct payoff values.
    pub fn distinct(&self) -> usize {
        self.k
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
}

/// Extracts the dense payoff ranks of a matrix.
pub fn ordinal_pattern(game: &PayoffMatrix) -> OrdinalPattern {
    let n = game.n();
    let mut sorted: Vec<f64> = game.entries().to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sorted.dedup();
    let ranks = game
        .entries()
        .iter()
        .map(|v| sorted.partition_point(|s| s < v) + 1)
        .collect();
    OrdinalPattern {
        n,
        ranks,
        k: sorted.len(),
    }
}

/// Average payoffs at a state: the vector `π` with `π_i = Σ_j π_ij x_j` and
/// the population mean `π̄ = Σ_i x_i π_i`.
pub fn average_payoffs(x: &PopulationState, game: &PayoffMatrix) -> (Vec<f64>, f64) {
    let n = game.n();
    let mut per_strategy = vec![0.0; n];
    for i in 0..n {
        let row = game.row(i);
        per_strategy[i] = (0..n).map(|j| row[j] * x.share(j)).sum();
    }
    let mean = (0..n).map(|i| x.share(i) * per_strategy[i]).sum();
    (per_strategy, mean)
}

/// Parses the game-file format: optional `#` comment lines, then the strategy
/// count on its own line, then `n` rows of `n` whitespace-separated numbers.
/// Blank lines are skipped. Errors carry the 1-based line number.
pub fn parse_game(text: &str) -> Result<PayoffMatrix, GameError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(idx, line)| (idx + 1, line.trim_end_matches('\r').trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));

    let (n_line, n_text) = lines
        .next()
        .ok_or_else(|| GameError::Parse {
            line: 1,
            msg: "empty game file".into(),
        })?;
    let n: usize = n_text.parse().map_err(|_| GameError::Parse {
        line: n_line,
        msg: format!("expected the strategy count, found `{n_text}`"),
    })?;
    if n < 2 {
        return Err(GameError::Parse {
            line: n_line,
            msg: format!("need at least 2 strategies, got {n}"),
        });
    }

    let mut entries = Vec::with_capacity(n * n);
    let mut rows_read = 0;
    for (line_no, line) in lines {
        if rows_read == n {
            return Err(GameError::Parse {
                line: line_no,
                msg: format!("unexpected extra row after {n} payoff rows"),
            });
        }
        let mut row = Vec::with_capacity(n);
        for token in line.split_whitespace() {
            let value: f64 = token.parse().map_err(|_| GameError::Parse {
                line: line_no,
                msg: format!("malformed number `{token}`"),
            })?;
            row.push(value);
        }
        if row.len() != n {
            return Err(GameError::Parse {
                line: line_no,
                msg: format!("ragged row: expected {n} entries, found {}", row.len()),
            });
        }
        entries.extend(row);
        rows_read += 1;
    }
    if rows_read != n {
        return Err(GameError::Parse {
            line: text.lines().count(),
            msg: format!("expected {n} payoff rows, found {rows_read}"),
        });
    }
    PayoffMatrix::new(n, entries).map_err(|e| GameError::Parse {
        line: n_line,
        msg: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_plain_game() {
        let g = parse_game("2\n4 1\n3 2\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.entries(), &[4.0, 1.0, 3.0, 2.0]);
    }

    #[test]
    fn parses_zero_matrix_and_comments() {
        let g = parse_game("# degenerate all-ties game\n2\n0 0\n0 0\n").unwrap();
        assert_eq!(g.entries(), &[0.0; 4]);
        let g = parse_game("3\n0 -3 3\n2 0 -2\n-1 1 0\n").unwrap();
        assert_eq!(g.row(1), &[2.0, 0.0, -2.0]);
    }

    #[test]
    fn parses_crlf() {
        let g = parse_game("2\r\n1 2\r\n3 4\r\n").unwrap();
        assert_eq!(g.entries(), &[1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn parse_errors_name_lines() {
        match parse_game("2\n1 2\n3\n") {
            Err(GameError::Parse { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("ragged"));
            }
            other => panic!("expected ragged-row error, got {other:?}"),
        }
        match parse_game("2\n1 2\n3 x\n") {
            Err(GameError::Parse { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("malformed"));
            }
            other => panic!("expected malformed-number error, got {other:?}"),
        }
        match parse_game("1\n5\n") {
            Err(GameError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected strategy-count error, got {other:?}"),
        }
    }

    #[test]
    fn ordinal_pattern_examples() {
        let g = PayoffMatrix::from_rows(&[vec![4.0, 1.0], vec![3.0, 2.0]]).unwrap();
        let p = ordinal_pattern(&g);
        assert_eq!(p.ranks(), &[4, 1, 3, 2]);
        assert_eq!(p.distinct(), 4);

        let g = PayoffMatrix::from_rows(&[vec![10.0, 0.0], vec![3.0, 3.0]]).unwrap();
        let p = ordinal_pattern(&g);
        assert_eq!(p.ranks(), &[3, 1, 2, 2]);
        assert_eq!(p.distinct(), 3);

        let g = PayoffMatrix::from_rows(&[vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let p = ordinal_pattern(&g);
        assert_eq!(p.ranks(), &[1, 1, 1, 1]);
        assert_eq!(p.distinct(), 1);
    }

    #[test]
    fn negate_then_swap_fixes_self_negating_game() {
        // the cyclic game whose payoff negation equals itself with the last
        // two strategies relabeled
        let c2 = PayoffMatrix::from_rows(&[
            vec![0.0, -3.0, 3.0],
            vec![2.0, 0.0, -1.0],
            vec![-2.0, 1.0, 0.0],
        ])
        .unwrap();
        let swap = Permutation::transposition(3, 1, 2).unwrap();
        assert_eq!(c2.negate().permute(&swap).unwrap(), c2);
    }

    #[test]
    fn permute_identity_and_double_negation() {
        let g = PayoffMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(g.permute(&Permutation::identity(2)).unwrap(), g);
        assert_eq!(g.negate().negate(), g);
    }

    #[test]
    fn average_payoff_examples() {
        let g = PayoffMatrix::from_rows(&[vec![10.0, 0.0], vec![3.0, 3.0]]).unwrap();
        let x = PopulationState::new(vec![0.4, 0.6]).unwrap();
        let (pi, mean) = average_payoffs(&x, &g);
        assert!((pi[0] - 4.0).abs() < 1e-12);
        assert!((pi[1] - 3.0).abs() < 1e-12);
        assert!((mean - 3.4).abs() < 1e-12);

        // at a vertex the mean payoff is the diagonal entry
        let x = PopulationState::vertex(2, 1);
        let (_, mean) = average_payoffs(&x, &g);
        assert_eq!(mean, 3.0);

        let rps = PayoffMatrix::from_rows(&[
            vec![0.0, -1.0, 1.0],
            vec![1.0, 0.0, -1.0],
            vec![-1.0, 1.0, 0.0],
        ])
        .unwrap();
        let (pi, mean) = average_payoffs(&PopulationState::uniform(3), &rps);
        for v in pi {
            assert!(v.abs() < 1e-15);
        }
        assert!(mean.abs() < 1e-15);
    }

    #[test]
    fn state_constructor_tolerances() {
        // deviation within 1e-9 is renormalized
        let x = PopulationState::new(vec![0.5, 0.5 + 5e-10]).unwrap();
        assert!((x.as_slice().iter().sum::<f64>() - 1.0).abs() <= 1e-15);
        // worse deviations are rejected
        assert!(PopulationState::new(vec![0.5, 0.5 + 1e-8]).is_err());
        assert!(PopulationState::new(vec![-0.1, 1.1]).is_err());
    }

    fn arb_matrix(max_n: usize) -> impl Strategy<Value = PayoffMatrix> {
        (2..=max_n)
            .prop_flat_map(|n| {
                proptest::collection::vec(-5..=5i32, n * n)
                    .prop_map(move |v| {
                        PayoffMatrix::new(n, v.into_iter().map(f64::from).collect()).unwrap()
                    })
            })
    }

    fn arb_matrix_two_states(
        max_n: usize,
    ) -> impl Strategy<Value = (PayoffMatrix, PopulationState, PopulationState)> {
        (2..=max_n).prop_flat_map(|n| {
            (
                proptest::collection::vec(-5..=5i32, n * n),
                proptest::collection::vec(1e-3..1.0f64, n),
                proptest::collection::vec(1e-3..1.0f64, n),
            )
                .prop_map(move |(m, raw_x, raw_y)| {
                    let normalize = |raw: Vec<f64>| {
                        let sum: f64 = raw.iter().sum();
                        PopulationState::from_normalized(
                            raw.into_iter().map(|v| v / sum).collect(),
                        )
                    };
                    (
                        PayoffMatrix::new(n, m.into_iter().map(f64::from).collect()).unwrap(),
                        normalize(raw_x),
                        normalize(raw_y),
                    )
                })
        })
    }

    proptest! {
        #[test]
        fn ordinal_pattern_is_invariant_under_monotone_maps(g in arb_matrix(4)) {
            let base = ordinal_pattern(&g);
            let cubic = g.map(|t| t * t * t + 5.0 * t).unwrap();
            let expo = g.map(f64::exp).unwrap();
            prop_assert_eq!(&base, &ordinal_pattern(&cubic));
            prop_assert_eq!(&base, &ordinal_pattern(&expo));
        }

        #[test]
        fn permutation_roundtrip_is_exact(g in arb_matrix(5), seed in 0usize..120) {
            let all = Permutation::all(g.n());
            let sigma = &all[seed % all.len()];
            let back = g.permute(sigma).unwrap().permute(&sigma.inverse()).unwrap();
            prop_assert_eq!(back, g);
        }

        #[test]
        fn average_payoffs_linear_in_state(
            (g, x, y) in arb_matrix_two_states(4),
            lambda in 0.0..1.0f64,
        ) {
            let n = g.n();
            let blend: Vec<f64> = (0..n)
                .map(|i| lambda * x.share(i) + (1.0 - lambda) * y.share(i))
                .collect();
            let blend = PopulationState::from_normalized(blend);
            let (pi_b, _) = average_payoffs(&blend, &g);
            let (pi_x, _) = average_payoffs(&x, &g);
            let (pi_y, _) = average_payoffs(&y, &g);
            for i in 0..n {
                let expect = lambda * pi_x[i] + (1.0 - lambda) * pi_y[i];
                prop_assert!((pi_b[i] - expect).abs() <= 1e-12);
            }
        }
    }
}
