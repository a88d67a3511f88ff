//! Named preset games.
//!
//! Every game used by the reproduction reports ships here under a stable
//! label (`table1-D9`, `table5-C2`, `zeeman-Z`, ...). Parameterized presets
//! accept a query suffix, e.g. `example3-A4?alpha=2.5` or
//! `rps-symmetric?a=2&b=5`.

use crate::game::{GameError, PayoffMatrix};

/// Two-strategy catalog entries: label plus payoff rows.
pub const TABLE1: [(&str, [[f64; 2]; 2]); 30] = [
    ("D1", [[4.0, 3.0], [2.0, 1.0]]),
    ("D2", [[4.0, 3.0], [1.0, 2.0]]),
    ("D3", [[4.0, 2.0], [3.0, 1.0]]),
    ("D4", [[3.0, 4.0], [2.0, 1.0]]),
    ("D5", [[3.0, 4.0], [1.0, 2.0]]),
    ("D6", [[2.0, 4.0], [1.0, 3.0]]),
    ("D7", [[3.0, 3.0], [2.0, 1.0]]),
    ("D8", [[3.0, 3.0], [1.0, 2.0]]),
    ("D9", [[3.0, 2.0], [2.0, 1.0]]),
    ("D10", [[2.0, 3.0], [1.0, 2.0]]),
    ("D11", [[3.0, 2.0], [1.0, 1.0]]),
    ("D12", [[2.0, 3.0], [1.0, 1.0]]),
    ("W1", [[3.0, 2.0], [3.0, 1.0]]),
    ("W2", [[2.0, 3.0], [1.0, 3.0]]),
    ("W3", [[3.0, 2.0], [1.0, 2.0]]),
    ("W4", [[2.0, 3.0], [2.0, 1.0]]),
    ("W5", [[3.0, 1.0], [2.0, 1.0]]),
    ("W6", [[1.0, 3.0], [1.0, 2.0]]),
    ("C1", [[4.0, 2.0], [1.0, 3.0]]),
    ("C2", [[4.0, 1.0], [3.0, 2.0]]),
    ("C3", [[4.0, 1.0], [2.0, 3.0]]),
    ("C4", [[3.0, 2.0], [1.0, 3.0]]),
    ("C5", [[3.0, 1.0], [2.0, 2.0]]),
    ("C6", [[3.0, 1.0], [1.0, 2.0]]),
    ("A1", [[2.0, 4.0], [3.0, 1.0]]),
    ("A2", [[1.0, 4.0], [3.0, 2.0]]),
    ("A3", [[1.0, 4.0], [2.0, 3.0]]),
    ("A4", [[2.0, 3.0], [3.0, 1.0]]),
    ("A5", [[1.0, 3.0], [2.0, 2.0]]),
    ("A6", [[1.0, 3.0], [2.0, 1.0]]),
];

/// The nine cyclic three-strategy games with ordered payoffs: repelling
/// interior rest point in the A row, attracting in B, centers in C.
pub const TABLE5: [(&str, [[f64; 3]; 3]); 9] = [
    ("A1", [[0.0, -3.0, 3.0], [2.0, 0.0, -2.0], [-1.0, 1.0, 0.0]]),
    ("A2", [[0.0, -2.0, 3.0], [2.0, 0.0, -1.0], [-3.0, 1.0, 0.0]]),
    ("A3", [[0.0, -1.0, 3.0], [2.0, 0.0, -3.0], [-2.0, 1.0, 0.0]]),
    ("B1", [[0.0, -3.0, 3.0], [1.0, 0.0, -1.0], [-2.0, 2.0, 0.0]]),
    ("B2", [[0.0, -1.0, 3.0], [1.0, 0.0, -2.0], [-3.0, 2.0, 0.0]]),
    ("B3", [[0.0, -2.0, 3.0], [1.0, 0.0, -3.0], [-1.0, 2.0, 0.0]]),
    ("C1", [[0.0, -1.0, 3.0], [2.0, 0.0, -2.0], [-3.0, 1.0, 0.0]]),
    ("C2", [[0.0, -3.0, 3.0], [2.0, 0.0, -1.0], [-2.0, 1.0, 0.0]]),
    ("C3", [[0.0, -2.0, 3.0], [2.0, 0.0, -3.0], [-1.0, 1.0, 0.0]]),
];

/// Cyclic game with two interior rest points under the imitation dynamics.
pub fn zeeman_z() -> PayoffMatrix {
    PayoffMatrix::from_rows(&[
        vec![0.0, 6.0, -4.0],
        vec![-3.0, 0.0, 5.0],
        vec![-1.0, 3.0, 0.0],
    ])
    .unwrap()
}

/// Self-negating game in which closed orbits coexist with a basin of
/// attraction of the third pure state.
pub fn game_w() -> PayoffMatrix {
    PayoffMatrix::from_rows(&[
        vec![0.0, 4.0, 3.0],
        vec![1.0, 3.0, 5.0],
        vec![3.0, 2.0, 6.0],
    ])
    .unwrap()
}

/// Cyclic game with payoffs `0`, `-a`, `b` (`a, b > 0`); every choice induces
/// the same payoff order as the unit game.
pub fn symmetric_rps(a: f64, b: f64) -> Result<PayoffMatrix, GameError> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(GameError::PresetParam(format!(
            "rps-symmetric needs a > 0 and b > 0, got a={a}, b={b}"
        )));
    }
    PayoffMatrix::from_rows(&[
        vec![0.0, -a, b],
        vec![b, 0.0, -a],
        vec![-a, b, 0.0],
    ])
}

/// Three-strategy dominance studies: `A1`/`A2` for pure elimination, `A3`/`A4`
/// for survival of a strategy dominated only by mixtures (`alpha` in `(1, 4)`).
pub fn example3(label: &str, alpha: f64) -> Result<PayoffMatrix, GameError> {
    match label {
        "A1" => PayoffMatrix::from_rows(&[
            vec![1.0, 1.0, 2.0],
            vec![1.0, 1.0, 1.0],
            vec![0.0, 0.0, 0.0],
        ]),
        "A2" => PayoffMatrix::from_rows(&[
            vec![3.0, 2.0, 0.0],
            vec![2.0, 1.0, 3.0],
            vec![1.0, 0.0, 2.0],
        ]),
        "A3" | "A4" => {
            if !(alpha > 1.0 && alpha < 4.0) {
                return Err(GameError::PresetParam(format!(
                    "example3-{label} needs alpha in (1, 4), got {alpha}"
                )));
            }
            let mid = vec![alpha, alpha, alpha];
            if label == "A3" {
                PayoffMatrix::from_rows(&[vec![4.0, 4.0, 1.0], mid, vec![1.0, 1.0, 4.0]])
            } else {
                PayoffMatrix::from_rows(&[vec![1.0, 1.0, 4.0], mid, vec![4.0, 4.0, 1.0]])
            }
        }
        _ => Err(GameError::UnknownPreset(format!("example3-{label}"))),
    }
}

pub const DEFAULT_ALPHA: f64 = 2.0;

fn lookup_table1(label: &str) -> Option<PayoffMatrix> {
    TABLE1
        .iter()
        .find(|(name, _)| *name == label)
        .map(|(_, rows)| {
            PayoffMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()]).unwrap()
        })
}

fn lookup_table5(label: &str) -> Option<PayoffMatrix> {
    TABLE5
        .iter()
        .find(|(name, _)| *name == label)
        .map(|(_, rows)| {
            PayoffMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec(), rows[2].to_vec()])
                .unwrap()
        })
}

fn parse_params(query: &str) -> Result<Vec<(String, f64)>, GameError> {
    let mut out = Vec::new();
    for pair in query.split('&').filter(|p| !p.is_empty()) {
        let (key, value) = pair.split_once('=').ok_or_else(|| {
            GameError::PresetParam(format!("expected key=value, got `{pair}`"))
        })?;
        let value: f64 = value.parse().map_err(|_| {
            GameError::PresetParam(format!("malformed value for `{key}`: `{value}`"))
        })?;
        out.push((key.to_string(), value));
    }
    Ok(out)
}

fn single_param(params: &[(String, f64)], allowed: &[&str]) -> Result<(), GameError> {
    for (key, _) in params {
        if !allowed.contains(&key.as_str()) {
            return Err(GameError::PresetParam(format!(
                "unknown parameter `{key}` (allowed: {})",
                allowed.join(", ")
            )));
        }
    }
    Ok(())
}

/// Resolves a preset name (with optional `?key=value` parameters) to a game.
pub fn preset(name: &str) -> Result<PayoffMatrix, GameError> {
    let (base, query) = match name.split_once('?') {
        Some((b, q)) => (b, q),
        None => (name, ""),
    };
    let params = parse_params(query)?;
    let get = |key: &str, default: f64| {
        params
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| *v)
            .unwrap_or(default)
    };

    match base {
        "example1" => {
            single_param(&params, &[])?;
            Ok(lookup_table1("C2").unwrap())
        }
        "example2" => {
            single_param(&params, &[])?;
            PayoffMatrix::from_rows(&[vec![10.0, 0.0], vec![3.0, 3.0]])
        }
        "rps-standard" => {
            single_param(&params, &[])?;
            symmetric_rps(1.0, 1.0)
        }
        "rps-symmetric" => {
            single_param(&params, &["a", "b"])?;
            symmetric_rps(get("a", 1.0), get("b", 1.0))
        }
        "zeeman-Z" | "example4-Z" => {
            single_param(&params, &[])?;
            Ok(zeeman_z())
        }
        "zeeman-W" | "example4-W" => {
            single_param(&params, &[])?;
            Ok(game_w())
        }
        _ => {
            if let Some(label) = base.strip_prefix("table1-") {
                single_param(&params, &[])?;
                return lookup_table1(label)
                    .ok_or_else(|| GameError::UnknownPreset(name.to_string()));
            }
            if let Some(label) = base.strip_prefix("table5-") {
                single_param(&params, &[])?;
                return lookup_table5(label)
                    .ok_or_else(|| GameError::UnknownPreset(name.to_string()));
            }
            if let Some(label) = base.strip_prefix("example3-") {
                single_param(&params, &["alpha"])?;
                return example3(label, get("alpha", DEFAULT_ALPHA));
            }
            Err(GameError::UnknownPreset(name.to_string()))
        }
    }
}

/// All fixed preset names, for error messages and docs.
pub fn preset_names() -> Vec<String> {
    let mut names = vec![
        "example1".to_string(),
        "example2".to_string(),
        "example3-A1".to_string(),
        "example3-A2".to_string(),
        "example3-A3".to_string(),
        "example3-A4".to_string(),
        "rps-standard".to_string(),
        "rps-symmetric".to_string(),
        "zeeman-Z".to_string(),
        "zeeman-W".to_string(),
    ];
    names.extend(TABLE1.iter().map(|(l, _)| format!("table1-{l}")));
    names.extend(TABLE5.iter().map(|(l, _)| format!("table5-{l}")));
    names.sort();
    names
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_preset_resolves() {
        for name in preset_names() {
            preset(&name).unwrap_or_else(|e| panic!("preset {name}: {e}"));
        }
    }

    #[test]
    fn table_sizes() {
        assert_eq!(TABLE1.len(), 30);
        assert_eq!(TABLE5.len(), 9);
    }

    #[test]
    fn parameterized_presets() {
        let g = preset("example3-A4?alpha=2.5").unwrap();
        assert_eq!(g.payoff(1, 0), 2.5);
        let g = preset("rps-symmetric?a=2&b=5").unwrap();
        assert_eq!(g.payoff(0, 1), -2.0);
        assert_eq!(g.payoff(0, 2), 5.0);
        assert!(preset("example3-A3?alpha=4").is_err());
        assert!(preset("example3-A3?alpha=1").is_err());
        assert!(preset("rps-symmetric?a=0").is_err());
        assert!(preset("rps-symmetric?c=1").is_err());
        assert!(preset("no-such-game").is_err());
    }

    #[test]
    fn zeeman_and_w_entries() {
        let z = zeeman_z();
        assert_eq!(z.row(0), &[0.0, 6.0, -4.0]);
        assert_eq!(z.row(1), &[-3.0, 0.0, 5.0]);
        let w = game_w();
        assert_eq!(w.row(2), &[3.0, 2.0, 6.0]);
    }
}
