//! Reproduction reports: each target regenerates one bundled table or case
//! study from scratch and writes a machine-readable CSV plus a text summary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::analysis::{
    catalog, classify_two_strategy, find_rest_points, iterated_elimination, reduced_jacobian,
    self_negation_witness, strictly_dominated_pairs, weakly_dominated_pairs, CatalogEntry,
    RestPointReport,
};
use crate::dynamics::{ibr_field, replicator_field, two_strategy_polynomial, FieldKind};
use crate::flow::{
    integrate, lyapunov_h, orbit_classify, poincare_returns, IntegrationOptions, OrbitKind,
};
use crate::game::{ordinal_pattern, average_payoffs, PayoffMatrix, Permutation, PopulationState};
use crate::presets;
use crate::sampling;

use super::output::{format_f64, write_atomic};
use super::run::CliError;

/// Fresh evaluation nodes (distinct from the interpolation nodes) used to
/// compare interpolated polynomials against their closed forms.
pub fn fresh_nodes() -> Vec<f64> {
    (1..=20).map(|k| k as f64 / 21.0).collect()
}

const TARGETS: [&str; 8] = [
    "table2",
    "table3",
    "table4",
    "table5",
    "example2",
    "example3",
    "example4",
    "rps-symmetric",
];

/// Regenerates one report target into `out_dir`, returning the written paths.
pub fn reproduce(target: &str, out_dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let (csv, txt) = match target {
        "table2" => closed_form_report(&['D', 'W'], false),
        "table3" => closed_form_report(&['C'], true),
        "table4" => closed_form_report(&['A'], true),
        "table5" => table5_report()?,
        "example2" => example2_report(),
        "example3" => example3_report()?,
        "example4" => example4_report()?,
        "rps-symmetric" => rps_symmetric_report()?,
        other => {
            return Err(CliError::Input(format!(
                "unknown reproduce target `{other}`; available: {}",
                TARGETS.join(", ")
            )))
        }
    };
    std::fs::create_dir_all(out_dir)?;
    let csv_path = out_dir.join(format!("{target}.csv"));
    let txt_path = out_dir.join(format!("{target}.txt"));
    write_atomic(&csv_path, &csv)?;
    write_atomic(&txt_path, &txt)?;
    Ok(vec![csv_path, txt_path])
}

fn entries_of_kind(kinds: &[char]) -> Vec<CatalogEntry> {
    catalog()
        .into_iter()
        .filter(|e| kinds.contains(&e.label.chars().next().unwrap()))
        .collect()
}

/// Closed-form check for the two-strategy tables: the interpolated edge
/// polynomial of every catalog game against its table row, on fresh nodes.
fn closed_form_report(kinds: &[char], with_rest_point: bool) -> (String, String) {
    let mut csv = String::from("label,row_id,formula");
    if with_rest_point {
        csv.push_str(",interior_rest_point");
    }
    csv.push_str(",c0,c1,c2,c3,c4,max_abs_dev\n");
    let mut txt = String::from("closed-form edge dynamics check (dx/dt in the share of strategy 1)\n");
    for entry in entries_of_kind(kinds) {
        let poly = two_strategy_polynomial(&entry.game).expect("catalog games interpolate");
        let dev = fresh_nodes()
            .iter()
            .map(|&t| (poly.eval(t) - entry.row.eval(t)).abs())
            .fold(0.0, f64::max);
        let _ = write!(csv, "{},{},{}", entry.label, entry.row.id(), entry.row.formula());
        if with_rest_point {
            let class = classify_two_strategy(&entry.game).expect("2x2");
            let roots: Vec<String> = class
                .interior_rest_points
                .iter()
                .map(|r| format_f64(*r))
                .collect();
            let _ = write!(csv, ",{}", roots.join(";"));
        }
        for c in poly.coeffs() {
            let _ = write!(csv, ",{}", format_f64(*c));
        }
        let _ = writeln!(csv, ",{}", format_f64(dev));
        let _ = writeln!(
            txt,
            "  {:>4}: dx/dt = {:<22} max deviation {:.2e}",
            entry.label,
            entry.row.formula(),
            dev
        );
    }
    (csv, txt)
}

fn eig_cols(report: &RestPointReport) -> String {
    let mut parts = Vec::new();
    for e in &report.eigenvalues {
        parts.push(format_f64(e.re));
        parts.push(format_f64(e.im));
    }
    parts.join(",")
}

/// Stability of the nine ordered cyclic games, the negation duality behind
/// the attracting row, and return-map confirmation of the centers.
fn table5_report() -> Result<(String, String), CliError> {
    let mut csv = String::from(
        "label,x1,x2,x3,class,eig1_re,eig1_im,eig2_re,eig2_im,duality_ok,negation_partner,orbit\n",
    );
    let mut txt = String::from("ordered cyclic games: interior rest points and stability\n");
    let opts = IntegrationOptions::with_tol(1e-12);

    for (label, _) in presets::TABLE5.iter() {
        let game = presets::preset(&format!("table5-{label}")).unwrap();
        let scan =
            find_rest_points(&game, FieldKind::Ibr).map_err(|e| CliError::Numerical(e.to_string()))?;
        let interior = scan.interior();
        let report = interior
            .first()
            .ok_or_else(|| CliError::Numerical(format!("{label}: no interior rest point found")))?;

        // time reversal negates the spectrum exactly; check it numerically
        let neg_jac = reduced_jacobian(&game.negate(), FieldKind::Ibr, &report.location)
            .map_err(|e| CliError::Numerical(e.to_string()))?;
        let neg_eigs = neg_jac.eigenvalues();
        let mut mirrored: Vec<_> = neg_eigs.iter().map(|e| -e).collect();
        mirrored.sort_by(|p, q| p.re.partial_cmp(&q.re).unwrap().then(p.im.partial_cmp(&q.im).unwrap()));
        let duality_ok = report
            .eigenvalues
            .iter()
            .zip(&mirrored)
            .all(|(a, b)| (a - b).norm() <= 1e-6);

        let partner = negation_partner(&game);

        let orbit = if label.starts_with('C') {
            let x0 = on_section_start(&report.location);
            let returns =
                poincare_returns(&game, FieldKind::Ibr, &x0, (1, 2), 2, 200.0, &opts)
                    .map_err(|e| CliError::Numerical(e.to_string()))?;
            let traj = integrate(&game, FieldKind::Ibr, &x0, 200.0, &opts)
                .map_err(|e| CliError::Numerical(e.to_string()))?;
            match orbit_classify(&returns, &traj, &[]) {
                Ok(verdict) => match verdict.kind {
                    OrbitKind::ClosedOrbit { .. } => "closed_orbit".to_string(),
                    other => format!("{other}"),
                },
                Err(_) => "ambiguous".to_string(),
            }
        } else {
            "-".to_string()
        };

        let loc = report.location.as_slice();
        let _ = writeln!(
            csv,
            "{label},{},{},{},{},{},{duality_ok},{partner},{orbit}",
            format_f64(loc[0]),
            format_f64(loc[1]),
            format_f64(loc[2]),
            report.class,
            eig_cols(report),
        );
        let _ = writeln!(
            txt,
            "  {label}: rest point {} is {} (negation partner: {partner}{})",
            report.location,
            report.class,
            if orbit == "-" { String::new() } else { format!("; returns: {orbit}") }
        );
    }
    txt.push_str(
        "reversing the payoff order and relabeling maps each attracting game onto a repelling one,\n\
         so their spectra are negatives of each other; centers are confirmed by closed returns.\n",
    );
    Ok((csv, txt))
}

/// Searches the attracting/repelling rows for the relabeling that exhibits a
/// game as the payoff negation of another.
fn negation_partner(game: &PayoffMatrix) -> String {
    let negated = game.negate();
    for (other_label, _) in presets::TABLE5.iter() {
        let other = presets::preset(&format!("table5-{other_label}")).unwrap();
        for sigma in Permutation::all(3) {
            if negated.permute(&sigma).unwrap() == other {
                let desc = match sigma.as_transposition() {
                    Some((a, b)) => format!("swap({},{})", a + 1, b + 1),
                    None if sigma == Permutation::identity(3) => "identity".to_string(),
                    None => format!("{:?}", sigma.as_slice()),
                };
                return format!("{other_label} via {desc}");
            }
        }
    }
    "none".to_string()
}

/// A start on the section x2 = x3, nudged away from the rest point toward
/// the first vertex.
fn on_section_start(rest_point: &PopulationState) -> PopulationState {
    let x1 = rest_point.share(0);
    let bumped = x1 + 0.5 * (1.0 - x1);
    let rest = (1.0 - bumped) / 2.0;
    PopulationState::new(vec![bumped, rest, rest]).unwrap()
}

/// The two-strategy game where the imitation flow runs against the payoff
/// ordering on a whole interval of states.
fn example2_report() -> (String, String) {
    let game = presets::preset("example2").unwrap();
    let mut csv = String::from("x,pi1,pi2,ibr_dx,rd_dx,violates_monotonicity\n");
    let mut violation_lo: Option<f64> = None;
    let mut violation_hi: Option<f64> = None;
    for k in 1..=199 {
        let share = k as f64 / 200.0;
        let x = PopulationState::new(vec![share, 1.0 - share]).unwrap();
        let (pi, _) = average_payoffs(&x, &game);
        let ibr = ibr_field(&x, &game).component(0);
        let rd = replicator_field(&x, &game).component(0);
        let violates = pi[0] > pi[1] && ibr < 0.0;
        if violates {
            violation_lo.get_or_insert(share);
            violation_hi = Some(share);
        }
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            format_f64(share),
            format_f64(pi[0]),
            format_f64(pi[1]),
            format_f64(ibr),
            format_f64(rd),
            violates as u8
        );
    }
    let mut txt = String::from("payoff monotonicity and positivity both fail here\n");
    let _ = writeln!(
        txt,
        "game rows: {:?} / {:?}",
        game.row(0),
        game.row(1)
    );
    let _ = writeln!(
        txt,
        "strategy 1 has the higher average payoff for x > 0.3, yet its share falls until x = 0.5"
    );
    if let (Some(lo), Some(hi)) = (violation_lo, violation_hi) {
        let _ = writeln!(
            txt,
            "sampled violation interval: [{}, {}] (expected (0.3, 0.5))",
            format_f64(lo),
            format_f64(hi)
        );
    }
    (csv, txt)
}

/// Dominance traces and survival probes for the four three-strategy studies.
fn example3_report() -> Result<(String, String), CliError> {
    let mut csv = String::from("record,game,alpha,first,second,value\n");
    let mut txt = String::from("dominance elimination and survival probes\n");
    let opts = IntegrationOptions::default();

    for label in ["A1", "A2"] {
        let game = presets::example3(label, presets::DEFAULT_ALPHA).unwrap();
        for (i, j) in strictly_dominated_pairs(&game) {
            let _ = writeln!(csv, "strict_pair,{label},,{},{},", i + 1, j + 1);
        }
        for (i, j) in weakly_dominated_pairs(&game) {
            let _ = writeln!(csv, "weak_advisory,{label},,{},{},", i + 1, j + 1);
        }
        let trace = iterated_elimination(&game);
        for round in &trace.rounds {
            let _ = writeln!(
                csv,
                "elimination_round,{label},,{},{},",
                round.dominator + 1,
                round.eliminated + 1
            );
        }
        let survivors: Vec<String> =
            trace.survivors.iter().map(|v| (v + 1).to_string()).collect();
        let _ = writeln!(csv, "survivors,{label},,,,{}", survivors.join(";"));
        let _ = writeln!(
            txt,
            "  {label}: rounds {:?}, survivors {{{}}}",
            trace
                .rounds
                .iter()
                .map(|r| format!("({},{})", r.dominator + 1, r.eliminated + 1))
                .collect::<Vec<_>>(),
            survivors.join(",")
        );
    }
    txt.push_str("  (weak dominance is advisory only: it is never used to eliminate)\n");

    // strategy 2 is dominated only by a mixture of 1 and 3 when alpha < 2.5;
    // the flow keeps it alive exactly when the reversed ordering makes the
    // half-way plane absorbing
    let alpha = presets::DEFAULT_ALPHA;
    for (label, strategy) in [("A3", 1usize), ("A4", 1usize)] {
        let game = presets::example3(label, alpha).unwrap();
        let fraction = crate::flow::survival_probe(
            &game,
            FieldKind::Ibr,
            strategy,
            100,
            crate::flow::PROBE_HORIZON,
            crate::flow::SURVIVAL_THRESHOLD,
            &opts,
        )
        .map_err(|e| CliError::Numerical(e.to_string()))?;
        let _ = writeln!(
            csv,
            "survival_probe,{label},{alpha},{},,{}",
            strategy + 1,
            format_f64(fraction)
        );
        let _ = writeln!(
            txt,
            "  {label} (alpha = {alpha}): strategy {} survives from {:.0}% of 100 interior starts",
            strategy + 1,
            fraction * 100.0
        );
    }
    let a2 = presets::example3("A2", alpha).unwrap();
    let fraction = crate::flow::survival_probe(
        &a2,
        FieldKind::Ibr,
        2,
        100,
        crate::flow::PROBE_HORIZON,
        crate::flow::SURVIVAL_THRESHOLD,
        &opts,
    )
    .map_err(|e| CliError::Numerical(e.to_string()))?;
    let _ = writeln!(csv, "survival_probe,A2,,3,,{}", format_f64(fraction));
    let _ = writeln!(
        txt,
        "  A2: the dominated strategy 3 survives from {:.0}% of 100 interior starts",
        fraction * 100.0
    );
    Ok((csv, txt))
}

/// The cyclic game with two interior rest points, and the self-negating game
/// whose closed orbits coexist with a pure attractor.
fn example4_report() -> Result<(String, String), CliError> {
    let mut csv = String::from("record,game,x1,x2,x3,class,eig1_re,eig1_im,eig2_re,eig2_im\n");
    let mut txt = String::new();
    let opts = IntegrationOptions::with_tol(1e-12);

    let z = presets::zeeman_z();
    let scan =
        find_rest_points(&z, FieldKind::Ibr).map_err(|e| CliError::Numerical(e.to_string()))?;
    let interior = scan.interior();
    let _ = writeln!(
        txt,
        "game Z has {} interior rest points (impossible under the replicator dynamics\n\
         in non-degenerate games):",
        interior.len()
    );
    for report in &interior {
        let loc = report.location.as_slice();
        let _ = writeln!(
            csv,
            "rest_point,Z,{},{},{},{},{}",
            format_f64(loc[0]),
            format_f64(loc[1]),
            format_f64(loc[2]),
            report.class,
            eig_cols(report),
        );
        let _ = writeln!(txt, "  {} -> {}", report.location, report.class);
    }

    let w = presets::game_w();
    let witness = self_negation_witness(&w);
    let witness_desc = match &witness {
        Some(sigma) => match sigma.as_transposition() {
            Some((a, b)) => format!("swap({},{})", a + 1, b + 1),
            None => format!("{:?}", sigma.as_slice()),
        },
        None => "none".to_string(),
    };
    let _ = writeln!(csv, "self_negation,W,,,,{witness_desc},");
    let _ = writeln!(txt, "game W is self-negating: witness {witness_desc}");

    let w_scan =
        find_rest_points(&w, FieldKind::Ibr).map_err(|e| CliError::Numerical(e.to_string()))?;
    let w_interior = w_scan.interior();
    for report in &w_interior {
        let loc = report.location.as_slice();
        let _ = writeln!(
            csv,
            "rest_point,W,{},{},{},{},{}",
            format_f64(loc[0]),
            format_f64(loc[1]),
            format_f64(loc[2]),
            report.class,
            eig_cols(report),
        );
        let _ = writeln!(txt, "  interior rest point {} -> {}", report.location, report.class);
    }

    // probe the split interior: near the rest point the returns close up,
    // while from deep in the basin the flow reaches the third vertex
    if let Some(report) = w_interior.first() {
        let near = blend(report.location.as_slice(), &[1.0 / 3.0; 3], 0.75);
        let returns = poincare_returns(&w, FieldKind::Ibr, &near, (0, 2), 2, 400.0, &opts)
            .map_err(|e| CliError::Numerical(e.to_string()))?;
        let traj = integrate(&w, FieldKind::Ibr, &near, 400.0, &opts)
            .map_err(|e| CliError::Numerical(e.to_string()))?;
        let verdict = match orbit_classify(&returns, &traj, &[]) {
            Ok(v) => format!("{}", v.kind),
            Err(_) => "ambiguous".to_string(),
        };
        let _ = writeln!(
            csv,
            "orbit_probe,W,{},{},{},{verdict},",
            format_f64(near.share(0)),
            format_f64(near.share(1)),
            format_f64(near.share(2))
        );
        let _ = writeln!(txt, "  from {near}: {verdict}");

        let deep = PopulationState::new(vec![0.05, 0.05, 0.9]).unwrap();
        let traj = integrate(&w, FieldKind::Ibr, &deep, 400.0, &opts)
            .map_err(|e| CliError::Numerical(e.to_string()))?;
        let final_share = traj.final_state().share(2);
        let _ = writeln!(
            csv,
            "basin_probe,W,{},{},{},x3_final={},",
            format_f64(deep.share(0)),
            format_f64(deep.share(1)),
            format_f64(deep.share(2)),
            format_f64(final_share)
        );
        let _ = writeln!(
            txt,
            "  from {deep}: share of strategy 3 reaches {final_share:.6} (basin of the pure state)"
        );
    }
    Ok((csv, txt))
}

fn blend(a: &[f64], b: &[f64], weight_a: f64) -> PopulationState {
    let mixed: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(p, q)| weight_a * p + (1.0 - weight_a) * q)
        .collect();
    PopulationState::new(mixed).unwrap()
}

/// Order-of-payoffs check, the pointwise speed-factor identity, and the
/// conservation of the relative-entropy potential for cyclic games.
fn rps_symmetric_report() -> Result<(String, String), CliError> {
    let mut csv = String::from("record,a,b,value,threshold,pass\n");
    let mut txt = String::from("cyclic games with payoffs {0, -a, b}\n");

    let standard = presets::symmetric_rps(1.0, 1.0).unwrap();
    let reference = ordinal_pattern(&standard);
    for (a, b) in [(1.0, 1.0), (2.0, 5.0)] {
        let game = presets::symmetric_rps(a, b).unwrap();
        let same = ordinal_pattern(&game) == reference;
        let _ = writeln!(csv, "order_check,{a},{b},{},1,{same}", same as u8);
        let _ = writeln!(txt, "  (a={a}, b={b}): payoff order matches the unit game: {same}");
    }

    // pointwise identity: the imitation field is the replicator field slowed
    // by the positive factor 1 - xy - xz - yz
    let mut max_dev = 0.0f64;
    for x in sampling::interior_states(3, 1000) {
        let s = x.as_slice();
        let factor = 1.0 - s[0] * s[1] - s[0] * s[2] - s[1] * s[2];
        let ibr = ibr_field(&x, &standard);
        let rd = replicator_field(&x, &standard);
        for i in 0..3 {
            max_dev = max_dev.max((ibr.component(i) - rd.component(i) * factor).abs());
        }
    }
    let pass = max_dev <= 1e-12;
    let _ = writeln!(csv, "speed_factor_identity,1,1,{},1e-12,{pass}", format_f64(max_dev));
    let _ = writeln!(
        txt,
        "  speed-factor identity |ibr - (1-xy-xz-yz)*rd|: max {max_dev:.2e} over 1000 states"
    );

    let x0 = PopulationState::new(vec![0.5, 0.3, 0.2]).unwrap();
    let center = PopulationState::uniform(3);
    let opts = IntegrationOptions {
        abs_tol: 1e-12,
        ..Default::default()
    };
    let traj = integrate(&standard, FieldKind::Ibr, &x0, 100.0, &opts)
        .map_err(|e| CliError::Numerical(e.to_string()))?;
    let h0 = lyapunov_h(&x0, &center).map_err(|e| CliError::Numerical(e.to_string()))?;
    let mut drift = 0.0f64;
    for s in &traj.states {
        let h = lyapunov_h(s, &center).map_err(|e| CliError::Numerical(e.to_string()))?;
        drift = drift.max((h - h0).abs());
    }
    let pass = drift <= 1e-6;
    let _ = writeln!(csv, "potential_drift,1,1,{},1e-6,{pass}", format_f64(drift));
    let _ = writeln!(
        txt,
        "  relative-entropy drift along T=100 trajectory: {drift:.2e} (closed orbits)"
    );
    Ok((csv, txt))
}
