//! Subcommand dispatch.
//!
//! Every subcommand resolves a game (file or preset), runs the requested
//! analysis, and delivers one primary text artifact either to stdout or
//! atomically to `--out`. All output is deterministic for fixed inputs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::analysis::{
    classify_two_strategy, find_rest_points, iterated_elimination, strictly_dominated_pairs,
    weakly_dominated_pairs, RestPointScan,
};
use crate::dynamics::{field, FieldKind};
use crate::flow::{integrate, orbit_classify, poincare_returns, IntegrationOptions, Trajectory};
use crate::game::{parse_game, GameError, PayoffMatrix, PopulationState};
use crate::presets;
use crate::sampling;
use crate::stochastic::{deviation_report, simulate, AgentPopulation, SimConfig};

use super::output::{format_f64, write_atomic};
use super::phase_svg::emit_phase_svg;
use super::reproduce::reproduce;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code: 2 for input problems, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Clone)]
pub enum GameSource {
    File(PathBuf),
    Preset(String),
}

impl GameSource {
    pub fn load(&self) -> Result<PayoffMatrix, CliError> {
        match self {
            GameSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Input(format!("cannot read {}: {e}", path.display()))
                })?;
                Ok(parse_game(&text)?)
            }
            GameSource::Preset(name) => presets::preset(name).map_err(|e| match e {
                GameError::UnknownPreset(name) => CliError::Input(format!(
                    "unknown preset `{name}`; available: {}",
                    presets::preset_names().join(", ")
                )),
                other => CliError::Input(other.to_string()),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Txt,
    Csv,
    Svg,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "txt" => Ok(OutputFormat::Txt),
            "csv" => Ok(OutputFormat::Csv),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(format!("unknown format `{other}` (txt|csv|svg)")),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Command {
    Field {
        source: GameSource,
        kind: FieldKind,
        x0: Vec<f64>,
        format: OutputFormat,
        out: Option<PathBuf>,
    },
    RestPoints {
        source: GameSource,
        kind: FieldKind,
        format: OutputFormat,
        out: Option<PathBuf>,
    },
    Classify2 {
        source: GameSource,
        format: OutputFormat,
        out: Option<PathBuf>,
    },
    Dominance {
        source: GameSource,
        format: OutputFormat,
        out: Option<PathBuf>,
    },
    Integrate {
        source: GameSource,
        kind: FieldKind,
        x0: Vec<f64>,
        horizon: f64,
        grid: usize,
        out: Option<PathBuf>,
    },
    Orbit {
        source: GameSource,
        kind: FieldKind,
        x0: Vec<f64>,
        section: Option<(usize, usize)>,
        max_returns: usize,
        horizon: f64,
        out: Option<PathBuf>,
    },
    Simulate {
        source: GameSource,
        seed: u64,
        agents: usize,
        x0: Vec<f64>,
        horizon: f64,
        grid: usize,
        replicates: usize,
        self_exclusion: bool,
        out: Option<PathBuf>,
    },
    Phase {
        source: GameSource,
        kind: FieldKind,
        starts: Vec<Vec<f64>>,
        horizon: f64,
        out: Option<PathBuf>,
    },
    Reproduce {
        target: String,
        out_dir: PathBuf,
    },
}

fn deliver(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            write_atomic(path, content)?;
            println!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn state_from(values: &[f64], n: usize) -> Result<PopulationState, CliError> {
    if values.len() != n {
        return Err(CliError::Input(format!(
            "--x0 has {} shares but the game has {n} strategies",
            values.len()
        )));
    }
    PopulationState::new(values.to_vec())
        .map_err(|e| CliError::Input(format!("bad --x0: {e}")))
}

fn join_shares(x: &[f64]) -> String {
    x.iter().map(|v| format_f64(*v)).collect::<Vec<_>>().join(",")
}

pub fn run(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Field {
            source,
            kind,
            x0,
            format,
            out,
        } => {
            let game = source.load()?;
            let x = state_from(x0, game.n())?;
            let v = field(*kind, &x, &game);
            let content = match format {
                OutputFormat::Csv => {
                    let mut s = String::from("strategy,share,velocity\n");
                    for i in 0..game.n() {
                        let _ = writeln!(
                            s,
                            "{},{},{}",
                            i + 1,
                            format_f64(x.share(i)),
                            format_f64(v.component(i))
                        );
                    }
                    s
                }
                _ => {
                    let mut s = format!("{kind} field at x = ({})\n", join_shares(x.as_slice()));
                    for i in 0..game.n() {
                        let _ = writeln!(s, "  dx{}/dt = {}", i + 1, format_f64(v.component(i)));
                    }
                    s
                }
            };
            deliver(out.as_deref(), &content)
        }

        Command::RestPoints {
            source,
            kind,
            format,
            out,
        } => {
            let game = source.load()?;
            let scan = find_rest_points(&game, *kind)
                .map_err(|e| CliError::Numerical(e.to_string()))?;
            let content = match format {
                OutputFormat::Csv => rest_points_csv(&game, &scan),
                _ => rest_points_txt(kind, &scan),
            };
            deliver(out.as_deref(), &content)
        }

        Command::Classify2 { source, format, out } => {
            let game = source.load()?;
            let class = classify_two_strategy(&game)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let roots = class
                .interior_rest_points
                .iter()
                .map(|r| format_f64(*r))
                .collect::<Vec<_>>()
                .join(";");
            let (row_id, formula) = match class.dynamics_row {
                Some(row) => (row.id(), row.formula()),
                None => ("-", "-"),
            };
            let content = match format {
                OutputFormat::Csv => {
                    let coeffs = class
                        .polynomial
                        .coeffs()
                        .iter()
                        .map(|c| format_f64(*c))
                        .collect::<Vec<_>>()
                        .join(",");
                    format!(
                        "label,swapped,row_id,formula,interior_rest_points,c0,c1,c2,c3,c4\n{},{},{row_id},{formula},{roots},{coeffs}\n",
                        class.label, class.swapped
                    )
                }
                _ => {
                    let mut s = format!("label: {}\n", class.label);
                    if class.swapped {
                        s.push_str("orientation: strategies relabeled relative to the catalog entry\n");
                    }
                    let _ = writeln!(s, "dynamics row: {row_id} ({formula})");
                    let _ = writeln!(
                        s,
                        "interior rest points: {}",
                        if roots.is_empty() { "none" } else { &roots }
                    );
                    s
                }
            };
            deliver(out.as_deref(), &content)
        }

        Command::Dominance { source, format, out } => {
            let game = source.load()?;
            let strict = strictly_dominated_pairs(&game);
            let weak = weakly_dominated_pairs(&game);
            let trace = iterated_elimination(&game);
            let content = match format {
                OutputFormat::Csv => {
                    let mut s = String::from("record,dominator,dominated\n");
                    for (i, j) in &strict {
                        let _ = writeln!(s, "strict,{},{}", i + 1, j + 1);
                    }
                    for (i, j) in &weak {
                        let _ = writeln!(s, "weak_advisory,{},{}", i + 1, j + 1);
                    }
                    for round in &trace.rounds {
                        let _ = writeln!(
                            s,
                            "elimination_round,{},{}",
                            round.dominator + 1,
                            round.eliminated + 1
                        );
                    }
                    for survivor in &trace.survivors {
                        let _ = writeln!(s, "survivor,{},", survivor + 1);
                    }
                    s
                }
                _ => {
                    let mut s = String::new();
                    let _ = writeln!(s, "strictly dominated pairs (dominator > dominated):");
                    if strict.is_empty() {
                        s.push_str("  none\n");
                    }
                    for (i, j) in &strict {
                        let _ = writeln!(s, "  {} > {}", i + 1, j + 1);
                    }
                    let _ = writeln!(s, "iterated elimination:");
                    if trace.rounds.is_empty() {
                        s.push_str("  no eliminations\n");
                    }
                    for (idx, round) in trace.rounds.iter().enumerate() {
                        let _ = writeln!(
                            s,
                            "  round {}: strategy {} eliminated by {}",
                            idx + 1,
                            round.eliminated + 1,
                            round.dominator + 1
                        );
                    }
                    let survivors: Vec<String> =
                        trace.survivors.iter().map(|v| (v + 1).to_string()).collect();
                    let _ = writeln!(s, "survivors: {{{}}}", survivors.join(", "));
                    let _ = writeln!(s, "weak-dominance advisory (not applied):");
                    if weak.is_empty() {
                        s.push_str("  none\n");
                    }
                    for (i, j) in &weak {
                        let _ = writeln!(s, "  {} >= {}", i + 1, j + 1);
                    }
                    s
                }
            };
            deliver(out.as_deref(), &content)
        }

        Command::Integrate {
            source,
            kind,
            x0,
            horizon,
            grid,
            out,
        } => {
            let game = source.load()?;
            let x = state_from(x0, game.n())?;
            let opts = IntegrationOptions {
                output_samples: *grid,
                ..Default::default()
            };
            let traj = integrate(&game, *kind, &x, *horizon, &opts)
                .map_err(|e| CliError::Numerical(e.to_string()))?;
            deliver(out.as_deref(), &trajectory_csv(&traj))
        }

        Command::Orbit {
            source,
            kind,
            x0,
            section,
            max_returns,
            horizon,
            out,
        } => {
            let game = source.load()?;
            let x = state_from(x0, game.n())?;
            let scan = find_rest_points(&game, *kind)
                .map_err(|e| CliError::Numerical(e.to_string()))?;
            let section = match section {
                Some(s) => *s,
                None => default_section(&scan, &x),
            };
            let opts = IntegrationOptions::with_tol(1e-12);
            let returns =
                poincare_returns(&game, *kind, &x, section, *max_returns, *horizon, &opts)
                    .map_err(|e| CliError::Numerical(e.to_string()))?;
            let traj = integrate(&game, *kind, &x, *horizon, &opts)
                .map_err(|e| CliError::Numerical(e.to_string()))?;
            let rest_locations: Vec<PopulationState> = scan
                .reports
                .iter()
                .map(|r| r.location.clone())
                .collect();
            let mut s = format!(
                "section: x{} = x{}\n",
                section.0 + 1,
                section.1 + 1
            );
            if !returns.complete {
                let _ = writeln!(
                    s,
                    "note: only {} of {} requested returns within the horizon",
                    returns.crossings.len(),
                    returns.requested
                );
            }
            for (i, c) in returns.crossings.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "return {}: t = {}, distance from start = {}",
                    i + 1,
                    format_f64(c.t),
                    format_f64(c.distance)
                );
            }
            match orbit_classify(&returns, &traj, &rest_locations) {
                Ok(verdict) => {
                    let _ = writeln!(s, "verdict: {}", verdict.kind);
                }
                Err(e) => {
                    let _ = writeln!(s, "verdict withheld: {e}");
                }
            }
            deliver(out.as_deref(), &s)
        }

        Command::Simulate {
            source,
            seed,
            agents,
            x0,
            horizon,
            grid,
            replicates,
            self_exclusion,
            out,
        } => {
            let game = source.load()?;
            let x = state_from(x0, game.n())?;
            let initial = AgentPopulation::from_shares(*agents, &x)
                .map_err(|e| CliError::Input(e.to_string()))?;
            if *replicates <= 1 {
                let config = SimConfig {
                    seed: *seed,
                    n_agents: *agents,
                    horizon: *horizon,
                    output_grid: *grid,
                    self_exclusion: *self_exclusion,
                };
                let traj = simulate(&config, &game, &initial)
                    .map_err(|e| CliError::Numerical(e.to_string()))?;
                deliver(out.as_deref(), &trajectory_csv(&traj))
            } else {
                let opts = IntegrationOptions {
                    output_samples: *grid,
                    ..Default::default()
                };
                let mean = integrate(&game, FieldKind::Ibr, &x, *horizon, &opts)
                    .map_err(|e| CliError::Numerical(e.to_string()))?;
                let mut s = String::from("seed,N,sup_gap,t_at_sup\n");
                for r in 0..*replicates {
                    let config = SimConfig {
                        seed: seed + r as u64,
                        n_agents: *agents,
                        horizon: *horizon,
                        output_grid: *grid,
                        self_exclusion: *self_exclusion,
                    };
                    let traj = simulate(&config, &game, &initial)
                        .map_err(|e| CliError::Numerical(e.to_string()))?;
                    let report = deviation_report(&traj, &mean)
                        .map_err(|e| CliError::Numerical(e.to_string()))?;
                    let _ = writeln!(
                        s,
                        "{},{},{},{}",
                        seed + r as u64,
                        agents,
                        format_f64(report.sup_gap),
                        format_f64(report.t_at_sup)
                    );
                }
                deliver(out.as_deref(), &s)
            }
        }

        Command::Phase {
            source,
            kind,
            starts,
            horizon,
            out,
        } => {
            let game = source.load()?;
            let start_states: Vec<PopulationState> = if starts.is_empty() {
                sampling::interior_states(game.n(), 6)
            } else {
                starts
                    .iter()
                    .map(|raw| state_from(raw, game.n()))
                    .collect::<Result<_, _>>()?
            };
            let svg = emit_phase_svg(&game, *kind, &start_states, *horizon)?;
            deliver(out.as_deref(), &svg)
        }

        Command::Reproduce { target, out_dir } => {
            let written = reproduce(target, out_dir)?;
            for path in written {
                println!("wrote {}", path.display());
            }
            Ok(())
        }
    }
}

/// Default section for return maps: the pair of strategies equalized at the
/// interior rest point, falling back to the pair closest at the start state.
fn default_section(scan: &RestPointScan, x0: &PopulationState) -> (usize, usize) {
    let reference: &PopulationState = scan
        .interior()
        .first()
        .map(|r| &r.location)
        .unwrap_or(x0);
    let n = reference.n();
    let mut best = (0usize, 1usize);
    let mut best_gap = f64::INFINITY;
    for j in 0..n {
        for k in j + 1..n {
            let gap = (reference.share(j) - reference.share(k)).abs();
            if gap < best_gap {
                best_gap = gap;
                best = (j, k);
            }
        }
    }
    best
}

pub(crate) fn trajectory_csv(traj: &Trajectory) -> String {
    let n = traj.states[0].n();
    let mut s = String::from("t");
    for i in 1..=n {
        let _ = write!(s, ",x{i}");
    }
    s.push('\n');
    for (idx, t) in traj.times.iter().enumerate() {
        let _ = write!(s, "{}", format_f64(*t));
        for v in traj.states[idx].as_slice() {
            let _ = write!(s, ",{}", format_f64(*v));
        }
        s.push('\n');
    }
    s
}

fn rest_points_csv(game: &PayoffMatrix, scan: &RestPointScan) -> String {
    let n = game.n();
    let mut s = String::from("index");
    for i in 1..=n {
        let _ = write!(s, ",x{i}");
    }
    s.push_str(",support,class,residual,jacobian_check,eig_re,eig_im\n");
    for (idx, report) in scan.reports.iter().enumerate() {
        let _ = write!(s, "{}", idx + 1);
        for v in report.location.as_slice() {
            let _ = write!(s, ",{}", format_f64(*v));
        }
        let support: Vec<String> =
            report.support.iter().map(|v| (v + 1).to_string()).collect();
        let re: Vec<String> = report
            .eigenvalues
            .iter()
            .map(|e| format_f64(e.re))
            .collect();
        let im: Vec<String> = report
            .eigenvalues
            .iter()
            .map(|e| format_f64(e.im))
            .collect();
        let _ = writeln!(
            s,
            ",{},{},{},{},{},{}",
            support.join(";"),
            report.class,
            format_f64(report.residual),
            if report.jacobian_unstable { "unstable" } else { "ok" },
            re.join(";"),
            im.join(";")
        );
    }
    s
}

fn rest_points_txt(kind: &FieldKind, scan: &RestPointScan) -> String {
    let mut s = format!("rest points of the {kind} dynamics\n");
    for report in &scan.reports {
        let support: Vec<String> =
            report.support.iter().map(|v| (v + 1).to_string()).collect();
        let _ = writeln!(
            s,
            "  {} support {{{}}} class {} residual {:.2e}",
            report.location,
            support.join(","),
            report.class,
            report.residual
        );
        if !report.eigenvalues.is_empty() {
            let eigs: Vec<String> = report
                .eigenvalues
                .iter()
                .map(|e| format!("{:+.6}{:+.6}i", e.re, e.im))
                .collect();
            let _ = writeln!(s, "    eigenvalues: {}", eigs.join(", "));
        }
    }
    if !scan.faces_without_interior.is_empty() {
        s.push_str("faces with no interior rest point found (search is heuristic):\n");
        for face in &scan.faces_without_interior {
            let names: Vec<String> = face.iter().map(|v| (v + 1).to_string()).collect();
            let _ = writeln!(s, "  {{{}}}", names.join(","));
        }
    }
    s
}
