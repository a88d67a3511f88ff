//! `ibr` — command-line front end for the ordinal imitative dynamics toolkit.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ibr_dynamics::cli::{run, CliError, Command, GameSource, OutputFormat};
use ibr_dynamics::dynamics::FieldKind;

#[derive(Parser)]
#[command(
    name = "ibr",
    version,
    about = "Ordinal imitative dynamics for symmetric population games",
    long_about = "Evaluate imitation and replicator mean fields, locate and classify rest \
                  points, integrate and classify trajectories, simulate finite agent \
                  populations, and regenerate the bundled reference reports."
)]
struct CliArgs {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Args)]
struct SourceArgs {
    /// Path to a game file: `#` comments, strategy count, then the payoff rows
    #[arg(long, value_name = "PATH", conflicts_with = "preset")]
    game: Option<PathBuf>,
    /// Name of a bundled game, e.g. table5-C2, zeeman-Z, example3-A4?alpha=2
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
}

impl SourceArgs {
    fn resolve(&self) -> Result<GameSource, String> {
        match (&self.game, &self.preset) {
            (Some(path), None) => Ok(GameSource::File(path.clone())),
            (None, Some(name)) => Ok(GameSource::Preset(name.clone())),
            _ => Err("exactly one of --game or --preset is required".into()),
        }
    }
}

/// Comma-separated strategy shares as one CLI argument.
#[derive(Clone, Debug)]
struct Shares(Vec<f64>);

fn parse_shares(text: &str) -> Result<Shares, String> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| format!("malformed share `{tok}`"))
        })
        .collect::<Result<Vec<f64>, String>>()
        .map(Shares)
}

fn parse_section(text: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err("section must be two comma-separated strategy numbers".into());
    }
    let a: usize = parts[0].trim().parse().map_err(|_| "malformed section".to_string())?;
    let b: usize = parts[1].trim().parse().map_err(|_| "malformed section".to_string())?;
    if a == 0 || b == 0 {
        return Err("strategies are numbered from 1".into());
    }
    Ok((a - 1, b - 1))
}

#[derive(Subcommand)]
enum CliCommand {
    /// Evaluate the mean-field velocity at a state
    Field {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "ibr")]
        kind: FieldKind,
        /// Comma-separated strategy shares, e.g. 0.5,0.3,0.2
        #[arg(long, value_parser = parse_shares)]
        x0: Shares,
        #[arg(long, default_value = "txt")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Locate and classify rest points, face by face
    RestPoints {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "ibr")]
        kind: FieldKind,
        #[arg(long, default_value = "txt")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a two-strategy game against the canonical catalog
    Classify2 {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "txt")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Strict dominance, iterated elimination, weak-dominance advisory
    Dominance {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "txt")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the dynamics and emit the trajectory as CSV
    Integrate {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "ibr")]
        kind: FieldKind,
        #[arg(long, value_parser = parse_shares)]
        x0: Shares,
        #[arg(long, default_value_t = 200.0)]
        horizon: f64,
        /// Output samples on the time grid
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Return-map analysis and an orbit verdict (3-strategy games)
    Orbit {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "ibr")]
        kind: FieldKind,
        #[arg(long, value_parser = parse_shares)]
        x0: Shares,
        /// Section pair `j,k` (1-based); defaults to the pair equalized at
        /// the interior rest point
        #[arg(long, value_parser = parse_section)]
        section: Option<(usize, usize)>,
        #[arg(long, default_value_t = 4)]
        max_returns: usize,
        #[arg(long, default_value_t = 200.0)]
        horizon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate a finite agent population under the imitation protocol
    Simulate {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of agents
        #[arg(long, default_value_t = 10_000)]
        agents: usize,
        #[arg(long, value_parser = parse_shares)]
        x0: Shares,
        #[arg(long, default_value_t = 10.0)]
        horizon: f64,
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        /// With more than one replicate, emit a seed/N/sup-gap summary CSV
        /// against the integrated mean dynamics instead of a trajectory
        #[arg(long, default_value_t = 1)]
        replicates: usize,
        /// Allow the reviser to sample itself as the candidate
        #[arg(long)]
        no_self_exclusion: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a phase portrait as SVG (2- or 3-strategy games)
    Phase {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "ibr")]
        kind: FieldKind,
        /// Trajectory start, repeatable; defaults to six spread interior states
        #[arg(long = "x0", value_parser = parse_shares)]
        starts: Vec<Shares>,
        #[arg(long, default_value_t = 200.0)]
        horizon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate a bundled report (table2|table3|table4|table5|example2|example3|example4|rps-symmetric)
    Reproduce {
        target: String,
        /// Directory for the emitted CSV and summary
        #[arg(long, default_value = "reports")]
        out_dir: PathBuf,
    },
}

fn to_command(cli: CliCommand) -> Result<Command, String> {
    Ok(match cli {
        CliCommand::Field { source, kind, x0, format, out } => Command::Field {
            source: source.resolve()?,
            kind,
            x0: x0.0,
            format,
            out,
        },
        CliCommand::RestPoints { source, kind, format, out } => Command::RestPoints {
            source: source.resolve()?,
            kind,
            format,
            out,
        },
        CliCommand::Classify2 { source, format, out } => Command::Classify2 {
            source: source.resolve()?,
            format,
            out,
        },
        CliCommand::Dominance { source, format, out } => Command::Dominance {
            source: source.resolve()?,
            format,
            out,
        },
        CliCommand::Integrate { source, kind, x0, horizon, grid, out } => Command::Integrate {
            source: source.resolve()?,
            kind,
            x0: x0.0,
            horizon,
            grid,
            out,
        },
        CliCommand::Orbit {
            source,
            kind,
            x0,
            section,
            max_returns,
            horizon,
            out,
        } => Command::Orbit {
            source: source.resolve()?,
            kind,
            x0: x0.0,
            section,
            max_returns,
            horizon,
            out,
        },
        CliCommand::Simulate {
            source,
            seed,
            agents,
            x0,
            horizon,
            grid,
            replicates,
            no_self_exclusion,
            out,
        } => Command::Simulate {
            source: source.resolve()?,
            seed,
            agents,
            x0: x0.0,
            horizon,
            grid,
            replicates,
            self_exclusion: !no_self_exclusion,
            out,
        },
        CliCommand::Phase { source, kind, starts, horizon, out } => Command::Phase {
            source: source.resolve()?,
            kind,
            starts: starts.into_iter().map(|s| s.0).collect(),
            horizon,
            out,
        },
        CliCommand::Reproduce { target, out_dir } => Command::Reproduce { target, out_dir },
    })
}

fn main() -> ExitCode {
    let args = CliArgs::parse();
    let command = match to_command(args.command) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(&command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Input(_) | CliError::Io(_) => 2u8,
                CliError::Numerical(_) => 3u8,
            })
        }
    }
}
