//! Command-line front end: game loading, subcommand dispatch, and the
//! reproduction reports.

mod output;
mod phase_svg;
mod reproduce;
mod run;

pub use output::{format_f64, write_atomic};
pub use phase_svg::emit_phase_svg;
pub use reproduce::reproduce;
pub use run::{run, CliError, Command, GameSource, OutputFormat};
