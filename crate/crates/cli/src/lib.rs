//! Library half of the `sdmbc` command: argument definitions and command
//! execution, usable in-process.

pub mod args;
mod auxiliary;
pub mod run;

use std::ffi::OsString;

use clap::Parser;

pub use run::{dueck_inner_report, Failure};

/// Parses `argv` (program name first) and runs the command.
pub fn execute<I, T>(argv: I) -> Result<(), Failure>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = args::Cli::try_parse_from(argv).map_err(|e| Failure::Usage(e.to_string()))?;
    run::run(cli.command)
}
