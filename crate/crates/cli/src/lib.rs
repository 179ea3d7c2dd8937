//! Command-line frontend for `prsreduct-core`.

pub mod args;
pub mod commands;
pub mod error;
pub mod grid;
pub mod report;

use args::Cli;
use error::CliError;

pub fn run(cli: Cli) -> Result<(), CliError> {
    let report = commands::build_report(&cli.command)?;
    let common = cli.command.common();
    report::write(&report, common.format, common.out.as_deref())
}
