//! Library half of the `qhfm` binary. The argument structs, error mapping
//! and subcommand bodies live here so the test suites can drive them
//! in-process; `main.rs` only parses and dispatches.

pub mod args;
pub mod cmd;
pub mod error;

pub use args::Cli;
pub use error::{CliError, Result};

use args::Command;
use cmd::stats::Indicator;

/// Runs one parsed invocation to completion.
pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Hash(args) => cmd::hash::run(&args),
        Command::Avalanche(args) => cmd::stats::run_indicator(Indicator::Avalanche, &args),
        Command::Uniformity(args) => cmd::stats::run_indicator(Indicator::Uniformity, &args),
        Command::Collision(args) => cmd::stats::run_indicator(Indicator::Collision, &args),
        Command::Battery(args) => cmd::stats::run_full_battery(&args),
        Command::OracleCheck(args) => cmd::oracle::run(&args),
        Command::Bench(args) => cmd::bench::run(&args),
    }
}
