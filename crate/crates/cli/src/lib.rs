//! Command-line harness around the `lsphere` crate: validation suites, tables
//! for plotting, a sphere renderer and a throughput benchmark.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 for
//! invalid flags or parameters and for I/O failures.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;

use std::ffi::OsString;

use clap::Parser;

pub use args::{Cli, Command};
pub use commands::Output;
pub use error::{CliError, Result};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Runs one parsed subcommand without writing anything.
pub fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::ValidatePhase(a) => commands::validate_phase::run(a),
        Command::ValidateH(a) => commands::validate_h::run(a),
        Command::ValidateBrdf(a) => commands::validate_brdf::run(a, cli.threads),
        Command::Tables(a) => commands::tables::run(a),
        Command::RenderSphere(a) => {
            if cli.out.is_none() {
                return Err(CliError::Usage("render-sphere needs --out".into()));
            }
            commands::render_sphere::run(a)
        }
        Command::Bench(a) => commands::bench::run(a),
    }
}

/// Parses `argv`, runs the command, writes its outputs and returns the exit code.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let result = execute(&cli).and_then(|out| {
        output::emit(cli.out.as_deref(), &out.payload, &out.manifest)?;
        Ok(out.passed())
    });
    match result {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
