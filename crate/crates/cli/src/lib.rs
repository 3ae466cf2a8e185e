//! The `deephole` command line: argument parsing, fixtures and reports.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 bad arguments or
//! input, 3 budget exceeded.

pub mod args;
mod commands;
pub mod fixture;
pub mod report;

use std::fmt;
use std::io::Write;

use clap::Parser;

use args::Cli;

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// A problem with the command line itself.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn exit_code(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<deephole_core::Error>() {
        Some(deephole_core::Error::BudgetExceeded { .. }) => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

/// Runs the command line `argv` (including the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    if cli.opts.budget == 0 {
        let _ = writeln!(err, "error: --budget must be positive");
        return EXIT_USAGE;
    }
    let result = match cli.opts.workers {
        Some(0) => Err(anyhow::anyhow!(Usage("--workers must be positive".into()))),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(anyhow::Error::from)
            .and_then(|pool| pool.install(|| commands::dispatch(&cli.command, &cli.opts))),
        None => commands::dispatch(&cli.command, &cli.opts),
    };
    match result {
        Ok(report) => {
            let _ = out.write_all(report.render(cli.opts.format).as_bytes());
            if report.mismatch {
                let _ = writeln!(err, "mismatch");
                EXIT_MISMATCH
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}
