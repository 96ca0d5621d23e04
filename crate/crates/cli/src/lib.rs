//! `canonseq`: command-line front end for canonical sequent systems.
//!
//! Every subcommand produces a [`Report`] with an exit code, a verdict word
//! and both a text and a JSON rendering. `batch` runs many subcommands from a
//! manifest and compares their verdicts with the expected ones.

mod args;
mod batch;
mod commands;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;

pub use args::{Cli, Command};
pub use batch::{parse_manifest, Job, Manifest, ManifestError};
pub use report::{exit, Report};

/// Runs one command line, printing its report. Returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    run_to(argv, &mut out)
}

pub fn run_to<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return code;
        }
    };
    let json = cli.json;
    let report = execute(&cli.command, Path::new("."));
    let _ = if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report.json).expect("reports serialize"))
    } else {
        write!(out, "{}", report.text)
    };
    report.exit
}

/// Runs a parsed command, resolving relative paths against `base`.
pub fn execute(command: &Command, base: &Path) -> Report {
    commands::execute(command, base)
}
