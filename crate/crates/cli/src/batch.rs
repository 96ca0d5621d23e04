//! Manifest runner.
//!
//! A manifest has one job per line, `#` comments and blank lines aside:
//!
//! ```text
//! job peirce decide ../systems/imp.canon "=> imp(imp(imp(p1, p2), p1), p1)" expect unprovable
//! ```
//!
//! Words are split shell-style. Relative paths resolve against the manifest's
//! directory.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::Parser;
use serde_json::json;
use thiserror::Error;

use crate::args::{Cli, Command};
use crate::commands::execute;
use crate::report::{exit, Report};

pub const VERDICTS: &[&str] = &[
    "valid",
    "invalid",
    "coherent",
    "incoherent",
    "provable",
    "unprovable",
    "found",
    "not-found",
    "legal",
    "illegal",
    "not-semiframe",
    "not-model",
    "error",
];

#[derive(Clone, Debug)]
pub struct Job {
    pub line: usize,
    pub name: String,
    pub command: Command,
    pub expect: String,
}

#[derive(Clone, Debug, Default)]
pub struct Manifest {
    pub jobs: Vec<Job>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ManifestError {
    pub line: usize,
    pub message: String,
}

/// Parses a manifest, checking that every input file exists under `base`.
pub fn parse_manifest(text: &str, base: &Path) -> Result<Manifest, ManifestError> {
    let mut jobs: Vec<Job> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fail = |message: String| ManifestError { line, message };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let words = shlex::split(trimmed).ok_or_else(|| fail("unbalanced quotes".into()))?;
        let [kw, name, rest @ ..] = words.as_slice() else {
            return Err(fail("expected `job <name> <command> <args…> expect <verdict>`".into()));
        };
        if kw != "job" {
            return Err(fail(format!("expected `job`, found `{kw}`")));
        }
        let [args @ .., ex, expect] = rest else {
            return Err(fail("missing `expect <verdict>`".into()));
        };
        if ex != "expect" {
            return Err(fail("missing `expect <verdict>`".into()));
        }
        if !VERDICTS.contains(&expect.as_str()) {
            return Err(fail(format!("unknown verdict `{expect}`")));
        }
        if jobs.iter().any(|j| &j.name == name) {
            return Err(fail(format!("duplicate job name `{name}`")));
        }
        let cli = Cli::try_parse_from(std::iter::once("canonseq").chain(args.iter().map(String::as_str)))
            .map_err(|e| fail(e.render().to_string().lines().next().unwrap_or("").to_string()))?;
        if matches!(cli.command, Command::Batch { .. }) {
            return Err(fail("nested batch jobs are not allowed".into()));
        }
        for p in cli.command.inputs() {
            let full = if p.is_absolute() { p.clone() } else { base.join(p) };
            if !full.is_file() {
                return Err(fail(format!("no such file `{}`", p.display())));
            }
        }
        jobs.push(Job {
            line,
            name: name.clone(),
            command: cli.command,
            expect: expect.clone(),
        });
    }
    Ok(Manifest { jobs })
}

/// Runs every job, reporting in manifest order.
pub fn run_jobs(manifest: &Manifest, base: &Path, workers: usize) -> Vec<Report> {
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Report>>> = Mutex::new(vec![None; manifest.jobs.len()]);
    std::thread::scope(|scope| {
        for _ in 0..workers.max(1).min(manifest.jobs.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = manifest.jobs.get(i) else { break };
                let report = execute(&job.command, base);
                results.lock().unwrap()[i] = Some(report);
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every job ran"))
        .collect()
}

pub(crate) fn run_batch(path: &Path, workers: Option<usize>) -> Report {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Report::error("batch", exit::INVALID_INPUT, format!("{}: {e}", path.display())),
    };
    let base: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let manifest = match parse_manifest(&text, &base) {
        Ok(m) => m,
        Err(e) => return Report::error("batch", exit::INVALID_INPUT, format!("{}: {e}", path.display())),
    };
    let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let reports = run_jobs(&manifest, &base, workers);

    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failed = 0;
    for (job, r) in manifest.jobs.iter().zip(&reports) {
        let ok = r.verdict == job.expect;
        if ok {
            text += &format!("ok    {}: {}\n", job.name, r.verdict);
        } else {
            failed += 1;
            text += &format!("FAIL  {}: got {}, expected {}\n", job.name, r.verdict, job.expect);
            if let Some(e) = r.json.get("error").and_then(|e| e.as_str()) {
                text += &format!("      {e}\n");
            }
        }
        rows.push(json!({
            "name": job.name,
            "command": job.command.name(),
            "expected": job.expect,
            "verdict": r.verdict,
            "exit": r.exit,
            "ok": ok,
        }));
    }
    let total = manifest.jobs.len();
    text += &format!("{} of {total} jobs matched\n", total - failed);
    let verdict = if failed == 0 { "valid" } else { "invalid" };
    Report::new(
        "batch",
        if failed == 0 { exit::OK } else { exit::NEGATIVE },
        verdict,
        text,
        json!({"jobs": rows, "passed": total - failed, "failed": failed}),
    )
}
