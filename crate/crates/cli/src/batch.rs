//! Batch execution: one job per line, or a JSON list of argument lists.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::Parser;
use serde_json::{json, Value};

use crate::args::{Cli, Command};
use crate::run::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

pub struct Job {
    /// 1-based line in the input file, or 1-based index in a JSON list.
    pub line: usize,
    pub args: Result<Vec<String>, String>,
}

pub fn parse_jobs(text: &str) -> Result<Vec<Job>, String> {
    if text.trim_start().starts_with('[') {
        let list: Vec<Value> = serde_json::from_str(text).map_err(|e| format!("malformed JSON job list: {e}"))?;
        return Ok(list
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                let args = match v.get("args").unwrap_or(&v) {
                    Value::Array(xs) => xs
                        .iter()
                        .map(|x| x.as_str().map(str::to_owned).ok_or_else(|| format!("non-string argument {x}")))
                        .collect(),
                    other => Err(format!("job must be a list of strings, got {other}")),
                };
                Job { line: i + 1, args }
            })
            .collect());
    }
    Ok(text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| Job { line: i + 1, args: shlex::split(l).ok_or_else(|| "unbalanced quotes".to_owned()) })
        .collect())
}

fn run_job(job: &Job) -> (Value, i32) {
    let args = match &job.args {
        Ok(a) => a,
        Err(e) => return (json!({ "line": job.line, "exit": EXIT_USAGE, "error": e }), EXIT_USAGE),
    };
    let cli = match Cli::try_parse_from(std::iter::once("rittlab".to_owned()).chain(args.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            let msg = e.to_string().lines().next().unwrap_or_default().to_owned();
            return (json!({ "line": job.line, "args": args, "exit": EXIT_USAGE, "error": msg }), EXIT_USAGE);
        }
    };
    if matches!(cli.command, Command::Batch { .. }) {
        let msg = "batch jobs cannot be nested";
        return (json!({ "line": job.line, "args": args, "exit": EXIT_USAGE, "error": msg }), EXIT_USAGE);
    }
    match run(&cli.command, &cli.global) {
        Ok(out) => (json!({ "line": job.line, "args": args, "exit": out.code, "output": out.json }), out.code),
        Err(f) => (json!({ "line": job.line, "args": args, "exit": f.code, "error": f.message }), f.code),
    }
}

/// Runs all jobs, `workers` at a time, and returns records in input order
/// with the aggregate exit code (1 if any job failed).
pub fn run_batch(jobs: &[Job], workers: usize) -> (Value, i32) {
    let slots: Vec<Mutex<Option<(Value, i32)>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..workers.clamp(1, jobs.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let r = run_job(&jobs[i]);
                *slots[i].lock().expect("slot") = Some(r);
            });
        }
    });
    let results: Vec<(Value, i32)> =
        slots.into_iter().map(|m| m.into_inner().expect("slot").expect("job ran")).collect();
    let failed = results.iter().filter(|(_, c)| *c != EXIT_OK).count();
    let records: Vec<Value> = results.into_iter().map(|(v, _)| v).collect();
    let code = if failed > 0 { EXIT_DOMAIN } else { EXIT_OK };
    (json!({ "jobs": records, "failed": failed }), code)
}
