//! Command-line front end for the `spure` library.

pub mod commands;
pub mod job;
pub mod render;

use std::time::Instant;

use serde_json::{json, Value};

use commands::{execute, Failure, Outcome};
use job::Job;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A run's report in both formats, plus the process exit code.
#[derive(Debug, Clone)]
pub struct Report {
    pub structured: Value,
    pub text: String,
    pub exit_code: i32,
}

fn header(job: &Job) -> Value {
    json!({
        "version": VERSION,
        "seed": job.seed,
        "caps": {
            "hom": job.caps.hom,
            "submodules": job.caps.submodules,
            "corpus_size": job.corpus_size,
        },
        "job": job.echo(),
    })
}

/// Runs `job`; `timing` adds wall-clock milliseconds to the structured report.
pub fn run(job: &Job, timing: bool) -> Report {
    let start = Instant::now();
    let res = execute(job);
    let mut doc = header(job);
    let (text, code) = match &res {
        Ok(Outcome {
            result,
            text,
            violation,
        }) => {
            doc["status"] = if *violation { "theory-violation" } else { "ok" }.into();
            doc["result"] = result.clone();
            (text.join("\n"), if *violation { 1 } else { 0 })
        }
        Err(f) => {
            doc["status"] = f.kind().into();
            doc["error"] = f.to_string().into();
            (format!("error ({}): {f}", f.kind()), f.exit_code())
        }
    };
    if timing {
        doc["timing_ms"] = (start.elapsed().as_millis() as u64).into();
    }
    let head = format!("spure {VERSION} {} (seed {})", job.command.name(), job.seed);
    Report {
        structured: doc,
        text: format!("{head}\n{text}\n"),
        exit_code: code,
    }
}

/// Exit code for input that never became a job.
pub fn input_failure(e: job::ParseError) -> (String, i32) {
    let f = Failure::Input(e);
    (format!("error ({}): {f}", f.kind()), f.exit_code())
}
