//! Batch front end: every subcommand reads JSON files and prints a JSON report with
//! sorted keys. Exit status 0 on success, 1 on invalid input, 2 when a resource
//! ceiling is hit.

mod args;
mod commands;

use std::ffi::OsString;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Value};

pub use args::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;

#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Resource(String),
}

impl Failure {
    pub fn invalid(e: impl ToString) -> Self {
        Failure::Invalid(e.to_string())
    }
}

/// Parses `argv` and runs the command, returning the exit status and the text to print.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    let outcome = commands::dispatch(&cli.command);
    let (code, mut report) = match outcome {
        Ok(result) => (EXIT_OK, json!({ "command": echo, "status": "ok", "result": result })),
        Err(Failure::Invalid(msg)) => (EXIT_INVALID, json!({ "command": echo, "status": "invalid", "error": msg })),
        Err(Failure::Resource(msg)) => (EXIT_RESOURCE, json!({ "command": echo, "status": "resource", "error": msg })),
    };
    if cli.timing {
        report["elapsed_ms"] = Value::from(start.elapsed().as_millis() as u64);
    }
    (code, render(&report))
}

/// Pretty JSON with sorted object keys and a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}
