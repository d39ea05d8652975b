mod cli;
mod commands;
mod config;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use cli::Cli;
use commands::{run, RunError};
use config::Config;

fn main() -> ExitCode {
    let args = Cli::parse();
    let cfg = match Config::resolve(&args.common) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e.0);
            return ExitCode::from(2);
        }
    };
    let outcome = match run(&args.command, &cfg) {
        Ok(o) => o,
        Err(RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(RunError::Failure(msg)) => {
            eprintln!("check failed: {msg}");
            return ExitCode::from(1);
        }
    };
    if cfg.json {
        let report = json!({
            "schema": 1,
            "operation": outcome.operation,
            "config": cfg.to_json(),
            "versions": {"lieverma": lieverma::VERSION, "lieverma-cli": env!("CARGO_PKG_VERSION")},
            "seed": cfg.seed,
            "result": outcome.result,
            "passed": outcome.failure.is_none(),
            "first_failure": outcome.failure,
        });
        emit(&[serde_json::to_string_pretty(&report).expect("report serializes")]);
    } else {
        emit(&outcome.text);
    }
    match outcome.failure {
        Some(w) => {
            eprintln!("check failed: {w}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}

/// Writes lines to stdout; a closed pipe is not an error for a batch tool.
fn emit(lines: &[String]) {
    let mut out = std::io::stdout().lock();
    for line in lines {
        if writeln!(out, "{line}").is_err() {
            return;
        }
    }
}
