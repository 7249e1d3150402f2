mod cli;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use cli::{Cli, Command};
use commands::Context;
use report::{ReportEnvelope, Settings};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = Settings { budget: cli.budget, tower_bound: cli.tower_bound, word_bound: cli.word_bound };
    if let Command::Suite { .. } = cli.command {
        let reports = commands::run_suite(settings);
        for r in &reports {
            emit(&report::render(r, cli.pretty));
        }
        return if reports.iter().all(|r| r.passed) { ExitCode::SUCCESS } else { ExitCode::from(1) };
    }
    let start = Instant::now();
    let mut ctx = Context::new(settings);
    match commands::run(&mut ctx, &cli.command) {
        Ok(outcome) => {
            let envelope = ReportEnvelope {
                command: cli.command.name(),
                inputs: ctx.digests(),
                payload: outcome.payload,
                passed: outcome.passed,
                millis: start.elapsed().as_millis(),
                settings,
            };
            emit(&report::render(&envelope, cli.pretty));
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Writes one report line; a closed pipe is not an error.
fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
}
