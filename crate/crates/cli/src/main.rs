use std::fs;
use std::io::Write;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use clap::Parser;
use serde_json::json;

use sgb_cli::args::Cli;
use sgb_cli::report::Settings;
use sgb_cli::{exit, exit_code, run};

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout().lock().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn write_meta(cli: &Cli, started: SystemTime, clock: Instant, code: u8) -> Result<()> {
    let Some(path) = &cli.meta else {
        return Ok(());
    };
    let meta = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "arguments": std::env::args().collect::<Vec<_>>(),
        "started_unix_seconds": started.duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0),
        "elapsed_seconds": clock.elapsed().as_secs_f64(),
        "threads": rayon::current_num_threads(),
        "exit_code": code,
    });
    fs::write(path, serde_json::to_string_pretty(&meta)? + "\n").with_context(|| format!("writing {}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = SystemTime::now();
    let clock = Instant::now();
    let result = Settings::from_env().and_then(|settings| run(&cli, &settings)).and_then(|rendered| {
        emit(&cli, &rendered.text)?;
        Ok(rendered)
    });
    let code = match result {
        Ok(r) if cli.strict && r.vacuous => {
            eprintln!("sgb: the report contains vacuous bounds (--strict)");
            exit::INFEASIBLE
        }
        Ok(_) => exit::SUCCESS,
        Err(e) => {
            eprintln!("sgb: {e:#}");
            exit_code(&e)
        }
    };
    if let Err(e) = write_meta(&cli, started, clock, code) {
        eprintln!("sgb: {e:#}");
    }
    ExitCode::from(code)
}
