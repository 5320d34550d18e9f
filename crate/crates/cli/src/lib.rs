//! The `sgb` command line: reproducible JSON and CSV reports of the
//! conformal eigenvalue bounds and their solver validation.

pub mod args;
pub mod output;
pub mod report;

use std::fmt;

use anyhow::Result;
use serde::Serialize;

use args::{Cli, Command, Format};

/// Bad flags or parameters outside a command's preconditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const FAILURE: u8 = 1;
    pub const USAGE: u8 = 2;
    /// Infeasible constants, uncertified containment, or a vacuous report
    /// under `--strict`.
    pub const INFEASIBLE: u8 = 3;
    pub const NON_CONVERGENCE: u8 = 4;
}

/// Exit status for an error returned by [`run`].
pub fn exit_code(err: &anyhow::Error) -> u8 {
    use sgb_core::Error as E;
    if err.downcast_ref::<UsageError>().is_some() {
        return exit::USAGE;
    }
    match err.downcast_ref::<E>() {
        Some(E::Domain { .. } | E::InvalidInput(_) | E::DegeneratePolygon(_)) => exit::USAGE,
        Some(E::Infeasible(_) | E::Uncertified(_)) => exit::INFEASIBLE,
        Some(E::NonConvergence { .. }) => exit::NON_CONVERGENCE,
        None => exit::FAILURE,
    }
}

/// A rendered report.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub text: String,
    /// Some bound in the report is vacuous.
    pub vacuous: bool,
}

fn render<R: Serialize>(report: &R, format: Format) -> Result<Rendered> {
    let value = serde_json::to_value(report)?;
    let text = match format {
        Format::Json => output::to_json(report)?,
        Format::Csv => output::flatten(report)?,
    };
    Ok(Rendered {
        text,
        vacuous: output::has_vacuous(&value),
    })
}

/// Runs one command and renders its report.
pub fn run(cli: &Cli, settings: &report::Settings) -> Result<Rendered> {
    match &cli.command {
        Command::Constants { alphas } => render(&report::constants(alphas, settings)?, cli.format),
        Command::Bounds(a) => render(&report::bounds(a, settings)?, cli.format),
        Command::Quasidisc(a) => render(&report::quasidisc(a, settings)?, cli.format),
        Command::Sweep(a) => {
            let r = report::sweep(a, settings)?;
            match cli.format {
                Format::Json => render(&r, Format::Json),
                Format::Csv => {
                    let names: Vec<&str> = r.columns.iter().map(|c| c.name).collect();
                    let vacuous = names
                        .iter()
                        .enumerate()
                        .filter(|(_, n)| n.ends_with("_vacuous"))
                        .any(|(i, _)| r.rows.iter().any(|row| row[i] == serde_json::Value::Bool(true)));
                    Ok(Rendered {
                        text: output::sweep_table(&names, &r.rows)?,
                        vacuous,
                    })
                }
            }
        }
        Command::Solve(a) => {
            let r = report::solve_command(a)?;
            match cli.format {
                Format::Json => render(&r, Format::Json),
                Format::Csv => {
                    let count = r.convergence.first().map_or(0, |row| row.len() - 1);
                    let header: Vec<String> =
                        std::iter::once("h".to_owned()).chain((1..=count).map(|k| format!("lambda{k}"))).collect();
                    let header: Vec<&str> = header.iter().map(String::as_str).collect();
                    let rows: Vec<Vec<String>> = r
                        .convergence
                        .iter()
                        .map(|row| row.iter().map(|v| v.to_string()).collect())
                        .collect();
                    Ok(Rendered {
                        text: output::table(&header, &rows)?,
                        vacuous: false,
                    })
                }
            }
        }
    }
}
