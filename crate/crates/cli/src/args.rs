use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sgb_core::constants::Alpha;

#[derive(Debug, Parser)]
#[command(name = "sgb", version, about = "Conformal spectral-gap bounds for Dirichlet eigenvalues")]
pub struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Exit with status 3 when any reported bound is vacuous.
    #[arg(long, global = true)]
    pub strict: bool,

    /// Write run metadata (version, arguments, timing) to this file. The
    /// report itself never carries it.
    #[arg(long, global = true)]
    pub meta: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Disc constants, and γ_α with its optimal exponent for each --alpha.
    Constants {
        /// Regularity exponent, a number > 2 or "inf". Repeatable.
        #[arg(long = "alpha")]
        alphas: Vec<Alpha<f64>>,
    },
    /// Eigenvalue bounds for one domain, optionally checked against the solver.
    Bounds(BoundsArgs),
    /// M_α(K), the largest feasible α and the quasidisc bounds.
    Quasidisc(QuasidiscArgs),
    /// Bounds over a range of family parameters, one row per parameter.
    Sweep(SweepArgs),
    /// Finite-difference Dirichlet eigenvalues of a domain.
    Solve(SolveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Disc,
    Epicycloid,
    Section4,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Disc => "disc",
            Family::Epicycloid => "epicycloid",
            Family::Section4 => "section4",
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct DomainArgs {
    #[arg(long, value_enum, default_value_t = Family::Epicycloid)]
    pub family: Family,

    /// Epicycloid degree, n >= 2.
    #[arg(long)]
    pub n: Option<u32>,

    /// Parameter of the map z + z^k/k, k >= 2.
    #[arg(long)]
    pub k: Option<u32>,

    /// JSON map {"label": ..., "coefficients": [[re, im], ...]}; overrides --family.
    #[arg(long)]
    pub map: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Grid spacing of the coarse grid; the fine grid uses h/2.
    #[arg(long, default_value_t = 1.0 / 64.0)]
    pub h: f64,

    /// Use the staircase boundary instead of the ghost-fluid stencil.
    #[arg(long)]
    pub staircase: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub domain: DomainArgs,

    #[arg(long, default_value = "inf")]
    pub alpha: Alpha<f64>,

    /// Add solver eigenvalues and pass/fail sandwich checks.
    #[arg(long)]
    pub with_solver: bool,

    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Clone, Args)]
pub struct QuasidiscArgs {
    /// Quasiconformality constant, K > 1.
    #[arg(long = "K")]
    pub k: f64,

    #[arg(long, default_value_t = std::f64::consts::PI)]
    pub area: f64,

    /// Inscribed radius fed to the eigenvalue bounds.
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,

    /// ‖φ′ - 1‖₂ fed to the eigenvalue bounds.
    #[arg(long, default_value_t = 1.0)]
    pub deviation: f64,

    /// Take rho and the deviation from this JSON map instead.
    #[arg(long)]
    pub map: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value_t = Family::Epicycloid)]
    pub family: Family,

    /// Epicycloid degrees, "a..b" (inclusive) or a single value.
    #[arg(long)]
    pub n: Option<ParamRange>,

    /// Section-4 parameters, "a..b" (inclusive) or a single value.
    #[arg(long)]
    pub k: Option<ParamRange>,

    #[arg(long, default_value = "inf")]
    pub alpha: Alpha<f64>,

    #[arg(long)]
    pub with_solver: bool,

    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub domain: DomainArgs,

    /// Number of eigenvalues.
    #[arg(long, default_value_t = 2)]
    pub count: usize,

    /// Solve on one grid only, without the h/2 band.
    #[arg(long)]
    pub no_refine: bool,

    #[command(flatten)]
    pub solver: SolverArgs,
}

/// Inclusive integer range written `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamRange {
    pub start: u32,
    pub end: u32,
}

impl ParamRange {
    pub fn values(&self) -> Vec<u32> {
        (self.start..=self.end).collect()
    }
}

impl FromStr for ParamRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("not an integer: {t:?}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Self { start, end })
    }
}
