//! `curvelast`: base state, dispersion scans, bifurcation curves and
//! verification suites for a coated hyperelastic cylinder.
//!
//! Exit codes: 0 success, 1 configuration error, 2 bracket failure, and
//! `2 + n` (capped at 125) when `n` verification suites fail.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use curvelast_cli::commands::{self, CliError};
use curvelast_cli::config::{ConfigError, Format, RunConfig, KEYS};
use curvelast_cli::output;
use curvelast_cli::verify::{self, Corruption, VerifyInput};

#[derive(Debug, Parser)]
#[command(
    name = "curvelast",
    version,
    about = "Beading bifurcation analysis of coated hyperelastic cylinders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the homogeneous base state at one axial stretch.
    BaseState(RunArgs),
    /// Tabulate the dispersion determinant over a k or lambda grid.
    Dispersion(RunArgs),
    /// Trace the critical stretch over a wavenumber grid.
    Bifurcation(RunArgs),
    /// Run the cross-path verification suites.
    Verify(VerifyArgs),
}

/// Keys given on the command line; each overrides the same key of the
/// configuration file.
#[derive(Debug, Args)]
struct Overrides {
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<String>,
    #[arg(long = "d_modulus", visible_alias = "d-modulus", allow_negative_numbers = true)]
    d_modulus: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<String>,
    #[arg(long = "alpha_s", visible_alias = "alpha-s", allow_negative_numbers = true)]
    alpha_s: Option<String>,
    #[arg(long = "beta_s", visible_alias = "beta-s", allow_negative_numbers = true)]
    beta_s: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    h0: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    radius: Option<String>,
    /// tension, stretch or helfrich
    #[arg(long)]
    model: Option<String>,
    /// true or false
    #[arg(long)]
    incompressible: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<String>,
    /// `lo,hi` or `lo,hi,steps`
    #[arg(long = "lambda_range", visible_alias = "lambda-range", allow_hyphen_values = true)]
    lambda_range: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<String>,
    /// `k_min,k_max,steps`
    #[arg(long = "k_range", visible_alias = "k-range", allow_hyphen_values = true)]
    k_range: Option<String>,
    /// Output file (standard output when absent).
    #[arg(long = "out", visible_alias = "output_path")]
    out: Option<String>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
}

impl Overrides {
    fn get(&self, key: &str) -> Option<&String> {
        match key {
            "mu" => self.mu.as_ref(),
            "d_modulus" => self.d_modulus.as_ref(),
            "gamma" => self.gamma.as_ref(),
            "alpha_s" => self.alpha_s.as_ref(),
            "beta_s" => self.beta_s.as_ref(),
            "h0" => self.h0.as_ref(),
            "radius" => self.radius.as_ref(),
            "model" => self.model.as_ref(),
            "incompressible" => self.incompressible.as_ref(),
            "lambda" => self.lambda.as_ref(),
            "lambda_range" => self.lambda_range.as_ref(),
            "k" => self.k.as_ref(),
            "k_range" => self.k_range.as_ref(),
            "output_path" => self.out.as_ref(),
            "format" => self.format.as_ref(),
            _ => None,
        }
    }

    fn any(&self) -> bool {
        KEYS.iter().any(|k| self.get(k).is_some())
    }
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Configuration file of `key = value` lines.
    #[arg(long)]
    config: Option<String>,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Perturb one aligned stiffness entry, e.g. `a_s:0011`, to check that
    /// the suites catch it.
    #[arg(long = "corrupt-moduli", hide = true)]
    corrupt_moduli: Option<Corruption>,
}

/// Configuration file merged with the command-line overrides (flag wins).
fn load(args: &RunArgs) -> Result<RunConfig, ConfigError> {
    let mut cfg = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let mut flags = RunConfig::default();
    for key in KEYS {
        if let Some(v) = args.overrides.get(key) {
            flags.set(key, v.trim())?;
        }
    }
    cfg.merge(&flags);
    Ok(cfg)
}

fn write(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    output::emit(cfg.output_path.as_deref(), text).map_err(|e| CliError::Io(e.to_string()))
}

fn run_command(args: &RunArgs, f: fn(&RunConfig) -> Result<String, CliError>) -> Result<(), CliError> {
    let cfg = load(args)?;
    let text = f(&cfg)?;
    write(&cfg, &text)
}

fn run_verify(args: &VerifyArgs) -> Result<u8, CliError> {
    let cfg = load(&args.run)?;
    let has_physics = args.run.config.is_some() || args.run.overrides.any();
    let extra = if has_physics && (cfg.mu.is_some() || cfg.d_modulus.is_some() || cfg.incompressible.is_some()) {
        Some(cfg.physics()?)
    } else {
        None
    };
    let report = verify::run(&VerifyInput {
        extra,
        corrupt: args.corrupt_moduli,
    });
    let human = report.human();
    match (cfg.format(), &cfg.output_path) {
        (Format::Json, None) => write(&cfg, &report.json())?,
        (Format::Json, Some(_)) => {
            print!("{human}");
            write(&cfg, &report.json())?;
        }
        (Format::Csv, _) => write(&cfg, &human)?,
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Help and version requests are not errors; usage errors are
            // configuration errors.
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::BaseState(a) => run_command(a, commands::base_state).map(|()| 0),
        Command::Dispersion(a) => run_command(a, commands::dispersion).map(|()| 0),
        Command::Bifurcation(a) => run_command(a, commands::bifurcation).map(|()| 0),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
