//! Command-line front end for hybrid-coherent-state witnesses: CSV sweeps,
//! figure presets, oracle validation and heralding runs.

pub mod config;
pub mod error;
pub mod heralding;
pub mod sweep;
pub mod validate;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use hcs_core::fock::{DEFAULT_MIN_DIM, DEFAULT_TAIL_TOL};
use hcs_core::{Complex64, HeraldingParams, KerrMode, TruncationPolicy};

use crate::config::Config;
pub use crate::error::{CliError, EXIT_BREACH, EXIT_IO, EXIT_OK, EXIT_TRUNCATION, EXIT_USAGE};
use crate::heralding::{parse_kerr_mode, run_herald};
use crate::sweep::{figure_preset, run_sweep, write_csv, SweepSpec, Witness, FIGURES};
use crate::validate::{run_validate, ValidateSpec};

#[derive(Debug, Parser)]
#[command(name = "hcs", version, about = "Higher-order nonclassicality of hybrid coherent states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form witness sweep over ε, order and |α|, written as CSV.
    Sweep(SweepArgs),
    /// Figure datasets: 2a, 2b, 3, 4 (panels a and b), 4a, 4b.
    Figure {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(FIGURES))]
        name: String,
        #[command(flatten)]
        args: SweepArgs,
    },
    /// Closed form against the truncated-Fock oracle.
    Validate(ValidateArgs),
    /// Heralded preparation through the cross-Kerr interferometer.
    Herald(HeraldArgs),
}

#[derive(Debug, Args, Default)]
pub struct SweepArgs {
    /// Comma-separated mixing weights.
    #[arg(long, value_delimiter = ',')]
    pub epsilon: Option<Vec<f64>>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Quadrature angle.
    #[arg(long, allow_hyphen_values = true)]
    pub psi: Option<f64>,
    #[arg(long)]
    pub alpha_min: Option<f64>,
    #[arg(long)]
    pub alpha_max: Option<f64>,
    #[arg(long)]
    pub alpha_steps: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_arg: Option<f64>,
    /// Comma-separated n: S^(2n) or g^(n+1).
    #[arg(long, value_delimiter = ',')]
    pub orders: Option<Vec<u32>>,
    /// squeezing | antibunching
    #[arg(long)]
    pub witness: Option<Witness>,
    /// Output CSV path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// key = value file; flags take precedence over it.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct ValidateArgs {
    #[arg(long, value_delimiter = ',')]
    pub epsilon: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub phi: Option<Vec<f64>>,
    /// Comma-separated |α| values.
    #[arg(long, value_delimiter = ',')]
    pub alpha: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha_arg: Option<Vec<f64>>,
    /// Force the oracle Fock dimension.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub truncation_tol: Option<f64>,
    /// Comparison tolerance for oracle checks.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct HeraldArgs {
    /// BS2 transmissivity t; r = √(1 − t²).
    #[arg(long)]
    pub transmissivity: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Cross-Kerr phase Φ.
    #[arg(long)]
    pub phi_xpm: Option<f64>,
    /// |α| of the probe coherent state.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_arg: Option<f64>,
    /// linearized | exact
    #[arg(long, value_parser = parse_kerr_mode)]
    pub kerr_mode: Option<KerrMode>,
    #[arg(long)]
    pub truncation_tol: Option<f64>,
    /// Append a CSV row to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn load_config(path: Option<&Path>) -> Result<Config, CliError> {
    path.map(Config::load).transpose().map(Option::unwrap_or_default)
}

/// Layers flags over the config file over `base`.
pub fn resolve_sweep(args: &SweepArgs, base: &SweepSpec) -> Result<SweepSpec, CliError> {
    let cfg = load_config(args.config.as_deref())?;
    let witness = match (args.witness, cfg.get("witness")) {
        (Some(w), _) => w,
        (None, Some(raw)) => raw.parse().map_err(CliError::Usage)?,
        (None, None) => base.witness,
    };
    Ok(SweepSpec {
        witness,
        epsilons: cfg.pick_list(args.epsilon.clone(), "epsilon", base.epsilons.clone())?,
        orders: cfg.pick_list(args.orders.clone(), "orders", base.orders.clone())?,
        phi: cfg.pick(args.phi, "phi", base.phi)?,
        psi: cfg.pick(args.psi, "psi", base.psi)?,
        alpha_min: cfg.pick(args.alpha_min, "alpha-min", base.alpha_min)?,
        alpha_max: cfg.pick(args.alpha_max, "alpha-max", base.alpha_max)?,
        alpha_steps: cfg.pick(args.alpha_steps, "alpha-steps", base.alpha_steps)?,
        alpha_arg: cfg.pick(args.alpha_arg, "alpha-arg", base.alpha_arg)?,
    })
}

fn sweep_out(args: &SweepArgs) -> Result<Option<PathBuf>, CliError> {
    let cfg = load_config(args.config.as_deref())?;
    cfg.pick_opt(args.out.clone(), "out")
}

pub fn resolve_validate(args: &ValidateArgs) -> Result<ValidateSpec, CliError> {
    let cfg = load_config(args.config.as_deref())?;
    let base = ValidateSpec::default();
    Ok(ValidateSpec {
        epsilons: cfg.pick_list(args.epsilon.clone(), "epsilon", base.epsilons.clone())?,
        phis: cfg.pick_list(args.phi.clone(), "phi", base.phis.clone())?,
        alpha_abs: cfg.pick_list(args.alpha.clone(), "alpha", base.alpha_abs.clone())?,
        alpha_args: cfg.pick_list(args.alpha_arg.clone(), "alpha-arg", base.alpha_args.clone())?,
        dim: cfg.pick_opt(args.dim, "dim")?,
        tail_tol: cfg.pick(args.truncation_tol, "truncation-tol", base.tail_tol)?,
        tol: cfg.pick(args.tol, "tol", base.tol)?,
        ..base
    })
}

pub fn resolve_herald(args: &HeraldArgs) -> Result<(HeraldingParams, TruncationPolicy, Option<PathBuf>), CliError> {
    let cfg = load_config(args.config.as_deref())?;
    let t = cfg.pick(args.transmissivity, "transmissivity", std::f64::consts::FRAC_1_SQRT_2)?;
    let theta = cfg.pick(args.theta, "theta", 0.0)?;
    let phi_xpm = cfg.pick(args.phi_xpm, "phi-xpm", 0.01)?;
    let abs = cfg.pick(args.alpha, "alpha", 1.0)?;
    let arg = cfg.pick(args.alpha_arg, "alpha-arg", 0.0)?;
    let mode = match (args.kerr_mode, cfg.get("kerr-mode")) {
        (Some(m), _) => m,
        (None, Some(raw)) => parse_kerr_mode(raw).map_err(CliError::Usage)?,
        (None, None) => KerrMode::Linearized,
    };
    let tail_tol = cfg.pick(args.truncation_tol, "truncation-tol", DEFAULT_TAIL_TOL)?;
    if !(abs.is_finite() && abs >= 0.0) {
        return Err(CliError::usage("alpha must be a non-negative |α|"));
    }
    let hp = HeraldingParams::from_transmissivity(t, theta, phi_xpm, Complex64::from_polar(abs, arg), mode)?;
    let policy = TruncationPolicy::new(tail_tol, DEFAULT_MIN_DIM)?;
    Ok((hp, policy, cfg.pick_opt(args.out.clone(), "out")?))
}

fn emit_sweeps(specs: &[SweepSpec], out: Option<&Path>) -> Result<(), CliError> {
    let mut rows = Vec::new();
    let mut skipped = 0;
    for spec in specs {
        let result = run_sweep(spec)?;
        rows.extend(result.rows);
        skipped += result.skipped_vacuum;
    }
    if skipped > 0 {
        eprintln!("skipped {skipped} vacuum point(s): g undefined at <a†a> = 0");
    }
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf).map_err(|e| CliError::io("<buffer>", e))?;
    match out {
        Some(path) => fs::write(path, &buf).map_err(|e| CliError::io(path, e)),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&buf).map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> u8 {
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Sweep(args) => {
            let spec = resolve_sweep(&args, &SweepSpec::default())?;
            emit_sweeps(&[spec], sweep_out(&args)?.as_deref())?;
        }
        Command::Figure { name, args } => {
            let presets = figure_preset(&name).ok_or_else(|| CliError::usage(format!("unknown figure `{name}`")))?;
            let specs = presets
                .iter()
                .map(|base| resolve_sweep(&args, base))
                .collect::<Result<Vec<_>, _>>()?;
            emit_sweeps(&specs, sweep_out(&args)?.as_deref())?;
        }
        Command::Validate(args) => {
            let report = run_validate(&resolve_validate(&args)?)?;
            println!("{report}");
            return Ok(report.exit_code());
        }
        Command::Herald(args) => {
            let (hp, policy, out) = resolve_herald(&args)?;
            let report = run_herald(&hp, &policy)?;
            println!("{report}");
            if let Some(path) = out {
                report.append_csv(&path)?;
                eprintln!("appended row to {}", path.display());
            }
        }
    }
    Ok(EXIT_OK)
}
