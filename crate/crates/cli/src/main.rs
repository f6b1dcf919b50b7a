use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vdw_sphere_cli::asymptotes::asymptotes;
use vdw_sphere_cli::config::{Format, RunConfig};
use vdw_sphere_cli::fig1::{run_fig1, Fig1Options};
use vdw_sphere_cli::selftest::run_selftest;
use vdw_sphere_cli::sweep::run_sweep;
use vdw_sphere_cli::{CliError, ConfigError};

/// Van der Waals potential and force between an atom and a sphere.
#[derive(Parser, Debug)]
#[command(name = "vdw-sphere", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Flat `key = value` config file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Relative tolerance of the frequency quadrature.
    #[arg(long = "rel-tol", global = true, value_name = "X")]
    rel_tol: Option<f64>,
    /// Output file (stdout if absent).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_name = "FMT")]
    format: Option<String>,
    /// Override one config key; may repeat.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Print the effective config and exit.
    #[arg(long, global = true)]
    print_config: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Potential and force on a distance grid, as CSV.
    Sweep,
    /// Normalized force near a Drude sphere for three damping constants.
    Fig1 {
        #[arg(long, default_value_t = 19)]
        points: usize,
        /// Also write a gnuplot script with the data embedded.
        #[arg(long, value_name = "PATH")]
        gnuplot: Option<PathBuf>,
        /// Compare one point with the full sphere computation.
        #[arg(long)]
        cross_check: bool,
    },
    /// Far- and near-field coefficients of the configured model.
    Asymptotes,
    /// Numerical self-checks; exits 3 on any failure.
    Selftest {
        /// Replace every tolerance by this value.
        #[arg(long, value_name = "X")]
        tolerance: Option<f64>,
        /// Multiply every tolerance by this factor.
        #[arg(long, value_name = "X", default_value_t = 1.0)]
        tolerance_scale: f64,
    },
}

fn load_config(g: &Global) -> Result<RunConfig, CliError> {
    let mut cfg = match &g.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| ConfigError::new("config", format!("{}: {e}", path.display())))?;
            RunConfig::parse(&text)?
        }
        None => RunConfig::default(),
    };
    for pair in &g.set {
        cfg.apply_override(pair)?;
    }
    if let Some(j) = g.jobs {
        cfg.jobs = j;
    }
    if let Some(t) = g.rel_tol {
        cfg.quad_rel_tol = t;
    }
    if let Some(p) = &g.out {
        cfg.output = Some(p.clone());
    }
    if let Some(f) = &g.format {
        cfg.format = f
            .parse::<Format>()
            .map_err(|e| ConfigError::new("format", e.to_string()))?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = load_config(&cli.global)?;
    if cli.global.print_config {
        return emit(cfg.output.as_deref(), &cfg.serialize());
    }
    match cli.command {
        Command::Sweep => {
            let report = run_sweep(&cfg)?;
            emit(cfg.output.as_deref(), &report.csv)?;
            eprintln!("{}", report.summary());
            if let Some((r, msg)) = report.failures.first() {
                for (r, msg) in &report.failures {
                    eprintln!("r_A = {r:e}: {msg}");
                }
                return Err(CliError::Compute(format!(
                    "{} point(s) failed, first at r_A = {r:e}: {msg}",
                    report.failures.len()
                )));
            }
        }
        Command::Fig1 {
            points,
            gnuplot,
            cross_check,
        } => {
            let report = run_fig1(&Fig1Options {
                points,
                jobs: cfg.jobs,
                rel_tol: cli.global.rel_tol.unwrap_or(Fig1Options::default().rel_tol),
                cross_check,
                gnuplot,
            })?;
            emit(cfg.output.as_deref(), &report.csv)?;
            eprintln!("{}", report.summary());
        }
        Command::Asymptotes => {
            emit(cfg.output.as_deref(), &asymptotes(&cfg)?.render())?;
        }
        Command::Selftest {
            tolerance,
            tolerance_scale,
        } => {
            let results = run_selftest(tolerance, tolerance_scale);
            let text: String = results.iter().map(|r| r.json() + "\n").collect();
            emit(cfg.output.as_deref(), &text)?;
            let failed: Vec<&str> = results
                .iter()
                .filter(|r| !r.passed)
                .map(|r| r.check)
                .collect();
            if !failed.is_empty() {
                return Err(CliError::Selftest(failed.join(", ")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // usage errors count as config errors
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
