//! Distance sweeps written as CSV.

use std::fmt::Write as _;

use rayon::prelude::*;
use vdw_sphere::{
    energy_normalization, force_normalization, long_distance_sample, vdw_force, PotentialSample,
    QuadratureSpec, SeriesSpec, ShortDistanceLaw,
};

use crate::config::{Mode, RunConfig};
use crate::units::{Boundary, Models};
use crate::{fig1, CliError};

pub const CSV_HEADER: &str = "r_A,delta_r,U,F,U_normalized,F_normalized,n_used,panels,est_error";

/// One evaluated grid point, in output units.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub r_a: f64,
    pub delta_r: f64,
    pub energy: f64,
    pub force: f64,
    pub energy_normalized: Option<f64>,
    pub force_normalized: Option<f64>,
    pub n_used: usize,
    pub panels: usize,
    pub est_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub csv: String,
    pub rows: Vec<Row>,
    /// `(r_A, message)` of points that failed.
    pub failures: Vec<(f64, String)>,
    /// Least-squares slope of `ln|U|` against `ln r_A`.
    pub slope_r: Option<f64>,
    /// Same against `ln Δr`.
    pub slope_delta: Option<f64>,
}

impl SweepReport {
    pub fn summary(&self) -> String {
        let fmt = |s: Option<f64>| s.map(|v| format!("{v:.4}")).unwrap_or_else(|| "n/a".into());
        format!(
            "points: {} ok, {} failed; slope d ln|U| / d ln r_A = {}; d ln|U| / d ln delta_r = {}",
            self.rows.len(),
            self.failures.len(),
            fmt(self.slope_r),
            fmt(self.slope_delta),
        )
    }
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Least-squares slope of `y` on `x`.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub(crate) fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Compute(format!("cannot start worker pool: {e}")))
}

pub(crate) fn specs(cfg: &RunConfig) -> (QuadratureSpec, SeriesSpec) {
    (
        QuadratureSpec {
            rel_tol: cfg.quad_rel_tol,
            u_scale: None,
            max_panels: cfg.max_panels,
        },
        SeriesSpec {
            rel_tol: cfg.series_rel_tol,
            n_max: cfg.n_max,
            ..SeriesSpec::default()
        },
    )
}

enum Evaluator {
    Full(QuadratureSpec, SeriesSpec),
    Short(ShortDistanceLaw),
    Long(QuadratureSpec),
}

impl Evaluator {
    fn sample(&self, m: &Models, r_a: f64) -> vdw_sphere::Result<PotentialSample> {
        match self {
            Evaluator::Full(q, s) => Ok(vdw_force(&m.atom, &m.sphere, r_a, q, s)?.into_sample(r_a)),
            Evaluator::Long(q) => long_distance_sample(&m.atom, &m.sphere, r_a, q),
            Evaluator::Short(law) => {
                let delta = r_a - m.sphere.radius();
                Ok(PotentialSample {
                    r_a,
                    energy: law.potential(delta),
                    force: Some(law.force(delta)),
                    force_error: None,
                    diagnostics: vdw_sphere::Diagnostics {
                        n_used_max: 0,
                        panels: law.panels(),
                        est_error: law.est_error() / delta.powi(3),
                    },
                })
            }
        }
    }
}

/// Runs the configured sweep. Per-point failures are collected rather than
/// aborting the run.
pub fn run_sweep(cfg: &RunConfig) -> Result<SweepReport, CliError> {
    cfg.validate()?;
    if cfg.mode == Mode::Fig1 {
        let report = fig1::run_fig1(&fig1::Fig1Options {
            jobs: cfg.jobs,
            ..Default::default()
        })?;
        return Ok(SweepReport {
            csv: report.csv,
            rows: Vec::new(),
            failures: Vec::new(),
            slope_r: None,
            slope_delta: None,
        });
    }
    let boundary = Boundary::new(cfg);
    let models = boundary.models(cfg)?;
    let (quad, series) = specs(cfg);
    let pool = thread_pool(cfg.jobs)?;

    let evaluator = match cfg.mode {
        Mode::Full => Evaluator::Full(quad, series),
        Mode::Long => Evaluator::Long(quad),
        Mode::Short => Evaluator::Short(
            ShortDistanceLaw::new(&models.atom, &models.material, &quad)
                .map_err(|e| CliError::Compute(e.to_string()))?,
        ),
        Mode::Fig1 => unreachable!(),
    };
    let c_energy = energy_normalization(&models.atom, &models.material);
    let c_force = force_normalization(&models.atom, &models.material);

    let grid = cfg.grid();
    let results: Vec<vdw_sphere::Result<PotentialSample>> = pool.install(|| {
        grid.par_iter()
            .map(|&r| evaluator.sample(&models, boundary.length(r)))
            .collect()
    });

    let mut csv = String::with_capacity(128 * (grid.len() + 1));
    csv.push_str(CSV_HEADER);
    csv.push('\n');
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (&r_cfg, result) in grid.iter().zip(results) {
        let delta_cfg = r_cfg - cfg.radius;
        match result {
            Ok(s) => {
                let force = s.force.unwrap_or(f64::NAN);
                let row = Row {
                    r_a: r_cfg,
                    delta_r: delta_cfg,
                    energy: boundary.energy_out(s.energy),
                    force: boundary.force_out(force),
                    energy_normalized: c_energy.map(|c| c * s.energy),
                    force_normalized: c_force.map(|c| c * force.abs()),
                    n_used: s.diagnostics.n_used_max,
                    panels: s.diagnostics.panels,
                    est_error: boundary.energy_out(s.diagnostics.est_error),
                };
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{},{},{},{}",
                    num(row.r_a),
                    num(row.delta_r),
                    num(row.energy),
                    num(row.force),
                    opt(row.energy_normalized),
                    opt(row.force_normalized),
                    row.n_used,
                    row.panels,
                    num(row.est_error),
                );
                rows.push(row);
            }
            Err(e) => {
                let _ = writeln!(
                    csv,
                    "{},{},nan,nan,nan,nan,nan,nan,nan",
                    num(r_cfg),
                    num(delta_cfg)
                );
                failures.push((r_cfg, e.to_string()));
            }
        }
    }

    let usable: Vec<&Row> = rows
        .iter()
        .filter(|r| r.energy != 0.0 && r.energy.is_finite())
        .collect();
    let slope_r = fit_slope(
        &usable
            .iter()
            .map(|r| (r.r_a.ln(), r.energy.abs().ln()))
            .collect::<Vec<_>>(),
    );
    let slope_delta = fit_slope(
        &usable
            .iter()
            .map(|r| (r.delta_r.ln(), r.energy.abs().ln()))
            .collect::<Vec<_>>(),
    );
    Ok(SweepReport {
        csv,
        rows,
        failures,
        slope_r,
        slope_delta,
    })
}
