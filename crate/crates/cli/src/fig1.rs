//! Normalized force near a Drude sphere for three damping constants.
//!
//! Reduced units throughout: frequencies in the plasma frequency, distances
//! in the plasma wavelength `λ`. The atom has one transition at `0.7`.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use vdw_sphere::{
    force_normalization, vdw_force, Oscillator, PermittivityModel, PolarizabilityModel,
    QuadratureSpec, SeriesSpec, ShortDistanceLaw, SphereSystem,
};

use crate::sweep::{fit_slope, thread_pool};
use crate::CliError;

pub const GAMMAS: [f64; 3] = [0.01, 0.1, 1.0];
pub const TRANSITION: f64 = 0.7;
pub const DELTA_MIN: f64 = 1e-2;
pub const DELTA_MAX: f64 = 1e-1;

#[derive(Debug, Clone, PartialEq)]
pub struct Fig1Options {
    pub points: usize,
    pub jobs: usize,
    pub rel_tol: f64,
    /// Compare one point with the full sphere (`R = λ`) at `Δr = 1e-2 λ`.
    pub cross_check: bool,
    pub gnuplot: Option<PathBuf>,
}

impl Default for Fig1Options {
    fn default() -> Self {
        Fig1Options {
            points: 19,
            jobs: 0,
            rel_tol: 1e-9,
            cross_check: false,
            gnuplot: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheck {
    pub gamma: f64,
    pub delta_over_lambda: f64,
    pub short: f64,
    pub full: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig1Report {
    pub csv: String,
    pub grid: Vec<f64>,
    /// `C|F|` per damping constant, on `grid`.
    pub curves: Vec<Vec<f64>>,
    /// `1 - |F(γ=1)|/|F(γ=0.01)|` at the smallest distance.
    pub reduction: f64,
    /// Curves strictly ordered (larger damping below) at every grid point.
    pub ordered: bool,
    pub slopes: Vec<f64>,
    pub cross_check: Option<CrossCheck>,
}

impl Fig1Report {
    pub fn summary(&self) -> String {
        let mut s = format!(
            "reduction at delta_r = {DELTA_MIN} lambda: {:.4}; strictly ordered: {}",
            self.reduction, self.ordered
        );
        for (g, slope) in GAMMAS.iter().zip(&self.slopes) {
            let _ = write!(s, "; slope(gamma={g}) = {slope:.4}");
        }
        if let Some(c) = &self.cross_check {
            let _ = write!(
                s,
                "; full/short at gamma={} delta_r={} lambda: {:.4}",
                c.gamma,
                c.delta_over_lambda,
                c.full / c.short
            );
        }
        s
    }
}

pub fn atom() -> PolarizabilityModel {
    PolarizabilityModel::single(TRANSITION, 1.0).expect("valid transition")
}

pub fn drude(gamma: f64) -> Result<PermittivityModel, CliError> {
    Ok(PermittivityModel::new(vec![Oscillator::new(
        1.0, 0.0, gamma,
    )
    .map_err(|e| CliError::Compute(e.to_string()))?]))
}

pub fn grid(points: usize) -> Vec<f64> {
    let (a, b) = (DELTA_MIN.ln(), DELTA_MAX.ln());
    (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

fn gnuplot_script(report: &Fig1Report) -> String {
    let mut s = String::from("$data << EOD\n");
    s.push_str(&report.csv.replace(',', " "));
    s.push_str("EOD\nset logscale xy\nset xlabel 'delta_r / lambda'\nset ylabel 'C |F|'\nset key top right\n");
    let plots: Vec<String> = GAMMAS
        .iter()
        .enumerate()
        .map(|(i, g)| {
            format!(
                "$data using 1:{} skip 1 with lines title 'gamma = {g}'",
                i + 2
            )
        })
        .collect();
    let _ = writeln!(s, "plot {}", plots.join(", \\\n     "));
    s
}

pub fn run_fig1(opts: &Fig1Options) -> Result<Fig1Report, CliError> {
    if opts.points < 2 {
        return Err(CliError::Config(crate::config::ConfigError::new(
            "points",
            "need at least 2 grid points",
        )));
    }
    let pool = thread_pool(opts.jobs)?;
    let atom = atom();
    let lambda = 2.0 * PI;
    let quad = QuadratureSpec {
        rel_tol: opts.rel_tol,
        ..QuadratureSpec::default()
    };
    let grid = grid(opts.points);

    let compute = |e: vdw_sphere::Error| CliError::Compute(e.to_string());
    let mut curves = Vec::with_capacity(GAMMAS.len());
    for &g in &GAMMAS {
        let material = drude(g)?;
        let law = ShortDistanceLaw::new(&atom, &material, &quad).map_err(compute)?;
        let c = force_normalization(&atom, &material).expect("Drude reference frequency");
        curves.push(
            grid.iter()
                .map(|d| c * law.force(d * lambda).abs())
                .collect::<Vec<_>>(),
        );
    }

    let ordered = (0..grid.len()).all(|i| curves.windows(2).all(|w| w[1][i] < w[0][i]));
    let reduction = 1.0 - curves[2][0] / curves[0][0];
    let slopes = curves
        .iter()
        .map(|c| {
            let pts: Vec<(f64, f64)> = grid.iter().zip(c).map(|(x, y)| (x.ln(), y.ln())).collect();
            fit_slope(&pts).unwrap_or(f64::NAN)
        })
        .collect();

    let cross_check = if opts.cross_check {
        let gamma = GAMMAS[1];
        let material = drude(gamma)?;
        let c = force_normalization(&atom, &material).expect("Drude reference frequency");
        let sphere = SphereSystem::new(lambda, material).map_err(compute)?;
        let delta = DELTA_MIN * lambda;
        let full = pool
            .install(|| {
                vdw_force(
                    &atom,
                    &sphere,
                    lambda + delta,
                    &quad,
                    &SeriesSpec::default(),
                )
            })
            .map_err(compute)?;
        Some(CrossCheck {
            gamma,
            delta_over_lambda: DELTA_MIN,
            short: curves[1][0],
            full: c * full.force.abs(),
        })
    } else {
        None
    };

    let mut csv = String::from("delta_r_over_lambda");
    for g in GAMMAS {
        let _ = write!(csv, ",F_gamma_{g}");
    }
    csv.push('\n');
    for (i, d) in grid.iter().enumerate() {
        let _ = write!(csv, "{d:e}");
        for c in &curves {
            let _ = write!(csv, ",{:e}", c[i]);
        }
        csv.push('\n');
    }

    let report = Fig1Report {
        csv,
        grid,
        curves,
        reduction,
        ordered,
        slopes,
        cross_check,
    };
    if let Some(path) = &opts.gnuplot {
        std::fs::write(path, gnuplot_script(&report))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}
