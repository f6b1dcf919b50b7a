//! Built-in numerical checks, one JSON object per line.

use serde::Serialize;
use vdw_sphere::green::brace_terms;
use vdw_sphere::oracle::{complex_brace, legendre_sum_residuals, wronskian_residual};
use vdw_sphere::{
    long_distance_kernel_integral, retarded_limit, vdw_potential, Oscillator, PermittivityModel,
    PolarizabilityModel, QuadratureSpec, SeriesSpec, ShortDistanceLaw, SphereSystem,
    StaticResponse,
};

use crate::fig1::{run_fig1, Fig1Options};
use crate::sweep::{fit_slope, thread_pool};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: &'static str,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckResult {
    pub fn json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }
}

type Measure = fn() -> vdw_sphere::Result<f64>;

/// `(name, tolerance, measurement)`; the measurement is a nonnegative error.
pub const CHECKS: &[(&str, f64, Measure)] = &[
    ("kernel_integral", 1e-8, kernel_integral),
    ("wronskian", 1e-10, wronskian),
    ("legendre_sums", 1e-10, legendre_sums),
    ("complex_oracle", 1e-10, complex_oracle),
    ("retarded_law", 0.05, retarded_law),
    ("short_distance_law", 0.05, short_distance_law),
    ("far_slope", 0.1, far_slope),
    ("near_slope", 0.2, near_slope),
    ("absorption_reduction", 0.05, absorption_reduction),
    ("thread_determinism", f64::MIN_POSITIVE, thread_determinism),
];

/// Runs every check. Each tolerance is replaced by `tolerance` if given and
/// then multiplied by `scale`. A check passes when its measured error is
/// strictly below the tolerance, so a tolerance of 0 fails everything.
pub fn run_selftest(tolerance: Option<f64>, scale: f64) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|&(check, tol, measure)| {
            let tolerance = tolerance.unwrap_or(tol) * scale;
            match measure() {
                Ok(measured) => CheckResult {
                    check,
                    passed: measured < tolerance,
                    measured,
                    tolerance,
                    error: None,
                },
                Err(e) => CheckResult {
                    check,
                    passed: false,
                    measured: f64::NAN,
                    tolerance,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

fn kernel_integral() -> vdw_sphere::Result<f64> {
    Ok((long_distance_kernel_integral(1e-12)? - 23.0 / 4.0).abs())
}

fn wronskian() -> vdw_sphere::Result<f64> {
    let mut worst: f64 = 0.0;
    for n in 0..=50 {
        for x in log_grid(1e-2, 50.0, 12) {
            worst = worst.max(wronskian_residual(n, x)?);
        }
    }
    Ok(worst)
}

fn legendre_sums() -> vdw_sphere::Result<f64> {
    let mut worst: f64 = 0.0;
    for n in 0..=20 {
        let half = ((n * (n + 1)) as f64 / 2.0).max(1.0);
        for theta in [0.1, 0.7, 1.3, 2.9] {
            let r = legendre_sum_residuals(n, theta)?;
            worst = worst
                .max(r[0].abs())
                .max(r[1].abs() / half)
                .max(r[2].abs() / half);
        }
    }
    Ok(worst)
}

/// Largest of the relative real-part mismatch and 100× the relative
/// imaginary residue, so that one tolerance covers both targets.
fn complex_oracle() -> vdw_sphere::Result<f64> {
    let material = PermittivityModel::new(vec![
        Oscillator::new(1.0, 0.0, 0.1)?,
        Oscillator::new(2.0, 1.5, 0.3)?,
    ]);
    let sphere = SphereSystem::new(1.0, material)?;
    let mut worst: f64 = 0.0;
    for n in [1, 2, 5, 10, 20, 50] {
        for u in log_grid(1e-3, 1e2, 6) {
            for r_a in [1.05, 1.5, 4.0] {
                let (te, tm) = brace_terms(&sphere, n, u, r_a)?;
                let o = complex_brace(&sphere, n, u, r_a)?;
                for (prod, oracle) in [(te, o.te), (tm, o.tm)] {
                    let p = prod.value * (prod.log_scale - o.log_scale).exp();
                    let mag = oracle.norm().max(p.abs());
                    if mag > 0.0 {
                        worst = worst
                            .max((p - oracle.re).abs() / mag)
                            .max(100.0 * oracle.im.abs() / mag);
                    }
                }
            }
        }
    }
    Ok(worst)
}

fn dielectric_sphere() -> vdw_sphere::Result<(PolarizabilityModel, SphereSystem)> {
    // ε(iu) = 3 for all u, α(iu) nearly flat over the relevant band
    let w: f64 = 100.0;
    let material = PermittivityModel::new(vec![Oscillator::new((2.0 * w * w).sqrt(), w, 0.0)?]);
    let atom = PolarizabilityModel::single(w, 1.0)?;
    Ok((atom, SphereSystem::new(1.0, material)?))
}

fn retarded_law() -> vdw_sphere::Result<f64> {
    let (atom, sphere) = dielectric_sphere()?;
    let r = 200.0;
    let full = vdw_potential(
        &atom,
        &sphere,
        r,
        &QuadratureSpec::default(),
        &SeriesSpec::default(),
    )?;
    let law = retarded_limit(
        atom.static_polarizability(),
        StaticResponse::of(sphere.material()),
        1.0,
        r,
    );
    Ok((full.energy / law - 1.0).abs())
}

fn drude_lorentz() -> vdw_sphere::Result<(PolarizabilityModel, PermittivityModel)> {
    Ok((
        PolarizabilityModel::single(0.7, 1.0)?,
        PermittivityModel::new(vec![Oscillator::new(1.0, 0.3, 0.1)?]),
    ))
}

fn short_distance_law() -> vdw_sphere::Result<f64> {
    let (atom, material) = drude_lorentz()?;
    let quad = QuadratureSpec::default();
    let law = ShortDistanceLaw::new(&atom, &material, &quad)?;
    let sphere = SphereSystem::new(1.0, material)?;
    let delta = 1e-2;
    let full = vdw_potential(&atom, &sphere, 1.0 + delta, &quad, &SeriesSpec::default())?;
    Ok((full.energy / law.potential(delta) - 1.0).abs())
}

fn energy_slope(
    atom: &PolarizabilityModel,
    sphere: &SphereSystem,
    distances: &[f64],
    x: impl Fn(f64) -> f64,
) -> vdw_sphere::Result<f64> {
    let quad = QuadratureSpec::default();
    let series = SeriesSpec::default();
    let pts = distances
        .iter()
        .map(|&r| {
            Ok((
                x(r).ln(),
                vdw_potential(atom, sphere, r, &quad, &series)?
                    .energy
                    .abs()
                    .ln(),
            ))
        })
        .collect::<vdw_sphere::Result<Vec<_>>>()?;
    Ok(fit_slope(&pts).unwrap_or(f64::NAN))
}

fn far_slope() -> vdw_sphere::Result<f64> {
    let (atom, sphere) = dielectric_sphere()?;
    Ok((energy_slope(&atom, &sphere, &log_grid(100.0, 500.0, 4), |r| r)? + 7.0).abs())
}

fn near_slope() -> vdw_sphere::Result<f64> {
    let (atom, material) = drude_lorentz()?;
    let sphere = SphereSystem::new(1.0, material)?;
    let r: Vec<f64> = log_grid(1e-3, 1e-2, 3).iter().map(|d| 1.0 + d).collect();
    Ok((energy_slope(&atom, &sphere, &r, |r| r - 1.0)? + 3.0).abs())
}

fn absorption_reduction() -> vdw_sphere::Result<f64> {
    let r = run_fig1(&Fig1Options {
        points: 2,
        jobs: 1,
        ..Default::default()
    })
    .map_err(|e| vdw_sphere::Error::Domain(e.to_string()))?;
    if !r.ordered {
        return Ok(f64::INFINITY);
    }
    Ok((r.reduction - 0.30).abs())
}

fn thread_determinism() -> vdw_sphere::Result<f64> {
    let (atom, material) = drude_lorentz()?;
    let sphere = SphereSystem::new(1.0, material)?;
    let eval = |jobs: usize| {
        thread_pool(jobs)
            .map_err(|e| vdw_sphere::Error::Domain(e.to_string()))?
            .install(|| {
                vdw_potential(
                    &atom,
                    &sphere,
                    1.3,
                    &QuadratureSpec::default(),
                    &SeriesSpec::default(),
                )
            })
    };
    let a = eval(1)?.energy;
    let b = eval(4)?.energy;
    Ok(if a.to_bits() == b.to_bits() {
        0.0
    } else {
        (a - b).abs().max(f64::MIN_POSITIVE)
    })
}
