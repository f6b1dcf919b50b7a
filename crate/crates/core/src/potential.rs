//! The van der Waals potential and force, and their closed-form limits.
//!
//! In natural units the potential of an atom at distance `r_a` from the
//! sphere centre is
//!
//! ```text
//! U(r_a) = -1/(8π²) ∫₀^∞ du u³ α(iu) T(u, r_a)
//! ```
//!
//! with `T` the multipole sum of [`crate::green::green_trace`]. Limits:
//!
//! * far away (`r_a ≫ R`) only the TM dipole survives and
//!   `U ≈ -R³/(4π² r_a⁷) ∫ dz α(iz/r_a) (ε-1)/(ε+2) [2(1+z)² + (1+z+z²)²] e^{-2z}`;
//!   with static response the integral is `23/4`, giving an `r_a⁻⁷` law;
//! * close to the surface (`Δr = r_a - R ≪ R`)
//!   `U ≈ -1/(16π² Δr³) ∫ du α(iu) (ε-1)/(ε+1)`.

use std::f64::consts::PI;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{domain, Error, Result};
use crate::green::{green_trace, SeriesSpec};
use crate::materials::{PermittivityModel, PolarizabilityModel};
use crate::mie::SphereSystem;
use crate::quadrature::{integrate_half_line, integrate_on_panels};

/// Gaps below this fraction of the radius are rejected by the full
/// pipeline; the multipole sum would need more than ~10⁴ orders.
pub const MIN_GAP_RATIO: f64 = 1e-4;

const PREFACTOR: f64 = -1.0 / (8.0 * PI * PI);

/// Settings of the frequency integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    /// Substitution scale; `None` picks `c/(2 r_a)`.
    pub u_scale: Option<f64>,
    pub max_panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-7,
            u_scale: None,
            max_panels: 4000,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return Err(domain(format!(
                "quadrature rel_tol must lie in (0, 1e-2], got {}",
                self.rel_tol
            )));
        }
        if let Some(s) = self.u_scale {
            if !(s > 0.0 && s.is_finite()) {
                return Err(domain(format!(
                    "quadrature u_scale must be positive, got {s}"
                )));
            }
        }
        if self.max_panels < 4 {
            return Err(domain("quadrature max_panels must be at least 4"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Diagnostics {
    /// Largest multipole order used at any quadrature node.
    pub n_used_max: usize,
    pub panels: usize,
    /// Absolute error estimate of the reported energy.
    pub est_error: f64,
}

/// One point of a potential curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSample {
    pub r_a: f64,
    pub energy: f64,
    /// `-∂U/∂r_a`; negative values point toward the sphere.
    pub force: Option<f64>,
    pub force_error: Option<f64>,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceEstimate {
    /// `-∂U/∂r_a`.
    pub force: f64,
    pub error: f64,
    pub energy: f64,
    pub diagnostics: Diagnostics,
}

impl ForceEstimate {
    pub fn into_sample(self, r_a: f64) -> PotentialSample {
        PotentialSample {
            r_a,
            energy: self.energy,
            force: Some(self.force),
            force_error: Some(self.error),
            diagnostics: self.diagnostics,
        }
    }
}

fn check_full_pipeline_position(sphere: &SphereSystem, r_a: f64) -> Result<()> {
    let radius = sphere.radius();
    if !(r_a.is_finite() && r_a > radius) {
        return Err(domain(format!(
            "atom position r_a = {r_a} must lie outside the sphere (R = {radius})"
        )));
    }
    if (r_a - radius) / radius < MIN_GAP_RATIO {
        return Err(domain(format!(
            "gap (r_a - R)/R = {:e} below {MIN_GAP_RATIO:e}; use the short-distance law instead",
            (r_a - radius) / radius
        )));
    }
    Ok(())
}

/// Frequency integrand `u³ α(iu) T(u, r_a)`, tracking the largest order used.
fn integrand<'a>(
    atom: &'a PolarizabilityModel,
    sphere: &'a SphereSystem,
    r_a: f64,
    series: &'a SeriesSpec,
    n_used: &'a AtomicUsize,
) -> impl Fn(f64) -> Result<f64> + Sync + 'a {
    move |u| {
        let alpha = atom.alpha_iu(u);
        if alpha == 0.0 {
            return Ok(0.0);
        }
        let g = green_trace(sphere, r_a, u, series)?;
        n_used.fetch_max(g.n_used, Ordering::Relaxed);
        Ok(u * u * u * alpha * g.value)
    }
}

/// `U(r_a)` from the full multipole series and adaptive frequency
/// quadrature.
pub fn vdw_potential(
    atom: &PolarizabilityModel,
    sphere: &SphereSystem,
    r_a: f64,
    quad: &QuadratureSpec,
    series: &SeriesSpec,
) -> Result<PotentialSample> {
    quad.validate()?;
    series.validate()?;
    check_full_pipeline_position(sphere, r_a)?;
    let scale = quad.u_scale.unwrap_or(0.5 / r_a);
    let n_used = AtomicUsize::new(0);
    let result = integrate_half_line(
        integrand(atom, sphere, r_a, series, &n_used),
        scale,
        quad.rel_tol,
        quad.max_panels,
    )?;
    Ok(PotentialSample {
        r_a,
        energy: PREFACTOR * result.value,
        force: None,
        force_error: None,
        diagnostics: Diagnostics {
            n_used_max: n_used.into_inner(),
            panels: result.panels.len(),
            est_error: PREFACTOR.abs() * result.est_error,
        },
    })
}

/// Central-difference derivative with one Richardson step: returns the
/// extrapolated `f'(x)` from steps `h` and `h/2` together with the
/// difference between the extrapolated and the finer estimate.
pub fn richardson_derivative<F>(f: F, x: f64, h: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(domain(format!(
            "differentiation step must be positive, got {h}"
        )));
    }
    let coarse = (f(x + h)? - f(x - h)?) / (2.0 * h);
    let fine = (f(x + 0.5 * h)? - f(x - 0.5 * h)?) / h;
    let extrapolated = (4.0 * fine - coarse) / 3.0;
    Ok((extrapolated, (extrapolated - fine).abs()))
}

/// Relative floor of the differentiation step, in units of `r_a`.
const STEP_FLOOR: f64 = 1e-6;

/// `F = -∂U/∂r_a` by Richardson-extrapolated central differences.
///
/// The quadrature panels are adapted once at `r_a` and reused at every
/// stencil point so the discretization is identical across the stencil.
pub fn vdw_force(
    atom: &PolarizabilityModel,
    sphere: &SphereSystem,
    r_a: f64,
    quad: &QuadratureSpec,
    series: &SeriesSpec,
) -> Result<ForceEstimate> {
    quad.validate()?;
    series.validate()?;
    check_full_pipeline_position(sphere, r_a)?;
    let gap = r_a - sphere.radius();
    let h = (1e-4 * gap).max(STEP_FLOOR * r_a);
    if 2.0 * h >= gap || h <= 64.0 * f64::EPSILON * r_a {
        return Err(domain(format!(
            "differentiation step {h:e} underflows the gap {gap:e}"
        )));
    }

    let scale = quad.u_scale.unwrap_or(0.5 / r_a);
    let n_used = AtomicUsize::new(0);
    let centre = integrate_half_line(
        integrand(atom, sphere, r_a, series, &n_used),
        scale,
        quad.rel_tol,
        quad.max_panels,
    )?;
    let intervals = centre.intervals();
    let stencil_series = SeriesSpec {
        rel_tol: (series.rel_tol * 1e-2).max(1e-14),
        ..*series
    };
    let energy_at = |r: f64| -> Result<f64> {
        let v = integrate_on_panels(
            integrand(atom, sphere, r, &stencil_series, &n_used),
            scale,
            &intervals,
        )?;
        Ok(PREFACTOR * v)
    };
    let (derivative, error) = richardson_derivative(energy_at, r_a, h)?;
    Ok(ForceEstimate {
        force: -derivative,
        error,
        energy: PREFACTOR * centre.value,
        diagnostics: Diagnostics {
            n_used_max: n_used.into_inner(),
            panels: intervals.len(),
            est_error: PREFACTOR.abs() * centre.est_error,
        },
    })
}

/// `2(1+z)² + (1+z+z²)²`, the radial weight of the far-field integral.
fn far_field_kernel(z: f64) -> f64 {
    let a = 1.0 + z;
    let b = 1.0 + z + z * z;
    2.0 * a * a + b * b
}

/// `∫₀^∞ [2(1+z)² + (1+z+z²)²] e^{-2z} dz`, which equals `23/4`.
pub fn long_distance_kernel_integral(rel_tol: f64) -> Result<f64> {
    Ok(integrate_half_line(
        |z| Ok(far_field_kernel(z) * (-2.0 * z).exp()),
        0.5,
        rel_tol,
        1000,
    )?
    .value)
}

fn far_field(
    atom: &PolarizabilityModel,
    sphere: &SphereSystem,
    r_a: f64,
    quad: &QuadratureSpec,
) -> Result<(f64, Diagnostics)> {
    quad.validate()?;
    if !(r_a.is_finite() && r_a > sphere.radius()) {
        return Err(domain(format!(
            "atom position r_a = {r_a} must lie outside the sphere"
        )));
    }
    let material = sphere.material();
    let result = integrate_half_line(
        |z| {
            let u = z / r_a;
            let chi = material.susceptibility_iu(u)?;
            Ok(atom.alpha_iu(u) * chi / (chi + 3.0) * far_field_kernel(z) * (-2.0 * z).exp())
        },
        0.5,
        quad.rel_tol,
        quad.max_panels,
    )?;
    let norm = sphere.radius().powi(3) / (4.0 * PI * PI * r_a.powi(7));
    Ok((
        -norm * result.value,
        Diagnostics {
            n_used_max: 1,
            panels: result.panels.len(),
            est_error: norm * result.est_error,
        },
    ))
}

/// Far-field (TM dipole) approximation to `U(r_a)` with the full frequency
/// dependence of `α` and `ε` kept. Meaningful for `r_a/R` of about 20 and
/// beyond.
pub fn long_distance_integral(
    atom: &PolarizabilityModel,
    sphere: &SphereSystem,
    r_a: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    Ok(far_field(atom, sphere, r_a, quad)?.0)
}

/// [`long_distance_integral`] together with its force and diagnostics.
pub fn long_distance_sample(
    atom: &PolarizabilityModel,
    sphere: &SphereSystem,
    r_a: f64,
    quad: &QuadratureSpec,
) -> Result<PotentialSample> {
    let (energy, diagnostics) = far_field(atom, sphere, r_a, quad)?;
    let h = 1e-4 * (r_a - sphere.radius());
    let (derivative, error) =
        richardson_derivative(|r| long_distance_integral(atom, sphere, r, quad), r_a, h)?;
    Ok(PotentialSample {
        r_a,
        energy,
        force: Some(-derivative),
        force_error: Some(error),
        diagnostics,
    })
}

/// Static response of the sphere material entering the retarded law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StaticResponse {
    Dielectric(f64),
    Metal,
}

impl StaticResponse {
    pub fn of(model: &PermittivityModel) -> Self {
        match model.static_permittivity() {
            Some(eps) => StaticResponse::Dielectric(eps),
            None => StaticResponse::Metal,
        }
    }

    /// `(ε⁰-1)/(ε⁰+2)`, or 1 for a metal.
    pub fn material_factor(self) -> f64 {
        match self {
            StaticResponse::Dielectric(eps) => (eps - 1.0) / (eps + 2.0),
            StaticResponse::Metal => 1.0,
        }
    }
}

/// Retarded `r_a⁻⁷` law `-23 R³ α⁰ /(16π²) · (ε⁰-1)/(ε⁰+2) / r_a⁷`.
pub fn retarded_limit(alpha_static: f64, response: StaticResponse, radius: f64, r_a: f64) -> f64 {
    -23.0 * radius.powi(3) * alpha_static / (16.0 * PI * PI) * response.material_factor()
        / r_a.powi(7)
}

/// Static polarizability of a dielectric sphere, `4π R³ (ε⁰-1)/(ε⁰+2)`.
pub fn sphere_static_polarizability(response: StaticResponse, radius: f64) -> f64 {
    4.0 * PI * radius.powi(3) * response.material_factor()
}

/// Retarded interaction of two polarizable particles,
/// `-α_a α_b/(4π)² · 23/(4π) / r⁷`.
pub fn two_body_retarded(alpha_a: f64, alpha_b: f64, r: f64) -> f64 {
    -alpha_a * alpha_b / (16.0 * PI * PI) * 23.0 / (4.0 * PI) / r.powi(7)
}

/// Near-surface law `U = -K/Δr³`. The coefficient `K` does not depend on
/// the distance, so it is computed once per atom and material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortDistanceLaw {
    coefficient: f64,
    est_error: f64,
    panels: usize,
}

impl ShortDistanceLaw {
    /// `K = 1/(16π²) ∫ du α(iu) (ε(iu)-1)/(ε(iu)+1)`.
    pub fn new(
        atom: &PolarizabilityModel,
        material: &PermittivityModel,
        quad: &QuadratureSpec,
    ) -> Result<Self> {
        quad.validate()?;
        let scale = quad
            .u_scale
            .or_else(|| atom.min_frequency())
            .or_else(|| material.reference_frequency())
            .unwrap_or(1.0);
        let result = integrate_half_line(
            |u| {
                let alpha = atom.alpha_iu(u);
                if alpha == 0.0 {
                    return Ok(0.0);
                }
                Ok(alpha * material.surface_response(u)?)
            },
            scale,
            quad.rel_tol,
            quad.max_panels,
        )?;
        let norm = 1.0 / (16.0 * PI * PI);
        Ok(ShortDistanceLaw {
            coefficient: norm * result.value,
            est_error: norm * result.est_error,
            panels: result.panels.len(),
        })
    }

    /// Model with `(ε-1)/(ε+1) ≡ 1`: `K = ⟨0|d²|0⟩/(48π)`.
    pub fn perfect_reflector(atom: &PolarizabilityModel) -> Self {
        ShortDistanceLaw {
            coefficient: atom.dipole_sq_sum() / (48.0 * PI),
            est_error: 0.0,
            panels: 0,
        }
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn est_error(&self) -> f64 {
        self.est_error
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn potential(&self, delta_r: f64) -> f64 {
        -self.coefficient / delta_r.powi(3)
    }

    /// `-∂U/∂r_a = -3K/Δr⁴`.
    pub fn force(&self, delta_r: f64) -> f64 {
        -3.0 * self.coefficient / delta_r.powi(4)
    }
}

/// `U(Δr)` from the near-surface law.
pub fn short_distance_potential(
    atom: &PolarizabilityModel,
    material: &PermittivityModel,
    delta_r: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    if !(delta_r > 0.0 && delta_r.is_finite()) {
        return Err(domain(format!(
            "surface distance must be positive, got {delta_r}"
        )));
    }
    Ok(ShortDistanceLaw::new(atom, material, quad)?.potential(delta_r))
}

/// `C = 16π² λ⁴ / Σ|d_0n|²` with `λ = 2π/Ω` of the first oscillator, so
/// that `C |F|` is dimensionless.
pub fn force_normalization(
    atom: &PolarizabilityModel,
    material: &PermittivityModel,
) -> Option<f64> {
    Some(energy_normalization(atom, material)? * 2.0 * PI / material.reference_frequency()?)
}

/// `16π² λ³ / Σ|d_0n|²`, the matching scale for energies.
pub fn energy_normalization(
    atom: &PolarizabilityModel,
    material: &PermittivityModel,
) -> Option<f64> {
    let omega = material.reference_frequency()?;
    let d2 = atom.dipole_sq_sum();
    if d2 == 0.0 {
        return None;
    }
    let lambda = 2.0 * PI / omega;
    Some(16.0 * PI * PI * lambda.powi(3) / d2)
}

/// How the force is evaluated when scanning damping constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ForceModel {
    /// Near-surface law, independent of the radius.
    ShortDistance(QuadratureSpec),
    /// Full multipole pipeline for a sphere of the given radius.
    FullSphere {
        radius: f64,
        quad: QuadratureSpec,
        series: SeriesSpec,
    },
}

impl ForceModel {
    pub fn force(
        &self,
        atom: &PolarizabilityModel,
        material: &PermittivityModel,
        delta_r: f64,
    ) -> Result<f64> {
        match self {
            ForceModel::ShortDistance(quad) => {
                Ok(ShortDistanceLaw::new(atom, material, quad)?.force(delta_r))
            }
            ForceModel::FullSphere {
                radius,
                quad,
                series,
            } => {
                let sphere = SphereSystem::new(*radius, material.clone())?;
                Ok(vdw_force(atom, &sphere, radius + delta_r, quad, series)?.force)
            }
        }
    }
}

/// `|F|` at fixed distance for each damping constant in `gammas` (applied
/// to every oscillator). Fails if the magnitudes are not strictly
/// decreasing.
pub fn absorption_monotonicity(
    atom: &PolarizabilityModel,
    material: &PermittivityModel,
    delta_r: f64,
    gammas: &[f64],
    model: &ForceModel,
) -> Result<Vec<f64>> {
    if gammas.iter().any(|g| !(*g >= 0.0 && g.is_finite())) {
        return Err(domain("damping constants must be finite and >= 0"));
    }
    if gammas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(domain("damping constants must be strictly increasing"));
    }
    let forces = gammas
        .iter()
        .map(|&g| {
            Ok(model
                .force(atom, &material.with_damping(g)?, delta_r)?
                .abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    for (i, w) in forces.windows(2).enumerate() {
        if w[1] >= w[0] {
            return Err(Error::MonotonicityViolated {
                gamma_lo: gammas[i],
                gamma_hi: gammas[i + 1],
                force_lo: w[0],
                force_hi: w[1],
            });
        }
    }
    Ok(forces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn power_law_stub_derivative() {
        let a = 2.5;
        let r = 3.0;
        let (d, err) = richardson_derivative(|x| Ok(a / x.powi(7)), r, 1e-4 * r).unwrap();
        assert_relative_eq!(-d, 7.0 * a / r.powi(8), max_relative = 1e-6);
        assert!(err < 1e-6 * d.abs());
    }

    #[test]
    fn far_field_kernel_integral() {
        assert_relative_eq!(
            long_distance_kernel_integral(1e-12).unwrap(),
            23.0 / 4.0,
            max_relative = 1e-10
        );
    }

    #[test]
    fn retarded_law_factors() {
        assert_relative_eq!(StaticResponse::Dielectric(3.0).material_factor(), 0.4);
        let metal = retarded_limit(1.0, StaticResponse::Metal, 1.0, 10.0);
        let near_metal = retarded_limit(1.0, StaticResponse::Dielectric(1e6), 1.0, 10.0);
        assert_relative_eq!(metal, near_metal, max_relative = 1e-5);
    }

    #[test]
    fn retarded_law_as_two_body_law() {
        let response = StaticResponse::Dielectric(3.0);
        let (radius, alpha, r) = (0.7, 1.3, 40.0);
        let alpha_sph = sphere_static_polarizability(response, radius);
        assert_relative_eq!(
            retarded_limit(alpha, response, radius, r),
            two_body_retarded(alpha_sph, alpha, r),
            max_relative = 1e-14
        );
    }

    #[test]
    fn perfect_reflector_matches_strong_drude() {
        let atom = PolarizabilityModel::single(0.7, 1.0).unwrap();
        let material = PermittivityModel::drude(1e5, 0.0).unwrap();
        let law = ShortDistanceLaw::new(&atom, &material, &QuadratureSpec::default()).unwrap();
        let ideal = ShortDistanceLaw::perfect_reflector(&atom);
        // the response drops off only above u ~ Ω, where α ~ 1/u² has a ~1e-5 tail
        assert_relative_eq!(law.coefficient(), ideal.coefficient(), max_relative = 1e-4);
        assert_relative_eq!(
            ideal.potential(0.1),
            -1.0 / (48.0 * PI * 1e-3),
            max_relative = 1e-14
        );
    }

    #[test]
    fn zero_inputs_give_zero() {
        let atom = PolarizabilityModel::single(0.7, 1.0).unwrap();
        let q = QuadratureSpec::default();
        assert_eq!(
            short_distance_potential(&atom, &PermittivityModel::vacuum(), 0.1, &q).unwrap(),
            0.0
        );
        let sphere =
            SphereSystem::new(1.0, PermittivityModel::lorentz(1.0, 1.0, 0.1).unwrap()).unwrap();
        let none = PolarizabilityModel::default();
        let s = vdw_potential(&none, &sphere, 2.0, &q, &SeriesSpec::default()).unwrap();
        assert_eq!(s.energy, 0.0);
        let vac = SphereSystem::new(1.0, PermittivityModel::vacuum()).unwrap();
        let s = vdw_potential(&atom, &vac, 2.0, &q, &SeriesSpec::default()).unwrap();
        assert_eq!(s.energy, 0.0);
        assert_eq!(long_distance_integral(&atom, &vac, 30.0, &q).unwrap(), 0.0);
    }

    #[test]
    fn rejects_positions_too_close() {
        let atom = PolarizabilityModel::single(0.7, 1.0).unwrap();
        let sphere =
            SphereSystem::new(1.0, PermittivityModel::lorentz(1.0, 1.0, 0.1).unwrap()).unwrap();
        let q = QuadratureSpec::default();
        let s = SeriesSpec::default();
        assert!(vdw_potential(&atom, &sphere, 0.9, &q, &s).is_err());
        assert!(vdw_potential(&atom, &sphere, 1.0 + 1e-5, &q, &s).is_err());
        assert!(vdw_force(&atom, &sphere, 1.0, &q, &s).is_err());
    }

    #[test]
    fn quadrature_spec_validation() {
        assert!(QuadratureSpec {
            rel_tol: 0.1,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(QuadratureSpec {
            u_scale: Some(-1.0),
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(QuadratureSpec::default().validate().is_ok());
    }

    #[test]
    fn single_gamma_is_trivially_ordered() {
        let atom = PolarizabilityModel::single(0.7, 1.0).unwrap();
        let material = PermittivityModel::drude(1.0, 0.01).unwrap();
        let model = ForceModel::ShortDistance(QuadratureSpec::default());
        let f = absorption_monotonicity(&atom, &material, 0.05, &[0.3], &model).unwrap();
        assert_eq!(f.len(), 1);
        assert!(absorption_monotonicity(&atom, &material, 0.05, &[0.3, 0.1], &model).is_err());
    }

    #[test]
    fn normalization_requires_reference() {
        let atom = PolarizabilityModel::single(0.7, 2.0).unwrap();
        assert!(force_normalization(&atom, &PermittivityModel::vacuum()).is_none());
        let c = force_normalization(&atom, &PermittivityModel::drude(1.0, 0.1).unwrap()).unwrap();
        assert_relative_eq!(
            c,
            16.0 * PI * PI * (2.0 * PI).powi(4) / 2.0,
            max_relative = 1e-14
        );
        // C |F| for the planar perfect reflector is π (λ/Δr)⁴
        let law = ShortDistanceLaw::perfect_reflector(&atom);
        let lambda = 2.0 * PI;
        assert_relative_eq!(
            c * law.force(0.1 * lambda).abs(),
            PI * 1e4,
            max_relative = 1e-12
        );
    }
}
