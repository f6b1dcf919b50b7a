//! Trace of the sphere's scattering Green tensor at coincident points on the
//! imaginary axis, summed over multipoles with adaptive truncation.
//!
//! With `ρ = u r_a / c` and the real working coefficients of [`crate::mie`],
//! order `n` contributes `(2n+1) · {te · H + tm · [n(n+1) H_x + H_d]}`, where
//!
//! ```text
//! H   = (4/π²) k_n(ρ)²              from [h_n(k₀r)]²
//! H_x = -(4/π²) k_n(ρ)² / ρ²        from [h_n(k₀r)/(k₀r)]²
//! H_d = -(4/π²) [(ρ k_n(ρ))']² / ρ² from [(1/k₀r) d(r h_n)/dr]²
//! ```
//!
//! The sum is the quantity that multiplies `-u³ α(iu) / (8π²)` in the
//! potential integrand. It is positive for any sphere with `ε(iu) > 1`.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::mie::{coefficient_brackets, SizeParameters, SphereSystem};
use crate::specfun::{ModSphITable, ModSphKTable, Scaled};

/// Beyond `2 u (r_a - R) / c` of this size every term is below `e^{-800}`
/// relative to the near-field scale and the trace is reported as zero.
const DECAY_CUTOFF: f64 = 800.0;

/// Truncation policy for the multipole sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSpec {
    /// Relative bound on the extrapolated tail.
    pub rel_tol: f64,
    /// Hard cap on the multipole order.
    pub n_max: usize,
    /// The sum never stops before `peak_safety / ln(r_a/R)`, i.e. well past
    /// the dominant multipole.
    pub peak_safety: f64,
    /// Return a flagged partial sum instead of an error at `n_max`.
    pub allow_partial: bool,
}

impl Default for SeriesSpec {
    fn default() -> Self {
        SeriesSpec {
            rel_tol: 1e-8,
            n_max: 200_000,
            peak_safety: 5.0,
            allow_partial: false,
        }
    }
}

impl SeriesSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(domain(format!(
                "series rel_tol must lie in (0, 1), got {}",
                self.rel_tol
            )));
        }
        if self.n_max < 2 {
            return Err(domain("series n_max must be at least 2"));
        }
        if !(self.peak_safety >= 1.0 && self.peak_safety.is_finite()) {
            return Err(domain("series peak_safety must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenTraceResult {
    /// Full multipole sum (TE + TM).
    pub value: f64,
    pub te_value: f64,
    pub tm_value: f64,
    /// Highest order included.
    pub n_used: usize,
    pub tail_estimate: f64,
    pub converged: bool,
}

/// The three squared radial factors `H`, `H_x`, `H_d`, sharing one log scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialFactors {
    pub h_sq: Scaled,
    pub h_over_x_sq: Scaled,
    pub dh_sq: Scaled,
}

fn radial_from_table(k: &ModSphKTable, n: usize) -> RadialFactors {
    let x = k.x();
    let kn = k.value(n);
    let h_sq = (kn * kn).scale(4.0 / (PI * PI));
    let d = k.log_derivative(n);
    RadialFactors {
        h_sq,
        h_over_x_sq: h_sq.scale(-1.0 / (x * x)),
        dh_sq: h_sq.scale(-(d * d) / (x * x)),
    }
}

pub fn radial_factors(n: usize, x: f64) -> Result<RadialFactors> {
    let k = ModSphKTable::new(n, x)?;
    Ok(radial_from_table(&k, n))
}

/// Bessel tables for the outer, inner and atomic arguments.
struct Tables {
    outer_i: ModSphITable,
    inner_i: ModSphITable,
    outer_k: ModSphKTable,
    atom_k: ModSphKTable,
}

impl Tables {
    fn new(n_max: usize, x0: f64, x1: f64, rho: f64) -> Result<Self> {
        Ok(Tables {
            outer_i: ModSphITable::new(n_max, x0)?,
            inner_i: ModSphITable::new(n_max, x1)?,
            outer_k: ModSphKTable::new(n_max, x0)?,
            atom_k: ModSphKTable::new(n_max, rho)?,
        })
    }

    /// TE and TM brace terms of order `n`, without the `(2n+1)` weight.
    fn brace(&self, p: &SizeParameters, n: usize) -> (Scaled, Scaled) {
        let (te_bracket, tm_bracket) = coefficient_brackets(
            p,
            n,
            self.outer_i.log_derivative_excess(n),
            self.inner_i.log_derivative_excess(n),
            self.outer_k.log_derivative(n),
        );
        let k_atom = self.atom_k.value(n);
        let amplitude = self.outer_i.value(n) * self.outer_k.value(n).recip() * k_atom * k_atom;
        let rho = self.atom_k.x();
        let d = self.atom_k.log_derivative(n);
        let nf = n as f64;
        let radial_tm = (nf * (nf + 1.0) + d * d) / (rho * rho);
        // (π/2)·(4/π²) = 2/π
        (
            amplitude.scale(2.0 / PI * te_bracket),
            amplitude.scale(-2.0 / PI * tm_bracket * radial_tm),
        )
    }
}

fn check_position(sphere: &SphereSystem, r_a: f64) -> Result<()> {
    if !(r_a.is_finite() && r_a > sphere.radius()) {
        return Err(domain(format!(
            "atom position r_a = {r_a} must lie outside the sphere (R = {})",
            sphere.radius()
        )));
    }
    Ok(())
}

/// TE and TM brace terms of a single order (no `(2n+1)` weight), as
/// scaled numbers.
pub fn brace_terms(sphere: &SphereSystem, n: usize, u: f64, r_a: f64) -> Result<(Scaled, Scaled)> {
    check_position(sphere, r_a)?;
    if n == 0 {
        return Err(domain("multipole order must be >= 1"));
    }
    let p = sphere.size_parameters(u)?;
    let tables = Tables::new(n, p.x0, p.x1, u * r_a)?;
    Ok(tables.brace(&p, n))
}

/// Multipole order at which `n(n+1)(R/r_a)^{2n+1}` peaks.
pub fn dominant_multipole(radius: f64, r_a: f64) -> f64 {
    1.0 / (r_a / radius).ln()
}

/// Sums the traced scattering Green tensor over multipoles `n >= 1`.
///
/// The sum stops once `n` is past `spec.peak_safety` times the dominant
/// multipole and the geometric tail estimate, with ratio
/// `max(observed, (R/r_a)²)`, is below `spec.rel_tol` of the partial sum.
pub fn green_trace(
    sphere: &SphereSystem,
    r_a: f64,
    u: f64,
    spec: &SeriesSpec,
) -> Result<GreenTraceResult> {
    check_position(sphere, r_a)?;
    spec.validate()?;
    let p = sphere.size_parameters(u)?;
    let radius = sphere.radius();
    let rho = u * r_a;

    if 2.0 * (rho - p.x0) > DECAY_CUTOFF {
        return Ok(GreenTraceResult {
            value: 0.0,
            te_value: 0.0,
            tm_value: 0.0,
            n_used: 0,
            tail_estimate: 0.0,
            converged: true,
        });
    }

    let ratio_floor = (radius / r_a).powi(2);
    let n_peak = dominant_multipole(radius, r_a);
    let n_min = ((spec.peak_safety * n_peak).ceil() as usize).clamp(2, spec.n_max);
    let mut cap = ((30.0 * n_peak) as usize + 16)
        .max(n_min.max(32))
        .min(spec.n_max);

    let mut te_sum = 0.0;
    let mut tm_sum = 0.0;
    let mut prev_term = 0.0f64;
    let mut tail = f64::INFINITY;
    let mut n = 0;
    loop {
        let tables = Tables::new(cap, p.x0, p.x1, rho)?;
        while n < cap {
            n += 1;
            let (te, tm) = tables.brace(&p, n);
            let weight = (2 * n + 1) as f64;
            let te_term = weight * te.to_f64();
            let tm_term = weight * tm.to_f64();
            if !(te_term.is_finite() && tm_term.is_finite()) {
                return Err(Error::NonFinite("Green tensor multipole term"));
            }
            te_sum += te_term;
            tm_sum += tm_term;
            let term = te_term + tm_term;

            tail = if term == 0.0 {
                0.0
            } else if prev_term == 0.0 {
                f64::INFINITY
            } else {
                let r = (term / prev_term).abs().max(ratio_floor);
                if r < 1.0 {
                    term.abs() * r / (1.0 - r)
                } else {
                    f64::INFINITY
                }
            };
            prev_term = term;

            let sum = te_sum + tm_sum;
            if n >= n_min && tail <= spec.rel_tol * sum.abs() {
                return Ok(GreenTraceResult {
                    value: sum,
                    te_value: te_sum,
                    tm_value: tm_sum,
                    n_used: n,
                    tail_estimate: tail,
                    converged: true,
                });
            }
        }
        if cap >= spec.n_max {
            break;
        }
        cap = (2 * cap).min(spec.n_max);
    }

    let sum = te_sum + tm_sum;
    if spec.allow_partial {
        Ok(GreenTraceResult {
            value: sum,
            te_value: te_sum,
            tm_value: tm_sum,
            n_used: n,
            tail_estimate: tail,
            converged: false,
        })
    } else {
        Err(Error::SeriesNotConverged {
            n_used: n,
            tail_estimate: tail,
            partial: sum,
        })
    }
}
