//! Sphere reflection coefficients on the imaginary frequency axis.
//!
//! At `ω = iu` the size parameters `z₀ = k₀R` and `z₁ = kR` are purely
//! imaginary, `z₀ = i x₀` and `z₁ = i x₁` with `x₀ = uR/c` and
//! `x₁ = sqrt(ε(iu)) x₀`. Substituting `j_n(ix) = iⁿ i_n(x)` and
//! `h_n⁽¹⁾(ix) = -(2/π)(-i)ⁿ k_n(x)` into the TE and TM reflection
//! coefficients gives `B^M_n = (-1)ⁿ te` and `B^N_n = (-1)ⁿ tm` with the real
//! working coefficients
//!
//! ```text
//! te = (π/2) i_n(x₀)/k_n(x₀) · [D_i(x₁) - D_i(x₀)] / [D_i(x₁) - D_k(x₀)]
//! tm = (π/2) i_n(x₀)/k_n(x₀) · [ε D_i(x₀) - D_i(x₁)] / [ε D_k(x₀) - D_i(x₁)]
//! ```
//!
//! where `D_f(x) = [x f_n(x)]' / f_n(x)`. The phase `(-1)ⁿ` cancels against
//! the one carried by the squared Hankel factors, so the products that enter
//! the Green tensor trace are real. `D_i > 0` and `D_k < 0`, so neither
//! denominator can vanish.

use std::f64::consts::FRAC_PI_2;

use crate::error::{domain, Error, Result};
use crate::materials::PermittivityModel;
use crate::specfun::{ModSphITable, ModSphKTable, Scaled};

/// A sphere of radius `R` in vacuum, centred at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereSystem {
    radius: f64,
    material: PermittivityModel,
}

impl SphereSystem {
    pub fn new(radius: f64, material: PermittivityModel) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(domain(format!(
                "sphere radius must be positive, got {radius}"
            )));
        }
        Ok(SphereSystem { radius, material })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn material(&self) -> &PermittivityModel {
        &self.material
    }

    pub(crate) fn size_parameters(&self, u: f64) -> Result<SizeParameters> {
        if !(u > 0.0 && u.is_finite()) {
            return Err(domain(format!(
                "imaginary frequency must be positive, got {u}"
            )));
        }
        let chi = self.material.susceptibility_iu(u)?;
        let eps = 1.0 + chi;
        assert!(
            eps > 0.0 && eps.is_finite(),
            "ε(iu) must be real positive, got {eps}"
        );
        let x0 = u * self.radius;
        Ok(SizeParameters {
            eps,
            chi,
            x0,
            x1: eps.sqrt() * x0,
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SizeParameters {
    pub eps: f64,
    /// `ε - 1`
    pub chi: f64,
    pub x0: f64,
    pub x1: f64,
}

/// Real working reflection coefficients of order `n` at frequency `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MieCoeff {
    pub n: usize,
    pub u: f64,
    pub te: Scaled,
    pub tm: Scaled,
}

/// Largest `x₁/x₀ - 1` for which [`excess_difference`] integrates instead
/// of subtracting.
const NEAR_UNITY: f64 = 1e-3;

/// `g(x₁) - g(x₀)` for the excess `g = x i_{n+1}/i_n`.
///
/// When `ε` is close to 1 the two values agree to many digits, so the
/// difference is obtained by integrating `g' = (x² - (2n+1)g - g²)/x` from
/// `x₀` with four RK4 steps.
#[inline]
pub(crate) fn excess_difference(p: &SizeParameters, n: usize, g_outer: f64, g_inner: f64) -> f64 {
    // x₁ - x₀ without cancellation
    let h = p.x0 * p.chi / (1.0 + p.eps.sqrt());
    if h > NEAR_UNITY * p.x0 {
        return g_inner - g_outer;
    }
    let m = (2 * n + 1) as f64;
    // integrate δ = g - g(x₀) so the small increments keep their digits
    let f = |x: f64, d: f64| {
        let g = g_outer + d;
        (x * x - m * g - g * g) / x
    };
    let step = h / 4.0;
    let mut d = 0.0;
    for k in 0..4 {
        let x = p.x0 + k as f64 * step;
        let k1 = f(x, d);
        let k2 = f(x + step / 2.0, d + step / 2.0 * k1);
        let k3 = f(x + step / 2.0, d + step / 2.0 * k2);
        let k4 = f(x + step, d + step * k3);
        d += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    d
}

/// The two bracketed ratios of the TE and TM coefficients.
///
/// `gi_*` are the excesses `D_i - (n+1)` at the outer and inner size
/// parameters. Both numerators are formed from them so the common `n+1`
/// cancels exactly; at small `uR` the TE numerator is `O(x₀²)` and would
/// otherwise lose most of its digits. For `ε` near 1 the difference of the
/// excesses is integrated rather than subtracted.
#[inline]
pub(crate) fn coefficient_brackets(
    p: &SizeParameters,
    n: usize,
    gi_outer: f64,
    gi_inner: f64,
    dk_outer: f64,
) -> (f64, f64) {
    let n1 = (n + 1) as f64;
    let dg = excess_difference(p, n, gi_outer, gi_inner);
    let te_den = n1 + gi_inner - dk_outer;
    let tm_den = p.eps * dk_outer - n1 - gi_inner;
    debug_assert!(te_den > 0.0 && tm_den < 0.0);
    (dg / te_den, (p.chi * (n1 + gi_outer) - dg) / tm_den)
}

/// TE and TM coefficients `te`, `tm` (see the module docs).
pub fn mie_coeffs(sphere: &SphereSystem, n: usize, u: f64) -> Result<MieCoeff> {
    if n == 0 {
        return Err(domain("multipole order must be >= 1"));
    }
    let p = sphere.size_parameters(u)?;
    let outer_i = ModSphITable::new(n, p.x0)?;
    let inner_i = ModSphITable::new(n, p.x1)?;
    let outer_k = ModSphKTable::new(n, p.x0)?;

    let (te_bracket, tm_bracket) = coefficient_brackets(
        &p,
        n,
        outer_i.log_derivative_excess(n),
        inner_i.log_derivative_excess(n),
        outer_k.log_derivative(n),
    );
    let base = (outer_i.value(n) * outer_k.value(n).recip()).scale(FRAC_PI_2);
    let coeff = MieCoeff {
        n,
        u,
        te: base.scale(te_bracket),
        tm: base.scale(tm_bracket),
    };
    if !(coeff.te.is_finite() && coeff.tm.is_finite()) {
        return Err(Error::NonFinite("Mie coefficients"));
    }
    Ok(coeff)
}

fn ln_double_factorial(k: usize) -> f64 {
    (1..=k).rev().step_by(2).map(|j| (j as f64).ln()).sum()
}

/// Leading small-argument form of `tm`,
/// `-(n+1)(ε-1)/(εn+n+1) · x₀^{2n+1} / [(2n+1)!! (2n-1)!!]`.
///
/// Accurate for `uR/c` below about `0.1`; the caller decides when to use it.
pub fn mie_tm_small_argument(sphere: &SphereSystem, n: usize, u: f64) -> Result<f64> {
    if n == 0 {
        return Err(domain("multipole order must be >= 1"));
    }
    let p = sphere.size_parameters(u)?;
    let contrast = p.chi;
    if contrast == 0.0 {
        return Ok(0.0);
    }
    let nf = n as f64;
    let ln_mag = (nf + 1.0).ln() + contrast.abs().ln() - (p.eps * nf + nf + 1.0).ln()
        + (2.0 * nf + 1.0) * p.x0.ln()
        - ln_double_factorial(2 * n + 1)
        - ln_double_factorial(2 * n - 1);
    Ok(-contrast.signum() * ln_mag.exp())
}

/// Large-order form of the combined TM contribution `(2n+1)·{…}` to the
/// Green tensor trace at distance `r_a`:
/// `2/ρ³ · (ε-1)/(ε+1) · n(n+1) · (R/r_a)^{2n+1}` with `ρ = u r_a / c`.
///
/// Valid for `n ≫ (uR/c)²/4`. Used for tail bounds and cross-checks only.
pub fn large_n_tm_asymptote(sphere: &SphereSystem, n: usize, u: f64, r_a: f64) -> Result<f64> {
    if !(r_a > sphere.radius()) {
        return Err(domain(format!(
            "atom position {r_a} must lie outside the sphere"
        )));
    }
    let p = sphere.size_parameters(u)?;
    let rho = u * r_a;
    let nf = n as f64;
    let response = (p.eps - 1.0) / (p.eps + 1.0);
    let ln_geo = (2.0 * nf + 1.0) * (sphere.radius() / r_a).ln();
    Ok(2.0 * response * nf * (nf + 1.0) * (ln_geo - 3.0 * rho.ln()).exp())
}
