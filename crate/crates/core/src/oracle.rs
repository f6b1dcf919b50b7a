//! Reference computations that avoid the production code paths they check.
//!
//! * [`complex_brace`] evaluates the TE and TM reflection coefficients and
//!   radial factors in complex arithmetic at `z = iu·r`. Regular functions
//!   come from the power series `j_n(z) = zⁿ/(2n+1)!! · S_n(z)`, outgoing
//!   Hankel functions from the terminating sum
//!   `h_n(z) = (-i)^{n+1} e^{iz}/z Σ_k (n+k)!/(k!(n-k)!) (i/2z)^k`. The
//!   production path uses continued fractions and recurrences on the real
//!   axis instead.
//! * [`legendre_sum_residuals`] checks the addition-theorem sums that
//!   collapse the vector wave functions into the traced Green tensor.
//! * [`wronskian_residual`] checks `i_n k_n' - i_n' k_n = -π/(2x²)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::mie::SphereSystem;
use crate::specfun::{
    legendre_assoc, legendre_assoc_dtheta, mod_sph_i, mod_sph_k, riccati_derivative, BesselKind,
};

/// Complex TE and TM brace terms of one order, as mantissas times
/// `exp(log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleBrace {
    pub te: Complex64,
    pub tm: Complex64,
    pub log_scale: f64,
}

fn i_pow(n: i64) -> Complex64 {
    match n.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Regular function as `(mantissa, log_scale, g)` with
/// `j_n(z) = mantissa · exp(log_scale)` and `g = [z j_n]'/j_n - (n+1)`.
fn regular(n: usize, z: Complex64) -> (Complex64, f64, Complex64) {
    // S = Σ t_k with t_k = (-z²/2)^k / (k! Π_{j≤k} (2n+2j+1)); z S' = Σ 2k t_k
    let w = -z * z / 2.0;
    let mut term = Complex64::new(1.0, 0.0);
    let mut s = term;
    let mut zs = Complex64::new(0.0, 0.0);
    let mut k = 0usize;
    loop {
        k += 1;
        term = term * w / (k as f64 * (2 * n + 2 * k + 1) as f64);
        s += term;
        zs += term * (2 * k) as f64;
        if k > 8
            && term.norm() <= 1e-18 * s.norm()
            && term.norm() * (2 * k) as f64 <= 1e-18 * zs.norm().max(1e-300)
        {
            break;
        }
    }
    let ln_dfact: f64 = (1..=2 * n + 1).step_by(2).map(|j| (j as f64).ln()).sum();
    let scale = n as f64 * z.norm().ln() - ln_dfact;
    let phase = (z / z.norm()).powi(n as i32);
    (phase * s, scale, zs / s)
}

/// `g(z₁) - g(z₀)` for the excess returned by [`regular`]. Close to
/// `z₁ = z₀` the series values agree to many digits, so the difference is
/// integrated along the segment from `g' = -(z² + (2n+1)g + g²)/z` with
/// complex RK4.
fn regular_excess_step(
    n: usize,
    z0: Complex64,
    h: Complex64,
    g0: Complex64,
    g1: Complex64,
) -> Complex64 {
    if h.norm() > 1e-3 * z0.norm() {
        return g1 - g0;
    }
    let m = (2 * n + 1) as f64;
    // the unknown is δ = g - g₀
    let f = |z: Complex64, d: Complex64| {
        let g = g0 + d;
        -(z * z + g * m + g * g) / z
    };
    let steps = 8;
    let dz = h / steps as f64;
    let mut d = Complex64::new(0.0, 0.0);
    for k in 0..steps {
        let z = z0 + dz * k as f64;
        let k1 = f(z, d);
        let k2 = f(z + dz / 2.0, d + dz / 2.0 * k1);
        let k3 = f(z + dz / 2.0, d + dz / 2.0 * k2);
        let k4 = f(z + dz, d + dz * k3);
        d += dz / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    d
}

/// Outgoing Hankel function as `(mantissa, log_scale)`.
fn hankel(n: usize, z: Complex64) -> (Complex64, f64) {
    let w = Complex64::new(0.0, 1.0) / (2.0 * z);
    let ln_w = w.norm().ln();
    let unit = w / w.norm();
    let ln_terms: Vec<f64> = (0..=n)
        .map(|k| ln_factorial(n + k) - ln_factorial(k) - ln_factorial(n - k) + k as f64 * ln_w)
        .collect();
    let top = ln_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sum: Complex64 = ln_terms
        .iter()
        .enumerate()
        .map(|(k, l)| unit.powi(k as i32) * (l - top).exp())
        .sum();
    // e^{iz} = e^{i Re z} e^{-Im z}; the decaying part goes into the scale
    let iz = Complex64::new(0.0, 1.0) * z;
    let front = i_pow(-(n as i64) - 1) * Complex64::new(0.0, iz.im).exp() / z;
    (front * sum, top + iz.re)
}

/// `[z h_n]'/h_n` from `[z h_n]' = z h_{n-1} - n h_n`.
fn hankel_log_derivative(n: usize, z: Complex64) -> Complex64 {
    let (hn, ls_n) = hankel(n, z);
    let (hm, ls_m) = hankel(n - 1, z);
    z * hm * (ls_m - ls_n).exp() / hn - n as f64
}

/// Complex-arithmetic TE and TM brace terms `B^M h²` and
/// `B^N [n(n+1)(h/z)² + ((zh)'/z)²]` at `z = i u r_a`.
pub fn complex_brace(sphere: &SphereSystem, n: usize, u: f64, r_a: f64) -> Result<OracleBrace> {
    if n == 0 {
        return Err(domain("multipole order must be >= 1"));
    }
    if !(r_a > sphere.radius()) {
        return Err(domain("atom must be outside the sphere"));
    }
    if !(u > 0.0) {
        return Err(domain("imaginary frequency must be positive"));
    }
    let chi = sphere.material().susceptibility_iu(u)?;
    let eps = 1.0 + chi;
    let i = Complex64::new(0.0, 1.0);
    let z0 = i * (u * sphere.radius());
    let z1 = z0 * eps.sqrt();
    let za = i * (u * r_a);
    let nf = n as f64;

    let (j0, ls_j0, g0) = regular(n, z0);
    let (_, _, g1) = regular(n, z1);
    let (h0, ls_h0) = hankel(n, z0);
    let dh0 = hankel_log_derivative(n, z0);
    let (ha, ls_ha) = hankel(n, za);
    let dha = hankel_log_derivative(n, za);

    // with D = [z f]'/f the j(z₁) factor cancels from both coefficients:
    // B^M = -(j₀/h₀) (D₁ - D₀)/(D₁ - D_h₀), B^N = -(j₀/h₀) (εD₀ - D₁)/(εD_h₀ - D₁)
    let d1 = g1 + (nf + 1.0);
    let dg = regular_excess_step(n, z0, z0 * (chi / (1.0 + eps.sqrt())), g0, g1);
    let ratio = j0 / h0;
    let b_m = -ratio * dg / (d1 - dh0);
    let b_n = -ratio * (chi * (nf + 1.0 + g0) - dg) / (eps * dh0 - d1);

    let h_over_z = ha / za;
    let dh_over_z = dha * ha / za;
    Ok(OracleBrace {
        te: b_m * ha * ha,
        tm: b_n * (nf * (nf + 1.0) * h_over_z * h_over_z + dh_over_z * dh_over_z),
        log_scale: ls_j0 - ls_h0 + 2.0 * ls_ha,
    })
}

/// Residuals of the three Legendre sums at degree `n` and polar angle
/// `theta`, each of the form `Σ_m C_nm (…) - expected` with
/// `C_nm = (2 - δ_m0)(n-m)!/(n+m)!`:
///
/// 1. `Σ C_nm P_n^m(cos θ)² = 1`
/// 2. `Σ C_nm m²/sin²θ P_n^m(cos θ)² = n(n+1)/2`
/// 3. `Σ C_nm [d P_n^m(cos θ)/dθ]² = n(n+1)/2`
pub fn legendre_sum_residuals(n: usize, theta: f64) -> Result<[f64; 3]> {
    let x = theta.cos();
    let s2 = theta.sin().powi(2);
    let mut sums = [0.0; 3];
    // (n-m)!/(n+m)! built incrementally
    let mut ratio = 1.0;
    for m in 0..=n {
        if m > 0 {
            ratio /= ((n + m) * (n - m + 1)) as f64;
        }
        let c = if m == 0 { ratio } else { 2.0 * ratio };
        let p = legendre_assoc(n, m, x)?;
        let dp = legendre_assoc_dtheta(n, m, theta)?;
        sums[0] += c * p * p;
        sums[1] += c * (m * m) as f64 / s2 * p * p;
        sums[2] += c * dp * dp;
    }
    let half = (n * (n + 1)) as f64 / 2.0;
    Ok([sums[0] - 1.0, sums[1] - half, sums[2] - half])
}

/// Relative residual of `i_n k_n' - i_n' k_n = -π/(2x²)`. The exponential
/// scale factors of `i_n` and `k_n` are combined before reconstruction.
pub fn wronskian_residual(n: usize, x: f64) -> Result<f64> {
    let i = mod_sph_i(n, x)?;
    let k = mod_sph_k(n, x)?;
    let di = riccati_derivative(BesselKind::I, n, x)?;
    let dk = riccati_derivative(BesselKind::K, n, x)?;
    // f' = ([x f]' - f)/x, so W = (i [x k]' - [x i]' k) / x
    let scale = (i.log_scale + k.log_scale).exp();
    let w = (i.value * (dk.value * (dk.log_scale - k.log_scale).exp())
        - di.value * (di.log_scale - i.log_scale).exp() * k.value)
        * scale
        / x;
    let expected = -PI / (2.0 * x * x);
    Ok((w - expected).abs() / expected.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_sums_low_degree() {
        for n in 0..=5 {
            for r in legendre_sum_residuals(n, 0.7).unwrap() {
                assert!(r.abs() < 1e-13);
            }
        }
    }

    #[test]
    fn wronskian_low_order() {
        assert!(wronskian_residual(0, 1.0).unwrap() < 1e-14);
        assert!(wronskian_residual(3, 0.2).unwrap() < 1e-13);
    }
}
