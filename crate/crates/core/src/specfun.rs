//! Modified spherical Bessel functions on the positive real axis and
//! associated Legendre functions.
//!
//! Normalization: `i_n(x) = sqrt(π/2x) I_{n+1/2}(x)` and
//! `k_n(x) = sqrt(π/2x) K_{n+1/2}(x)`, so that `i_0(x) = sinh(x)/x` and
//! `k_0(x) = (π/2) e^{-x}/x`. On the imaginary axis the ordinary spherical
//! functions reduce to these: `j_n(ix) = iⁿ i_n(x)` and
//! `h_n⁽¹⁾(ix) = -(2/π) (-i)ⁿ k_n(x)`.
//!
//! # Scaling
//!
//! Every Bessel value is a [`Scaled`] number `value · exp(log_scale)`. The
//! base log scale is `+x` for the i-type family and `-x` for the k-type
//! family, so for moderate orders `value` is exactly `e^{-x} i_n(x)` or
//! `e^{x} k_n(x)`. Whenever the mantissa would leave `[2^-256, 2^256]` it is
//! shifted by an exact power of two and the shift is moved into
//! `log_scale`. Products of several functions therefore combine by adding
//! log scales and never overflow.
//!
//! # Recurrences
//!
//! The i-type ratios `i_{n+1}/i_n` are obtained from a continued fraction at
//! the top order and carried downward (the minimal solution of the
//! three-term recurrence); values are then built upward from the closed form
//! of `i_0`. The k-type family uses the upward recurrence, which is stable.
//! Riccati derivatives `d/dx [x f_n(x)]` follow from the same ratios.
//!
//! # Legendre convention
//!
//! `P_n^m(x) = (1 - x²)^{m/2} dᵐ/dxᵐ P_n(x)` with no Condon–Shortley phase,
//! so `P_1^1(cos θ) = sin θ`. The addition-theorem sums used by the Green
//! tensor trace are quadratic in `P_n^m` and hold verbatim in this
//! convention.

use std::f64::consts::{FRAC_PI_2, LN_2};
use std::ops::Mul;

use crate::error::{domain, Error, Result};

/// Smallest accepted argument of the Bessel routines.
pub const MIN_ARGUMENT: f64 = 1e-100;
/// Largest accepted argument of the Bessel routines.
pub const MAX_ARGUMENT: f64 = 1e12;
/// Largest accepted order.
pub const MAX_ORDER: usize = 1_000_000;

const RENORM_HI: f64 = 1.157_920_892_373_162e77; // 2^256, so a product of two mantissas stays finite
const RENORM_LO: f64 = 8.636_168_555_094_445e-78; // 2^-256
const CF_MAX_ITER: usize = 10_000_000;

/// A real number stored as `value · exp(log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub value: f64,
    pub log_scale: f64,
}

/// Scaled Bessel value; see the module documentation for the scheme.
pub type ScaledBessel = Scaled;

impl Scaled {
    pub const ZERO: Scaled = Scaled {
        value: 0.0,
        log_scale: 0.0,
    };

    pub fn new(value: f64, log_scale: f64) -> Self {
        Scaled { value, log_scale }.renormalized()
    }

    pub fn from_f64(value: f64) -> Self {
        Self::new(value, 0.0)
    }

    /// Reconstructs the plain value. Underflows to zero or overflows to
    /// infinity only if the true value is outside the `f64` range.
    pub fn to_f64(self) -> f64 {
        if self.value == 0.0 {
            return 0.0;
        }
        if self.log_scale.abs() < 700.0 {
            self.value * self.log_scale.exp()
        } else {
            self.value.signum() * (self.value.abs().ln() + self.log_scale).exp()
        }
    }

    /// Natural logarithm of the magnitude.
    pub fn ln_abs(self) -> f64 {
        self.value.abs().ln() + self.log_scale
    }

    pub fn scale(self, factor: f64) -> Self {
        self * Scaled::from_f64(factor)
    }

    // Ratios between neighbouring orders stay within ~1e±110 over the
    // supported argument range, so the product cannot leave the normal range
    // before renormalization.
    fn scaled_by_ratio(self, r: f64) -> Self {
        Scaled {
            value: self.value * r,
            log_scale: self.log_scale,
        }
        .renormalized()
    }

    pub fn recip(self) -> Self {
        Scaled {
            value: 1.0 / self.value,
            log_scale: -self.log_scale,
        }
        .renormalized()
    }

    pub fn is_finite(self) -> bool {
        self.value.is_finite() && self.log_scale.is_finite()
    }

    fn renormalized(self) -> Self {
        let a = self.value.abs();
        if a == 0.0 || !a.is_finite() || (RENORM_LO..=RENORM_HI).contains(&a) {
            return self;
        }
        let e = a.log2().floor() as i32;
        Scaled {
            value: self.value * 2f64.powi(-e),
            log_scale: self.log_scale + f64::from(e) * LN_2,
        }
    }
}

impl Mul for Scaled {
    type Output = Scaled;

    fn mul(self, rhs: Scaled) -> Scaled {
        Scaled {
            value: self.value * rhs.value,
            log_scale: self.log_scale + rhs.log_scale,
        }
        .renormalized()
    }
}

/// Which family a Riccati derivative refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    /// `i_n`, regular at the origin.
    I,
    /// `k_n`, exponentially decaying.
    K,
}

fn check_argument(x: f64) -> Result<()> {
    if !(x > 0.0) {
        return Err(domain(format!("Bessel argument must be positive, got {x}")));
    }
    if !(MIN_ARGUMENT..=MAX_ARGUMENT).contains(&x) {
        return Err(domain(format!(
            "Bessel argument {x} outside supported range [{MIN_ARGUMENT:e}, {MAX_ARGUMENT:e}]"
        )));
    }
    Ok(())
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        return Err(domain(format!("order {n} exceeds {MAX_ORDER}")));
    }
    Ok(())
}

/// `i_m(x) / i_{m-1}(x)` by modified Lentz evaluation of
/// `1 / (b_m + 1 / (b_{m+1} + ...))` with `b_j = (2j + 1)/x`.
fn i_ratio_continued_fraction(m: usize, x: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let b = |j: usize| (2 * j + 1) as f64 / x;
    let mut f = b(m);
    if f == 0.0 {
        f = TINY;
    }
    let mut c = f;
    let mut d = 0.0;
    for j in 1..CF_MAX_ITER {
        let bj = b(m + j);
        d += bj;
        if d == 0.0 {
            d = TINY;
        }
        d = 1.0 / d;
        c = bj + 1.0 / c;
        if c == 0.0 {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < f64::EPSILON {
            return Ok(1.0 / f);
        }
    }
    Err(Error::ContinuedFraction {
        x,
        iterations: CF_MAX_ITER,
    })
}

/// `i_0` through `i_{n_max}` at one argument, with the ratios needed for
/// Riccati derivatives.
#[derive(Debug, Clone)]
pub struct ModSphITable {
    x: f64,
    values: Vec<Scaled>,
    // ratios[k] = i_{k+1}(x) / i_k(x), k = 0..=n_max
    ratios: Vec<f64>,
}

impl ModSphITable {
    pub fn new(n_max: usize, x: f64) -> Result<Self> {
        check_argument(x)?;
        check_order(n_max)?;
        let mut ratios = vec![0.0; n_max + 1];
        ratios[n_max] = i_ratio_continued_fraction(n_max + 1, x)?;
        for k in (0..n_max).rev() {
            ratios[k] = 1.0 / ((2 * k + 3) as f64 / x + ratios[k + 1]);
        }

        // e^{-x} sinh(x)/x without cancellation at small x
        let i0 = -(-2.0 * x).exp_m1() / (2.0 * x);
        let mut values = Vec::with_capacity(n_max + 1);
        let mut current = Scaled::new(i0, x);
        values.push(current);
        for &r in &ratios[..n_max] {
            current = current.scaled_by_ratio(r);
            values.push(current);
        }
        if values.iter().any(|v| !v.is_finite()) || ratios.iter().any(|r| !r.is_finite()) {
            return Err(Error::NonFinite("modified spherical Bessel i_n"));
        }
        Ok(ModSphITable { x, values, ratios })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, n: usize) -> Scaled {
        self.values[n]
    }

    /// `i_{n+1}(x) / i_n(x)`.
    pub fn ratio(&self, n: usize) -> f64 {
        self.ratios[n]
    }

    /// `[x i_n(x)]' / i_n(x)`, always positive.
    pub fn log_derivative(&self, n: usize) -> f64 {
        (n + 1) as f64 + self.log_derivative_excess(n)
    }

    /// `[x i_n(x)]' / i_n(x) - (n + 1) = x i_{n+1}(x)/i_n(x)`, which is
    /// `O(x²)` for small `x` and is returned without cancellation.
    pub fn log_derivative_excess(&self, n: usize) -> f64 {
        self.x * self.ratios[n]
    }

    pub fn riccati_derivative(&self, n: usize) -> Scaled {
        self.values[n].scale(self.log_derivative(n))
    }
}

/// `k_0` through `k_{n_max}` at one argument.
#[derive(Debug, Clone)]
pub struct ModSphKTable {
    x: f64,
    values: Vec<Scaled>,
    // ratios[k] = k_k(x) / k_{k-1}(x); ratios[0] = 1 since k_{-1} = k_0
    ratios: Vec<f64>,
}

impl ModSphKTable {
    pub fn new(n_max: usize, x: f64) -> Result<Self> {
        check_argument(x)?;
        check_order(n_max)?;
        let mut ratios = Vec::with_capacity(n_max + 1);
        ratios.push(1.0);
        if n_max >= 1 {
            ratios.push(1.0 + 1.0 / x);
        }
        for k in 2..=n_max {
            let s = 1.0 / ratios[k - 1] + (2 * k - 1) as f64 / x;
            ratios.push(s);
        }

        let mut values = Vec::with_capacity(n_max + 1);
        let mut current = Scaled::new(FRAC_PI_2 / x, -x);
        values.push(current);
        for &s in &ratios[1..] {
            current = current.scaled_by_ratio(s);
            values.push(current);
        }
        if values.iter().any(|v| !v.is_finite()) || ratios.iter().any(|r| !r.is_finite()) {
            return Err(Error::NonFinite("modified spherical Bessel k_n"));
        }
        Ok(ModSphKTable { x, values, ratios })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, n: usize) -> Scaled {
        self.values[n]
    }

    /// `[x k_n(x)]' / k_n(x)`, always negative.
    pub fn log_derivative(&self, n: usize) -> f64 {
        -(n as f64) - self.x / self.ratios[n]
    }

    pub fn riccati_derivative(&self, n: usize) -> Scaled {
        self.values[n].scale(self.log_derivative(n))
    }
}

/// Scaled `i_n(x)`; the returned value is `e^{-x} i_n(x)` with
/// `log_scale = x` unless the mantissa had to be renormalized.
pub fn mod_sph_i(n: usize, x: f64) -> Result<ScaledBessel> {
    Ok(ModSphITable::new(n, x)?.value(n))
}

/// Scaled `k_n(x)`; the returned value is `e^{x} k_n(x)` with
/// `log_scale = -x` unless the mantissa had to be renormalized.
pub fn mod_sph_k(n: usize, x: f64) -> Result<ScaledBessel> {
    Ok(ModSphKTable::new(n, x)?.value(n))
}

/// `d/dx [x f_n(x)]` in the same scaling as `f_n`.
pub fn riccati_derivative(kind: BesselKind, n: usize, x: f64) -> Result<ScaledBessel> {
    match kind {
        BesselKind::I => Ok(ModSphITable::new(n, x)?.riccati_derivative(n)),
        BesselKind::K => Ok(ModSphKTable::new(n, x)?.riccati_derivative(n)),
    }
}

/// Associated Legendre function `P_n^m(x)` (no Condon–Shortley phase).
pub fn legendre_assoc(n: usize, m: usize, x: f64) -> Result<f64> {
    if m > n {
        return Err(domain(format!(
            "Legendre order m = {m} exceeds degree n = {n}"
        )));
    }
    if !(x.abs() <= 1.0) {
        return Err(domain(format!("Legendre argument {x} outside [-1, 1]")));
    }
    let s = ((1.0 - x) * (1.0 + x)).sqrt();
    let mut p_mm = 1.0;
    for i in 1..=m {
        p_mm *= (2 * i - 1) as f64 * s;
    }
    if n == m {
        return Ok(p_mm);
    }
    let mut p_prev = p_mm;
    let mut p_curr = x * (2 * m + 1) as f64 * p_mm;
    for l in (m + 2)..=n {
        let next = ((2 * l - 1) as f64 * x * p_curr - (l + m - 1) as f64 * p_prev) / (l - m) as f64;
        p_prev = p_curr;
        p_curr = next;
    }
    Ok(p_curr)
}

/// `d/dθ P_n^m(cos θ)`, built from neighbouring orders so it stays finite
/// at the poles.
pub fn legendre_assoc_dtheta(n: usize, m: usize, theta: f64) -> Result<f64> {
    if m > n {
        return Err(domain(format!(
            "Legendre order m = {m} exceeds degree n = {n}"
        )));
    }
    if !theta.is_finite() {
        return Err(domain("Legendre angle must be finite"));
    }
    let x = theta.cos().clamp(-1.0, 1.0);
    let upper = if m < n {
        legendre_assoc(n, m + 1, x)?
    } else {
        0.0
    };
    if m == 0 {
        return Ok(-upper);
    }
    let lower = legendre_assoc(n, m - 1, x)?;
    Ok(0.5 * ((n + m) as f64 * (n - m + 1) as f64 * lower - upper))
}
