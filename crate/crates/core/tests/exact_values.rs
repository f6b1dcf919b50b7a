//! Bessel and Legendre values against exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use vdw_sphere::{legendre_assoc, mod_sph_i, mod_sph_k, riccati_derivative, BesselKind};

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn factorial(n: u32) -> BigRational {
    (1..=n as i64).fold(BigRational::one(), |acc, k| acc * int(k))
}

fn double_factorial(n: u32) -> BigRational {
    (1..=n as i64)
        .rev()
        .step_by(2)
        .fold(BigRational::one(), |acc, k| acc * int(k))
}

/// `i_n(x) = xⁿ Σ_k (x²/2)^k / (k! (2n+2k+1)!!)`, truncated far past
/// double precision.
fn i_series(n: u32, x: i64, terms: u32) -> f64 {
    let x = int(x);
    let half_x2 = &x * &x / int(2);
    let mut sum = BigRational::zero();
    let mut power = BigRational::one();
    for k in 0..terms {
        sum += &power / (factorial(k) * double_factorial(2 * n + 2 * k + 1));
        power *= &half_x2;
    }
    let xn = (0..n).fold(BigRational::one(), |acc, _| acc * &x);
    (sum * xn).to_f64().unwrap()
}

/// `e^{x} k_n(x) · x / (π/2) = Σ_{k≤n} (n+k)! / (k! (n-k)!) (2x)^{-k}`.
fn k_polynomial(n: u32, x: i64) -> f64 {
    let two_x = int(2 * x);
    let mut sum = BigRational::zero();
    let mut inv = BigRational::one();
    for k in 0..=n {
        sum += factorial(n + k) / (factorial(k) * factorial(n - k)) * &inv;
        inv /= &two_x;
    }
    sum.to_f64().unwrap()
}

#[test]
fn i25_at_3_matches_power_series() {
    let exact = i_series(25, 3, 60);
    let got = mod_sph_i(25, 3.0).unwrap().to_f64();
    assert!((got / exact - 1.0).abs() < 1e-13, "{got:e} vs {exact:e}");
}

#[test]
fn low_orders_match_power_series() {
    for n in 0..=10 {
        for x in [1, 2, 7] {
            let exact = i_series(n, x, 80);
            let got = mod_sph_i(n as usize, x as f64).unwrap().to_f64();
            assert!(
                (got / exact - 1.0).abs() < 1e-13,
                "n={n} x={x}: {got:e} vs {exact:e}"
            );
        }
    }
}

#[test]
fn k25_at_3_matches_finite_sum() {
    let exact = std::f64::consts::FRAC_PI_2 * (-3.0f64).exp() / 3.0 * k_polynomial(25, 3);
    let got = mod_sph_k(25, 3.0).unwrap().to_f64();
    assert!((got / exact - 1.0).abs() < 1e-13, "{got:e} vs {exact:e}");
}

#[test]
fn k_low_orders_match_finite_sum() {
    for n in 0..=12 {
        for x in [1, 4, 30] {
            let xf = x as f64;
            let exact = std::f64::consts::FRAC_PI_2 * (-xf).exp() / xf * k_polynomial(n, x);
            let got = mod_sph_k(n as usize, xf).unwrap().to_f64();
            assert!((got / exact - 1.0).abs() < 1e-13, "n={n} x={x}");
        }
    }
}

/// Coefficients of `P_n` from Rodrigues' formula, lowest power first.
fn legendre_poly(n: usize) -> Vec<BigRational> {
    // (x² - 1)ⁿ
    let mut poly = vec![BigRational::zero(); 2 * n + 1];
    let mut binom = BigRational::one();
    for k in 0..=n {
        let sign = if (n - k).is_multiple_of(2) {
            int(1)
        } else {
            int(-1)
        };
        poly[2 * k] = &binom * sign;
        binom = binom * int((n - k) as i64) / int(k as i64 + 1);
    }
    let scale = BigRational::one()
        / (factorial(n as u32) * (0..n).fold(BigRational::one(), |a, _| a * int(2)));
    let mut d = poly;
    for _ in 0..n {
        d = derivative(&d);
    }
    d.into_iter().map(|c| c * &scale).collect()
}

fn derivative(p: &[BigRational]) -> Vec<BigRational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * int(k as i64))
        .collect()
}

fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

#[test]
fn p10_7_at_0_3_matches_exact_derivative() {
    let mut p = legendre_poly(10);
    for _ in 0..7 {
        p = derivative(&p);
    }
    let x = int(3) / int(10);
    let dm = eval(&p, &x).to_f64().unwrap();
    let exact = (1.0f64 - 0.09).powf(3.5) * dm;
    let got = legendre_assoc(10, 7, 0.3).unwrap();
    assert!((got / exact - 1.0).abs() < 1e-13, "{got} vs {exact}");
}

#[test]
fn legendre_grid_matches_exact_derivatives() {
    for n in 0..=8 {
        let base = legendre_poly(n);
        for m in 0..=n {
            let mut p = base.clone();
            for _ in 0..m {
                p = derivative(&p);
            }
            for (num, den) in [(-9, 10), (1, 7), (1, 2)] {
                let x = int(num) / int(den);
                let xf = num as f64 / den as f64;
                let exact = (1.0 - xf * xf).powf(m as f64 / 2.0) * eval(&p, &x).to_f64().unwrap();
                let got = legendre_assoc(n, m, xf).unwrap();
                assert!(
                    (got - exact).abs() <= 1e-12 * (1.0 + exact.abs()),
                    "n={n} m={m} x={xf}"
                );
            }
        }
    }
}

#[test]
fn riccati_derivative_matches_finite_difference() {
    let (n, x) = (5, 2.0);
    let h = 1e-4;
    let xi = |t: f64| t * mod_sph_i(n, t).unwrap().to_f64();
    let xk = |t: f64| t * mod_sph_k(n, t).unwrap().to_f64();
    // fourth-order central difference
    let fd = |f: &dyn Fn(f64) -> f64| {
        (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
    };
    let di = riccati_derivative(BesselKind::I, n, x).unwrap().to_f64();
    let dk = riccati_derivative(BesselKind::K, n, x).unwrap().to_f64();
    assert!((di / fd(&xi) - 1.0).abs() < 1e-8);
    assert!((dk / fd(&xk) - 1.0).abs() < 1e-8);
}
