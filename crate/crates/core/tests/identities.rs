//! Wronskian, Legendre sums and the complex-arithmetic reflection oracle.

use proptest::prelude::*;
use vdw_sphere::green::brace_terms;
use vdw_sphere::oracle::{complex_brace, legendre_sum_residuals, wronskian_residual};
use vdw_sphere::{PermittivityModel, SphereSystem};

fn log_grid(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..points).map(move |i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
}

#[test]
fn wronskian_grid() {
    for n in 0..=50 {
        for x in log_grid(1e-2, 50.0, 25) {
            let r = wronskian_residual(n, x).unwrap();
            assert!(r < 1e-10, "n={n} x={x}: {r:e}");
        }
    }
}

#[test]
fn legendre_sums_grid() {
    for n in 0..=20 {
        for theta in [0.1, 0.7, 1.3, 2.9] {
            for (k, r) in legendre_sum_residuals(n, theta)
                .unwrap()
                .into_iter()
                .enumerate()
            {
                let scale = if k == 0 {
                    1.0
                } else {
                    (n * (n + 1)) as f64 / 2.0
                };
                assert!(
                    r.abs() <= 1e-10 * scale.max(1.0),
                    "n={n} θ={theta} sum {k}: {r:e}"
                );
            }
        }
    }
}

fn drude_lorentz() -> PermittivityModel {
    PermittivityModel::new(vec![
        vdw_sphere::Oscillator::new(1.0, 0.0, 0.1).unwrap(),
        vdw_sphere::Oscillator::new(2.0, 1.5, 0.3).unwrap(),
    ])
}

/// Production brace terms against the complex oracle: real parts agree and
/// the oracle's imaginary parts vanish.
fn check_oracle(sphere: &SphereSystem, n: usize, u: f64, r_a: f64) {
    let (te, tm) = brace_terms(sphere, n, u, r_a).unwrap();
    let o = complex_brace(sphere, n, u, r_a).unwrap();
    for (label, prod, oracle) in [("te", te, o.te), ("tm", tm, o.tm)] {
        // bring both to the oracle's scale
        let p = prod.value * (prod.log_scale - o.log_scale).exp();
        let mag = oracle.norm().max(p.abs());
        if mag == 0.0 {
            continue;
        }
        assert!(
            (p - oracle.re).abs() <= 1e-10 * mag,
            "{label} n={n} u={u}: {p:e} vs {:e}",
            oracle.re
        );
        assert!(
            oracle.im.abs() <= 1e-12 * mag,
            "{label} n={n} u={u}: imaginary {:e}",
            oracle.im
        );
    }
}

#[test]
fn complex_oracle_grid() {
    let sphere = SphereSystem::new(1.0, drude_lorentz()).unwrap();
    for n in 1..=50 {
        for u in log_grid(1e-3, 1e2, 11) {
            for r_a in [1.05, 1.5, 4.0] {
                check_oracle(&sphere, n, u, r_a);
            }
        }
    }
}

#[test]
fn complex_oracle_weak_medium() {
    // ε - 1 ~ 1e-8 at large uR: the two interior log-derivatives nearly coincide
    for plasma in [0.1, 1e-3] {
        let material =
            PermittivityModel::new(vec![vdw_sphere::Oscillator::new(plasma, 0.0, 0.0).unwrap()]);
        let sphere = SphereSystem::new(0.1, material).unwrap();
        for n in [1, 2, 4, 20] {
            for u in [10.0, 769.4, 1000.0] {
                check_oracle(&sphere, n, u, 0.101);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wronskian_property(n in 0usize..=50, lx in (1e-2f64).ln()..(50f64).ln()) {
        prop_assert!(wronskian_residual(n, lx.exp()).unwrap() < 1e-10);
    }

    #[test]
    fn legendre_sums_property(n in 0usize..=20, theta in 0.05f64..3.09) {
        let half = (n * (n + 1)) as f64 / 2.0;
        let r = legendre_sum_residuals(n, theta).unwrap();
        prop_assert!(r[0].abs() < 1e-10);
        prop_assert!(r[1].abs() < 1e-10 * half.max(1.0));
        prop_assert!(r[2].abs() < 1e-10 * half.max(1.0));
    }

    #[test]
    fn complex_oracle_property(
        n in 1usize..=50,
        lu in (1e-3f64).ln()..(1e2f64).ln(),
        radius in 0.1f64..3.0,
        gap in 0.01f64..2.0,
        plasma in 0.1f64..5.0,
        resonance in 0.0f64..3.0,
        damping in 0.0f64..1.0,
    ) {
        let material = PermittivityModel::new(vec![
            vdw_sphere::Oscillator::new(plasma, resonance, damping).unwrap(),
        ]);
        let sphere = SphereSystem::new(radius, material).unwrap();
        // the u R range is what matters for the coefficients
        let u = lu.exp() / radius;
        check_oracle(&sphere, n, u, radius * (1.0 + gap));
    }
}
