//! Adaptive Gauss–Legendre quadrature on `[0, ∞)`.
//!
//! The half line is mapped onto `t ∈ (0, 1)` by `u = s t / (1 - t)`, where
//! the scale `s` should sit where the integrand carries its mass. Each panel
//! is integrated with a 20-point rule and its error estimated from the
//! embedded 10-point rule; panels whose error exceeds their width share of
//! the global target are bisected until the summed estimate drops below
//! `rel_tol · |I|`.
//!
//! New panels of one refinement round are evaluated in parallel, but panels
//! are kept in interval order and summed pairwise, so the result is the same
//! for every thread count.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{domain, Error, Result};

const LOW_ORDER: usize = 10;
const HIGH_ORDER: usize = 20;
const INITIAL_PANELS: usize = 4;
const MIN_PANEL_WIDTH: f64 = 1e-14;

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on `P_n`, started from the Chebyshev-like
    /// guess `cos(π (i - 1/4)/(n + 1/2))`.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1);
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let n = order as f64;
        for i in 0..order.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=order {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let p = if order == 1 { x } else { p1 };
                let pm1 = if order == 1 { 1.0 } else { p0 };
                dp = n * (x * p - pm1) / (x * x - 1.0);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

fn rules() -> &'static (GaussLegendre, GaussLegendre) {
    static RULES: OnceLock<(GaussLegendre, GaussLegendre)> = OnceLock::new();
    RULES.get_or_init(|| {
        (
            GaussLegendre::new(LOW_ORDER),
            GaussLegendre::new(HIGH_ORDER),
        )
    })
}

/// Sum in a fixed binary-tree order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 8 {
        values.iter().sum()
    } else {
        let mid = values.len() / 2;
        pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
    }
}

/// One panel `[a, b] ⊂ (0, 1)` of the mapped variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Panel {
    pub a: f64,
    pub b: f64,
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdaptiveResult {
    pub value: f64,
    pub est_error: f64,
    pub panels: Vec<Panel>,
}

impl AdaptiveResult {
    pub fn intervals(&self) -> Vec<(f64, f64)> {
        self.panels.iter().map(|p| (p.a, p.b)).collect()
    }
}

/// Maps `t` to `u` and returns `(u, du/dt)`.
#[inline]
fn map(t: f64, scale: f64) -> (f64, f64) {
    let w = 1.0 - t;
    (scale * t / w, scale / (w * w))
}

fn panel_nodes(a: f64, b: f64) -> impl Iterator<Item = f64> {
    let (low, high) = rules();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    low.nodes()
        .iter()
        .chain(high.nodes())
        .map(move |&x| mid + half * x)
        .collect::<Vec<_>>()
        .into_iter()
}

fn assemble_panel(a: f64, b: f64, samples: &[f64]) -> Panel {
    let (low, high) = rules();
    let half = 0.5 * (b - a);
    let (ls, hs) = samples.split_at(LOW_ORDER);
    let q_low: f64 = low
        .weights()
        .iter()
        .zip(ls)
        .map(|(w, f)| w * f)
        .sum::<f64>()
        * half;
    let q_high: f64 = high
        .weights()
        .iter()
        .zip(hs)
        .map(|(w, f)| w * f)
        .sum::<f64>()
        * half;
    Panel {
        a,
        b,
        value: q_high,
        error: (q_high - q_low).abs(),
    }
}

fn evaluate_panels<F>(f: &F, scale: f64, intervals: &[(f64, f64)]) -> Result<Vec<Panel>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let points: Vec<f64> = intervals
        .iter()
        .flat_map(|&(a, b)| panel_nodes(a, b))
        .collect();
    let samples = points
        .par_iter()
        .map(|&t| {
            let (u, jac) = map(t, scale);
            let v = f(u)?;
            let s = v * jac;
            if s.is_finite() {
                Ok(s)
            } else {
                Err(Error::NonFinite("quadrature integrand"))
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let per = LOW_ORDER + HIGH_ORDER;
    Ok(intervals
        .iter()
        .zip(samples.chunks(per))
        .map(|(&(a, b), s)| assemble_panel(a, b, s))
        .collect())
}

/// Adaptive integral of `f` over `[0, ∞)`.
pub fn integrate_half_line<F>(
    f: F,
    scale: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<AdaptiveResult>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(domain(format!(
            "quadrature scale must be positive, got {scale}"
        )));
    }
    if !(rel_tol > 0.0) {
        return Err(domain(format!(
            "quadrature rel_tol must be positive, got {rel_tol}"
        )));
    }
    let initial: Vec<(f64, f64)> = (0..INITIAL_PANELS)
        .map(|i| {
            (
                i as f64 / INITIAL_PANELS as f64,
                (i + 1) as f64 / INITIAL_PANELS as f64,
            )
        })
        .collect();
    let mut panels = evaluate_panels(&f, scale, &initial)?;

    loop {
        let values: Vec<f64> = panels.iter().map(|p| p.value).collect();
        let value = pairwise_sum(&values);
        let errors: Vec<f64> = panels.iter().map(|p| p.error).collect();
        let est_error = pairwise_sum(&errors);
        let target = rel_tol * value.abs();
        if est_error <= target {
            return Ok(AdaptiveResult {
                value,
                est_error,
                panels,
            });
        }

        let split: Vec<usize> = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.error > target * (p.b - p.a))
            .map(|(i, _)| i)
            .collect();
        let give_up = |panels: usize| Error::QuadratureNotConverged {
            panels,
            est_error,
            target,
        };
        if panels.len() + split.len() > max_panels {
            return Err(give_up(panels.len()));
        }
        if split
            .iter()
            .any(|&i| panels[i].b - panels[i].a < MIN_PANEL_WIDTH)
        {
            return Err(give_up(panels.len()));
        }

        let halves: Vec<(f64, f64)> = split
            .iter()
            .flat_map(|&i| {
                let p = panels[i];
                let m = 0.5 * (p.a + p.b);
                [(p.a, m), (m, p.b)]
            })
            .collect();
        let fresh = evaluate_panels(&f, scale, &halves)?;

        let mut next = Vec::with_capacity(panels.len() + split.len());
        let mut fresh_iter = fresh.into_iter();
        let mut split_iter = split.iter().peekable();
        for (i, p) in panels.into_iter().enumerate() {
            if split_iter.peek() == Some(&&i) {
                split_iter.next();
                next.push(fresh_iter.next().expect("left half"));
                next.push(fresh_iter.next().expect("right half"));
            } else {
                next.push(p);
            }
        }
        panels = next;
    }
}

/// Integral of `f` over `[0, ∞)` on a fixed set of mapped panels, using the
/// 20-point rule on each.
pub fn integrate_on_panels<F>(f: F, scale: f64, intervals: &[(f64, f64)]) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let panels = evaluate_panels(&f, scale, intervals)?;
    let values: Vec<f64> = panels.iter().map(|p| p.value).collect();
    Ok(pairwise_sum(&values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let g = GaussLegendre::new(HIGH_ORDER);
        assert_relative_eq!(g.weights().iter().sum::<f64>(), 2.0, max_relative = 1e-14);
        // ∫ x^38 over [-1, 1] = 2/39
        let s: f64 = g
            .nodes()
            .iter()
            .zip(g.weights())
            .map(|(x, w)| w * x.powi(38))
            .sum();
        assert_relative_eq!(s, 2.0 / 39.0, max_relative = 1e-13);
        let odd = GaussLegendre::new(5);
        assert!(odd.nodes()[2].abs() < 1e-16);
    }

    #[test]
    fn exponential_moments() {
        for k in 0..6 {
            let r =
                integrate_half_line(|u| Ok(u.powi(k) * (-2.0 * u).exp()), 0.5, 1e-12, 500).unwrap();
            let exact = (1..=k).product::<i32>() as f64 / 2f64.powi(k + 1);
            assert_relative_eq!(r.value, exact, max_relative = 1e-12);
            assert!(r.est_error <= 1e-12 * r.value);
        }
    }

    #[test]
    fn lorentzian_tail() {
        let r = integrate_half_line(|u| Ok(1.0 / (1.0 + u * u)), 1.0, 1e-10, 2000).unwrap();
        assert_relative_eq!(r.value, std::f64::consts::FRAC_PI_2, max_relative = 1e-10);
    }

    #[test]
    fn zero_integrand() {
        let r = integrate_half_line(|_| Ok(0.0), 1.0, 1e-8, 10).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.panels.len(), INITIAL_PANELS);
    }

    #[test]
    fn panel_budget_is_enforced() {
        let r = integrate_half_line(|u| Ok((50.0 * u).sin().abs() * (-u).exp()), 1.0, 1e-14, 16);
        assert!(matches!(r, Err(Error::QuadratureNotConverged { .. })));
    }

    #[test]
    fn fixed_panels_reproduce_adaptive_value() {
        let f = |u: f64| Ok(u * u * (-u).exp());
        let r = integrate_half_line(f, 1.0, 1e-10, 500).unwrap();
        let again = integrate_on_panels(f, 1.0, &r.intervals()).unwrap();
        assert_eq!(again, r.value);
    }

    #[test]
    fn pairwise_matches_naive_on_small_input() {
        let v: Vec<f64> = (0..100).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 4950.0);
    }
}
