//! Closed-form coefficients for the configured model.

use std::fmt::Write as _;

use vdw_sphere::{long_distance_kernel_integral, retarded_limit, ShortDistanceLaw, StaticResponse};

use crate::config::RunConfig;
use crate::sweep::specs;
use crate::units::Boundary;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Asymptotes {
    /// `A` in `U ≈ -A/r_A⁷` (far from the sphere).
    pub retarded: f64,
    /// `K` in `U ≈ -K/Δr³` (close to the surface).
    pub short: f64,
    /// `K` for a perfect reflector.
    pub short_perfect: f64,
    pub kernel_integral: f64,
}

impl Asymptotes {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "retarded_coefficient = {:e}", self.retarded);
        let _ = writeln!(s, "short_distance_coefficient = {:e}", self.short);
        let _ = writeln!(
            s,
            "perfect_reflector_coefficient = {:e}",
            self.short_perfect
        );
        let _ = writeln!(s, "kernel_integral = {:.12}", self.kernel_integral);
        s
    }
}

/// Coefficients in config units: evaluating each law at unit config length
/// and converting the energy gives the coefficient directly.
pub fn asymptotes(cfg: &RunConfig) -> Result<Asymptotes, CliError> {
    cfg.validate()?;
    let b = Boundary::new(cfg);
    let m = b.models(cfg)?;
    let (quad, _) = specs(cfg);
    let compute = |e: vdw_sphere::Error| CliError::Compute(e.to_string());
    let one = b.length(1.0);

    let response = StaticResponse::of(&m.material);
    let alpha = m.atom.static_polarizability();
    let retarded = -b.energy_out(retarded_limit(alpha, response, m.sphere.radius(), one));
    let law = ShortDistanceLaw::new(&m.atom, &m.material, &quad).map_err(compute)?;
    let perfect = ShortDistanceLaw::perfect_reflector(&m.atom);
    Ok(Asymptotes {
        retarded,
        short: -b.energy_out(law.potential(one)),
        short_perfect: -b.energy_out(perfect.potential(one)),
        kernel_integral: long_distance_kernel_integral(cfg.quad_rel_tol.min(1e-10))
            .map_err(compute)?,
    })
}
