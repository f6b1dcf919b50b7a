//! Ground-state van der Waals (Casimir–Polder) potential of an atom near a
//! dispersing and absorbing sphere.
//!
//! Everything is evaluated on the imaginary frequency axis `ω = iu`, where
//! the permittivity, the atomic polarizability and the scattering Green
//! tensor are real. Internal units are natural units with `ħ = c = ε₀ = 1`;
//! the frequency unit is free (usually the plasma frequency of the first
//! oscillator) and the length unit is `c` divided by it.
//!
//! Module map:
//!
//! * [`specfun`]: scaled modified spherical Bessel functions and associated
//!   Legendre functions.
//! * [`materials`]: Drude–Lorentz permittivity and atomic polarizability.
//! * [`mie`]: sphere reflection coefficients in real arithmetic.
//! * [`green`]: the traced scattering Green tensor with adaptive truncation.
//! * [`quadrature`]: adaptive Gauss–Legendre panels on the half line.
//! * [`potential`]: the potential, the force and the asymptotic laws.
//! * [`oracle`]: independent reference implementations used by the self-test.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod green;
pub mod materials;
pub mod mie;
pub mod oracle;
pub mod potential;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
pub use green::{green_trace, radial_factors, GreenTraceResult, RadialFactors, SeriesSpec};
pub use materials::{Oscillator, PermittivityModel, PolarizabilityModel, Transition};
pub use mie::{large_n_tm_asymptote, mie_coeffs, mie_tm_small_argument, MieCoeff, SphereSystem};
pub use potential::{
    absorption_monotonicity, energy_normalization, force_normalization, long_distance_integral,
    long_distance_kernel_integral, long_distance_sample, retarded_limit, richardson_derivative,
    short_distance_potential, sphere_static_polarizability, two_body_retarded, vdw_force,
    vdw_potential, Diagnostics, ForceEstimate, ForceModel, PotentialSample, QuadratureSpec,
    ShortDistanceLaw, StaticResponse,
};
pub use specfun::{
    legendre_assoc, legendre_assoc_dtheta, mod_sph_i, mod_sph_k, riccati_derivative, BesselKind,
    Scaled, ScaledBessel,
};
