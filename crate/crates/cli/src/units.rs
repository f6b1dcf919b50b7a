//! Conversion between config units and the internal `ħ = c = ε₀ = 1` units.
//!
//! Internally the frequency unit is `ω_u` and the length unit `c/ω_u`. In
//! reduced mode `ω_u` is whatever unit the config frequencies are written
//! in and lengths are given in `2πc/ω_u`. In SI mode `ω_u` is the first
//! plasma frequency (or the first transition frequency for a vacuum sphere).

use std::f64::consts::PI;

use vdw_sphere::{Oscillator, PermittivityModel, PolarizabilityModel, SphereSystem, Transition};

use crate::config::{ConfigError, RunConfig, Units};

pub const HBAR: f64 = 1.054_571_817e-34;
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boundary {
    pub units: Units,
    /// `ω_u` in rad/s (SI) or 1 (reduced).
    pub omega_unit: f64,
    length_to_internal: f64,
    frequency_to_internal: f64,
    dipole_sq_to_internal: f64,
    energy_from_internal: f64,
    force_from_internal: f64,
}

impl Boundary {
    pub fn new(cfg: &RunConfig) -> Self {
        match cfg.units {
            Units::Reduced => Boundary {
                units: Units::Reduced,
                omega_unit: 1.0,
                length_to_internal: 2.0 * PI,
                frequency_to_internal: 1.0,
                dipole_sq_to_internal: 1.0,
                energy_from_internal: 1.0,
                force_from_internal: 1.0,
            },
            Units::Si => {
                let w = cfg
                    .oscillators
                    .iter()
                    .map(|o| o.plasma)
                    .find(|p| *p > 0.0)
                    .or_else(|| cfg.transitions.first().map(|t| t.frequency))
                    .unwrap_or(1.0);
                Boundary {
                    units: Units::Si,
                    omega_unit: w,
                    length_to_internal: w / SPEED_OF_LIGHT,
                    frequency_to_internal: 1.0 / w,
                    dipole_sq_to_internal: w * w / (HBAR * EPSILON_0 * SPEED_OF_LIGHT.powi(3)),
                    energy_from_internal: HBAR * w,
                    force_from_internal: HBAR * w * w / SPEED_OF_LIGHT,
                }
            }
        }
    }

    pub fn length(&self, config_value: f64) -> f64 {
        config_value * self.length_to_internal
    }

    pub fn length_out(&self, internal: f64) -> f64 {
        internal / self.length_to_internal
    }

    pub fn energy_out(&self, internal: f64) -> f64 {
        internal * self.energy_from_internal
    }

    pub fn force_out(&self, internal: f64) -> f64 {
        internal * self.force_from_internal
    }

    /// Builds the internal models.
    pub fn models(&self, cfg: &RunConfig) -> Result<Models, ConfigError> {
        let f = self.frequency_to_internal;
        let oscillators = cfg
            .oscillators
            .iter()
            .enumerate()
            .map(|(i, o)| {
                Oscillator::new(o.plasma * f, o.resonance * f, o.damping * f)
                    .map_err(|e| ConfigError::new(format!("oscillator[{i}]"), e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let transitions = cfg
            .transitions
            .iter()
            .enumerate()
            .map(|(i, t)| {
                Transition::new(t.frequency * f, t.dipole_sq * self.dipole_sq_to_internal)
                    .map_err(|e| ConfigError::new(format!("transition[{i}]"), e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let material = PermittivityModel::new(oscillators);
        let sphere = SphereSystem::new(self.length(cfg.radius), material.clone())
            .map_err(|e| ConfigError::new("radius", e.to_string()))?;
        Ok(Models {
            material,
            atom: PolarizabilityModel::new(transitions),
            sphere,
        })
    }
}

#[derive(Debug, Clone)]
pub struct Models {
    pub material: PermittivityModel,
    pub atom: PolarizabilityModel,
    pub sphere: SphereSystem,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn si_round_trip_of_lengths() {
        let cfg = RunConfig {
            units: Units::Si,
            oscillators: vec![crate::config::OscillatorSpec {
                plasma: 1.4e16,
                resonance: 0.0,
                damping: 1e14,
            }],
            ..Default::default()
        };
        let b = Boundary::new(&cfg);
        let l = 3.2e-8;
        assert!((b.length_out(b.length(l)) / l - 1.0).abs() < 1e-15);
        // c/ω_u is the internal length unit
        assert!((b.length(SPEED_OF_LIGHT / 1.4e16) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn si_static_polarizability() {
        // α(0)/ε₀ in m³ = (2/3ħε₀) d²/ω, and internally α(0) = α_SI/(ε₀ ℓ³)
        let (w, d2) = (2.0e16, 1.0e-58);
        let cfg = RunConfig {
            units: Units::Si,
            oscillators: vec![],
            transitions: vec![crate::config::TransitionSpec {
                frequency: w,
                dipole_sq: d2,
            }],
            ..Default::default()
        };
        let b = Boundary::new(&cfg);
        let m = b.models(&cfg).unwrap();
        let ell = SPEED_OF_LIGHT / w;
        let expected = 2.0 * d2 / (3.0 * HBAR * EPSILON_0 * w) / ell.powi(3);
        assert!((m.atom.static_polarizability() / expected - 1.0).abs() < 1e-12);
    }
}
