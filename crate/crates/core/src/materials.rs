//! Dielectric response of the sphere and polarizability of the atom on the
//! imaginary frequency axis.
//!
//! With `ħ = 1` the models read
//!
//! ```text
//! ε(iu) = 1 + Σ_l Ω_l² / (ω_l² + u² + u γ_l)
//! α(iu) = (2/3) Σ_n ω_n |d_0n|² / (ω_n² + u²)
//! ```
//!
//! Both are real on the imaginary axis; the vanishing-damping limit of the
//! polarizability is taken analytically.

use crate::error::{domain, Error, Result};

/// One Drude–Lorentz oscillator. `resonance == 0` is a Drude (free
/// electron) term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillator {
    pub plasma: f64,
    pub resonance: f64,
    pub damping: f64,
}

impl Oscillator {
    pub fn new(plasma: f64, resonance: f64, damping: f64) -> Result<Self> {
        for (name, v) in [
            ("plasma", plasma),
            ("resonance", resonance),
            ("damping", damping),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(domain(format!(
                    "oscillator {name} frequency must be finite and >= 0, got {v}"
                )));
            }
        }
        Ok(Oscillator {
            plasma,
            resonance,
            damping,
        })
    }

    fn denominator(&self, u: f64) -> f64 {
        self.resonance * self.resonance + u * u + u * self.damping
    }
}

/// Drude–Lorentz permittivity: a sum of damped oscillators.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PermittivityModel {
    oscillators: Vec<Oscillator>,
}

impl PermittivityModel {
    pub fn new(oscillators: Vec<Oscillator>) -> Self {
        PermittivityModel { oscillators }
    }

    /// `ε ≡ 1`.
    pub fn vacuum() -> Self {
        Self::default()
    }

    pub fn drude(plasma: f64, damping: f64) -> Result<Self> {
        Ok(Self::new(vec![Oscillator::new(plasma, 0.0, damping)?]))
    }

    pub fn lorentz(plasma: f64, resonance: f64, damping: f64) -> Result<Self> {
        Ok(Self::new(vec![Oscillator::new(
            plasma, resonance, damping,
        )?]))
    }

    pub fn oscillators(&self) -> &[Oscillator] {
        &self.oscillators
    }

    /// True when every oscillator has zero strength.
    pub fn is_vacuum(&self) -> bool {
        self.oscillators.iter().all(|o| o.plasma == 0.0)
    }

    /// True when some oscillator is a Drude term, so the static
    /// permittivity is infinite.
    pub fn is_metal(&self) -> bool {
        self.oscillators
            .iter()
            .any(|o| o.resonance == 0.0 && o.plasma > 0.0)
    }

    /// Plasma frequency of the first oscillator, which fixes the reference
    /// wavelength `λ = 2πc/Ω`.
    pub fn reference_frequency(&self) -> Option<f64> {
        self.oscillators
            .first()
            .map(|o| o.plasma)
            .filter(|&p| p > 0.0)
    }

    /// Copy of the model with every damping constant replaced.
    pub fn with_damping(&self, damping: f64) -> Result<Self> {
        let oscillators = self
            .oscillators
            .iter()
            .map(|o| Oscillator::new(o.plasma, o.resonance, damping))
            .collect::<Result<_>>()?;
        Ok(Self::new(oscillators))
    }

    /// `ε(iu)`. At `u = 0` this is the static permittivity, which does not
    /// exist for Drude terms.
    pub fn epsilon_iu(&self, u: f64) -> Result<f64> {
        Ok(1.0 + self.susceptibility_iu(u)?)
    }

    /// `ε(iu) - 1`, summed directly so it keeps full relative precision when
    /// `ε` is close to 1.
    pub fn susceptibility_iu(&self, u: f64) -> Result<f64> {
        if !(u >= 0.0 && u.is_finite()) {
            return Err(domain(format!(
                "imaginary frequency must be finite and >= 0, got {u}"
            )));
        }
        let mut chi = 0.0;
        for o in self.oscillators.iter().filter(|o| o.plasma > 0.0) {
            let d = o.denominator(u);
            if d == 0.0 {
                return Err(domain("static permittivity of a Drude term is infinite"));
            }
            chi += o.plasma * o.plasma / d;
        }
        Ok(chi)
    }

    /// `ε(0) = 1 + Σ Ω_l²/ω_l²`, or `None` for a metal.
    pub fn static_permittivity(&self) -> Option<f64> {
        if self.is_metal() {
            None
        } else {
            self.epsilon_iu(0.0).ok()
        }
    }

    /// `(ε(iu) - 1)/(ε(iu) + 1)`.
    pub fn surface_response(&self, u: f64) -> Result<f64> {
        let eps = self.epsilon_iu(u)?;
        Ok((eps - 1.0) / (eps + 1.0))
    }

    /// `∂/∂γ_l (ε(iu) - 1)/(ε(iu) + 1)`.
    pub fn surface_response_derivative(&self, index: usize, u: f64) -> Result<f64> {
        let osc = self.oscillators.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.oscillators.len(),
        })?;
        if !(u > 0.0) {
            return Err(domain(format!("damping derivative needs u > 0, got {u}")));
        }
        let eps = self.epsilon_iu(u)?;
        let d = osc.denominator(u);
        Ok(-2.0 * u * osc.plasma * osc.plasma / ((eps + 1.0) * (eps + 1.0) * d * d))
    }
}

/// One atomic transition out of the ground state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub frequency: f64,
    pub dipole_sq: f64,
}

impl Transition {
    pub fn new(frequency: f64, dipole_sq: f64) -> Result<Self> {
        if !(frequency.is_finite() && frequency > 0.0) {
            return Err(domain(format!(
                "transition frequency must be positive, got {frequency}"
            )));
        }
        if !(dipole_sq.is_finite() && dipole_sq >= 0.0) {
            return Err(domain(format!(
                "squared dipole moment must be >= 0, got {dipole_sq}"
            )));
        }
        Ok(Transition {
            frequency,
            dipole_sq,
        })
    }
}

/// Isotropic ground-state polarizability from a list of transitions.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolarizabilityModel {
    transitions: Vec<Transition>,
}

impl PolarizabilityModel {
    pub fn new(transitions: Vec<Transition>) -> Self {
        PolarizabilityModel { transitions }
    }

    pub fn single(frequency: f64, dipole_sq: f64) -> Result<Self> {
        Ok(Self::new(vec![Transition::new(frequency, dipole_sq)?]))
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// `α(iu)`; even in `u`.
    pub fn alpha_iu(&self, u: f64) -> f64 {
        let u2 = u * u;
        let sum: f64 = self
            .transitions
            .iter()
            .map(|t| t.frequency * t.dipole_sq / (t.frequency * t.frequency + u2))
            .sum();
        2.0 / 3.0 * sum
    }

    pub fn static_polarizability(&self) -> f64 {
        self.alpha_iu(0.0)
    }

    /// `Σ_n |d_0n|²`, i.e. `⟨0|d²|0⟩` when the list is complete.
    pub fn dipole_sq_sum(&self) -> f64 {
        self.transitions.iter().map(|t| t.dipole_sq).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.transitions.iter().all(|t| t.dipole_sq == 0.0)
    }

    /// Lowest transition frequency, used as the natural integration scale.
    pub fn min_frequency(&self) -> Option<f64> {
        self.transitions
            .iter()
            .filter(|t| t.dipole_sq > 0.0)
            .map(|t| t.frequency)
            .min_by(f64::total_cmp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn epsilon_examples() {
        let m = PermittivityModel::lorentz(1.0, 1.0, 0.0).unwrap();
        assert_relative_eq!(m.epsilon_iu(1.0).unwrap(), 1.5);
        let drude = PermittivityModel::drude(1.0, 0.1).unwrap();
        assert_relative_eq!(
            drude.epsilon_iu(0.5).unwrap(),
            1.0 + 1.0 / 0.3,
            max_relative = 1e-15
        );
        assert!(drude.epsilon_iu(0.0).is_err());
        assert!(drude.is_metal());
        assert_eq!(drude.static_permittivity(), None);
    }

    #[test]
    fn static_limit_ignores_damping() {
        let a = PermittivityModel::new(vec![
            Oscillator::new(1.0, 2.0, 0.0).unwrap(),
            Oscillator::new(0.5, 0.7, 0.0).unwrap(),
        ]);
        let expected = 1.0 + 1.0 / 4.0 + 0.25 / 0.49;
        for g in [0.0, 0.3, 10.0] {
            let m = a.with_damping(g).unwrap();
            assert_relative_eq!(
                m.static_permittivity().unwrap(),
                expected,
                max_relative = 1e-15
            );
            assert_relative_eq!(m.epsilon_iu(1e-9).unwrap(), expected, max_relative = 1e-8);
        }
    }

    #[test]
    fn vacuum_is_unity() {
        let v = PermittivityModel::vacuum();
        assert_eq!(v.epsilon_iu(0.0).unwrap(), 1.0);
        assert_eq!(v.epsilon_iu(3.0).unwrap(), 1.0);
        assert!(v.is_vacuum());
    }

    #[test]
    fn alpha_examples() {
        let a = PolarizabilityModel::single(1.0, 1.0).unwrap();
        assert_relative_eq!(a.alpha_iu(0.0), 2.0 / 3.0);
        assert_relative_eq!(a.alpha_iu(1.0), 1.0 / 3.0);
        let empty = PolarizabilityModel::default();
        assert_eq!(empty.alpha_iu(0.0), 0.0);
        assert_eq!(empty.alpha_iu(5.0), 0.0);
    }

    #[test]
    fn alpha_tail_decay() {
        let a = PolarizabilityModel::single(0.7, 2.0).unwrap();
        let limit = 2.0 / 3.0 * 0.7 * 2.0;
        let tail = |u: f64| a.alpha_iu(u) * (0.49 + u * u);
        for u in [1.0, 10.0, 1e3] {
            assert!(tail(u) <= limit * (1.0 + 1e-12));
        }
        assert_relative_eq!(tail(1e6), limit, max_relative = 1e-10);
    }

    #[test]
    fn damping_derivative_examples() {
        let m = PermittivityModel::drude(1.0, 0.1).unwrap();
        let eps = 1.0 + 1.0 / 1.1;
        let expected = -2.0 / ((eps + 1.0) * (eps + 1.0) * 1.1 * 1.1);
        assert_relative_eq!(
            m.surface_response_derivative(0, 1.0).unwrap(),
            expected,
            max_relative = 1e-14
        );

        let off = PermittivityModel::new(vec![
            Oscillator::new(1.0, 0.0, 0.1).unwrap(),
            Oscillator::new(0.0, 1.0, 0.1).unwrap(),
        ]);
        assert_eq!(off.surface_response_derivative(1, 1.0).unwrap(), 0.0);
        assert!(matches!(
            off.surface_response_derivative(2, 1.0),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        ));
    }

    #[test]
    fn rejects_negative_parameters() {
        assert!(Oscillator::new(-1.0, 0.0, 0.0).is_err());
        assert!(Transition::new(0.0, 1.0).is_err());
        assert!(Transition::new(1.0, -1.0).is_err());
    }
}
