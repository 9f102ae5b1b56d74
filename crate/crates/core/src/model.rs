//! Physical parameters, derived spectral constants and initial states.
//!
//! Frequencies and rates share the unit of the coupling `g`; time is the
//! dimensionless `T = g t`. The detuning is `delta = nu - omega` and the
//! scaled decay rate is `kappa = gamma / g`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

/// Coupling `g`, atomic frequency `omega`, cavity frequency `nu` and
/// upper-level decay rate `gamma`, all in the same frequency unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    g: f64,
    omega: f64,
    nu: f64,
    gamma: f64,
}

impl ModelParams {
    pub fn new(g: f64, omega: f64, nu: f64, gamma: f64) -> Result<Self> {
        if !(g.is_finite() && g > 0.0) {
            return Err(Error::InvalidParams(format!("coupling g must be finite and > 0, got {g}")));
        }
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::InvalidParams(format!("decay rate gamma must be finite and >= 0, got {gamma}")));
        }
        if !(omega.is_finite() && nu.is_finite() && (nu - omega).is_finite()) {
            return Err(Error::InvalidParams(format!("frequencies must be finite, got omega={omega}, nu={nu}")));
        }
        Ok(ModelParams { g, omega, nu, gamma })
    }

    /// Parameters in units of `g` (so `g = 1`), with `gamma = kappa`,
    /// `omega = 0` and `nu = delta`. The absolute frequency only enters
    /// convention-dependent phases.
    pub fn scaled(kappa: f64, delta: f64) -> Result<Self> {
        Self::new(1.0, 0.0, delta, kappa)
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Detuning `nu - omega`.
    pub fn delta(&self) -> f64 {
        self.nu - self.omega
    }

    /// `gamma / g`.
    pub fn kappa(&self) -> f64 {
        self.gamma / self.g
    }

    /// `delta / g`.
    pub fn delta_over_g(&self) -> f64 {
        self.delta() / self.g
    }

    /// Same parameters with `gamma = kappa * g`.
    pub fn with_kappa(&self, kappa: f64) -> Result<Self> {
        Self::new(self.g, self.omega, self.nu, kappa * self.g)
    }

    /// Same parameters with the cavity retuned so that `delta = d * g`.
    pub fn with_delta_over_g(&self, d: f64) -> Result<Self> {
        Self::new(self.g, self.omega, self.omega + d * self.g, self.gamma)
    }

    pub fn spectral(&self) -> SpectralQuantities {
        SpectralQuantities::derive(self)
    }
}

/// The complex constants `xi_pm = kappa +- 2 i delta / g` and
/// `eta_pm = sqrt(xi_pm^2 - 16)`.
///
/// `eta_pm` uses the principal square root (branch cut along the negative
/// real axis of `xi^2 - 16`). Every physical quantity built from these is
/// even in each `eta`, so the branch never matters; see
/// [`SpectralQuantities::with_flipped_eta`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralQuantities {
    pub xi_plus: C64,
    pub xi_minus: C64,
    pub eta_plus: C64,
    pub eta_minus: C64,
}

impl SpectralQuantities {
    pub fn derive(params: &ModelParams) -> Self {
        let (xi_plus, xi_minus) = xi_pair(params);
        SpectralQuantities {
            xi_plus,
            xi_minus,
            eta_plus: (xi_plus * xi_plus - 16.0).sqrt(),
            eta_minus: (xi_minus * xi_minus - 16.0).sqrt(),
        }
    }

    /// `eta_pm = sqrt(xi_pm - 16)`, i.e. the radicand without the square on
    /// `xi`. Only agrees with [`SpectralQuantities::derive`] when `xi` is 0
    /// or 1; kept for auditing the as-printed expressions.
    pub fn derive_as_printed(params: &ModelParams) -> Self {
        let (xi_plus, xi_minus) = xi_pair(params);
        SpectralQuantities { xi_plus, xi_minus, eta_plus: (xi_plus - 16.0).sqrt(), eta_minus: (xi_minus - 16.0).sqrt() }
    }

    /// Copy with the sign of `eta_plus` and/or `eta_minus` reversed.
    pub fn with_flipped_eta(&self, flip_plus: bool, flip_minus: bool) -> Self {
        SpectralQuantities {
            eta_plus: if flip_plus { -self.eta_plus } else { self.eta_plus },
            eta_minus: if flip_minus { -self.eta_minus } else { self.eta_minus },
            ..*self
        }
    }

    /// `kappa`, recovered as the real part of `xi_plus`.
    pub fn kappa(&self) -> f64 {
        self.xi_plus.re
    }
}

fn xi_pair(params: &ModelParams) -> (C64, C64) {
    let kappa = params.kappa();
    let shift = 2.0 * params.delta_over_g();
    // `0.0 - shift` rather than `-shift`: at resonance a negative zero
    // imaginary part would put `xi^2 - 16` under the branch cut and flip the
    // principal root to the lower half plane.
    (C64::new(kappa, shift), C64::new(kappa, 0.0 - shift))
}

/// Which pair of Bell states the initial atomic superposition is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `cos a |eg> + sin a |ge>`, one excitation in total.
    Psi,
    /// `cos a |ee> + sin a |gg>`, zero or two excitations.
    Phi,
}

impl Family {
    /// Dimension of the closed dynamical sector the family evolves in.
    pub fn dimension(self) -> usize {
        match self {
            Family::Psi => 4,
            Family::Phi => 5,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "psi" => Ok(Family::Psi),
            "phi" => Ok(Family::Phi),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Psi => "psi",
            Family::Phi => "phi",
        })
    }
}

/// Initial two-atom pure state, both cavities in vacuum.
///
/// Any finite `alpha` is accepted; the physically distinct range is
/// `[0, pi/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialState {
    pub family: Family,
    pub alpha: f64,
}

impl InitialState {
    pub fn new(family: Family, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::InvalidArgument(format!("alpha must be finite, got {alpha}")));
        }
        Ok(InitialState { family, alpha })
    }

    pub fn psi(alpha: f64) -> Result<Self> {
        Self::new(Family::Psi, alpha)
    }

    pub fn phi(alpha: f64) -> Result<Self> {
        Self::new(Family::Phi, alpha)
    }

    /// Atomic amplitudes over `{|ee>, |eg>, |ge>, |gg>}`.
    pub fn atomic_amplitudes(&self) -> [C64; 4] {
        let (s, c) = self.alpha.sin_cos();
        let (c, s) = (C64::from(c), C64::from(s));
        let z = C64::new(0.0, 0.0);
        match self.family {
            Family::Psi => [z, c, s, z],
            Family::Phi => [c, z, z, s],
        }
    }

    /// Concurrence of the initial state, `|sin 2a|`.
    pub fn initial_concurrence(&self) -> f64 {
        (2.0 * self.alpha).sin().abs()
    }
}

/// Whether the reduced two-atom state is divided by its trace before the
/// concurrence is taken. Decay leaks norm out of the two-level subspace,
/// so the two choices differ whenever `gamma > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    #[default]
    Unnormalized,
    Renormalized,
}

/// A concurrence together with the unclamped expression it came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Concurrence {
    /// The quantity inside `max{., 0}`; negative values witness separability.
    pub raw: f64,
}

impl Concurrence {
    pub fn value(&self) -> f64 {
        self.raw.max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ModelParams::new(0.0, 0.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(-1.0, 0.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(1.0, 0.0, 0.0, -0.1).is_err());
        assert!(ModelParams::new(1.0, f64::NAN, 0.0, 0.0).is_err());
        assert!(ModelParams::new(1.0, 0.0, f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn derived_quantities() {
        let p = ModelParams::new(2.0, 3.0, 5.0, 1.0).unwrap();
        assert_eq!(p.delta(), 2.0);
        assert_eq!(p.kappa(), 0.5);
        assert_eq!(p.delta_over_g(), 1.0);
    }

    #[test]
    fn resonant_lossless_spectrum() {
        let s = ModelParams::scaled(0.0, 0.0).unwrap().spectral();
        assert!(close(s.xi_plus, C64::new(0.0, 0.0), 1e-15));
        assert!(close(s.eta_plus, C64::new(0.0, 4.0), 1e-15));
        assert!(close(s.eta_minus, C64::new(0.0, 4.0), 1e-15));
    }

    #[test]
    fn resonant_lossy_spectrum() {
        let s = ModelParams::scaled(1.0, 0.0).unwrap().spectral();
        assert!(close(s.xi_plus, C64::new(1.0, 0.0), 1e-15));
        assert!(close(s.eta_plus, C64::new(0.0, 15f64.sqrt()), 1e-14));
        assert!(close(s.eta_minus, s.eta_plus, 1e-15));
    }

    #[test]
    fn detuned_spectrum_satisfies_defining_relation() {
        let s = ModelParams::scaled(0.5, 2.0).unwrap().spectral();
        assert!(close(s.xi_plus, C64::new(0.5, 4.0), 1e-15));
        assert!(close(s.xi_minus, s.xi_plus.conj(), 1e-15));
        for (xi, eta) in [(s.xi_plus, s.eta_plus), (s.xi_minus, s.eta_minus)] {
            assert!(close(eta * eta - xi * xi, C64::new(-16.0, 0.0), 1e-12));
        }
    }

    #[test]
    fn printed_radicand_differs_off_the_special_points() {
        let p = ModelParams::scaled(1.0, 0.0).unwrap();
        assert!(close(p.spectral().eta_plus, SpectralQuantities::derive_as_printed(&p).eta_plus, 1e-15));
        let p = ModelParams::scaled(0.5, 0.0).unwrap();
        assert!(!close(p.spectral().eta_plus, SpectralQuantities::derive_as_printed(&p).eta_plus, 1e-3));
    }

    #[test]
    fn family_parsing() {
        assert_eq!("PSI".parse::<Family>().unwrap(), Family::Psi);
        assert_eq!("phi".parse::<Family>().unwrap(), Family::Phi);
        assert!(matches!("chi".parse::<Family>(), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn initial_states_are_normalized() {
        for family in [Family::Psi, Family::Phi] {
            for k in 0..50 {
                let alpha = -3.0 + 0.13 * k as f64;
                let s = InitialState::new(family, alpha).unwrap();
                let n: f64 = s.atomic_amplitudes().iter().map(|a| a.norm_sqr()).sum();
                assert!((n - 1.0).abs() < 1e-15);
            }
        }
        assert!((InitialState::phi(FRAC_PI_4).unwrap().initial_concurrence() - 1.0).abs() < 1e-15);
        assert!((InitialState::psi(FRAC_PI_6).unwrap().initial_concurrence() - 0.75f64.sqrt()).abs() < 1e-15);
        assert!(InitialState::psi(f64::NAN).is_err());
    }
}
