//! Analytic amplitudes and concurrences.
//!
//! Both atom-cavity pairs evolve independently. A pair started in `|e,0>`
//! has, in the symmetric interaction frame used by [`crate::oracle`],
//!
//! ```text
//! c_e(T) = exp(-kappa T / 4) [cosh(eta T/4) - xi sinh(eta T/4) / eta]
//! c_g(T) = exp(-kappa T / 4) (-4i) sinh(eta T/4) / eta
//! ```
//!
//! with `(xi, eta) = (xi_minus, eta_minus)`. Both brackets are even in `eta`,
//! and `sinh(z)/z` is evaluated by its series near `z = 0`, so the
//! critical-damping point `kappa = 4, delta = 0` (where `eta = 0`) needs no
//! special casing. The two-atom amplitudes are products of pair
//! amplitudes; see `docs/RECONCILIATION.md` for how these relate to the
//! reference expressions in [`printed`].
//!
//! Phases of individual amplitudes are frame dependent; moduli and
//! concurrences are not.

pub mod printed;

use serde::{Deserialize, Serialize};

use crate::model::{Family, InitialState, ModelParams, Normalization, SpectralQuantities};
use crate::{Error, Result, C64};

const I: C64 = C64::new(0.0, 1.0);

/// Time-dependent amplitudes of the two-atom-plus-fields state.
///
/// Psi family, length 4, basis `|eg00>, |ge00>, |gg10>, |gg01>`.
/// Phi family, length 5, basis `|ee00>, |gg11>, |eg01>, |ge10>, |gg00>`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeSet {
    pub family: Family,
    pub t: f64,
    pub x: Vec<C64>,
}

impl AmplitudeSet {
    /// `sum |x_i|^2`; drops below one only through decay.
    pub fn norm_sqr(&self) -> f64 {
        self.x.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Concurrence at one time, with the unclamped expression kept for
/// sudden-death detection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcurrenceSample {
    #[serde(rename = "T")]
    pub t: f64,
    pub value: f64,
    pub raw: f64,
}

impl ConcurrenceSample {
    pub fn from_raw(t: f64, raw: f64) -> Self {
        ConcurrenceSample { t, value: raw.max(0.0), raw }
    }

    /// Concurrence of `rho / trace`; concurrence is homogeneous of degree
    /// one in `rho`.
    pub fn renormalized(self, trace: f64) -> Result<Self> {
        if !(trace > 0.0) {
            return Err(Error::ZeroTrace(trace));
        }
        Ok(Self::from_raw(self.t, self.raw / trace))
    }
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("time T must be finite and >= 0, got {t}")))
    }
}

/// `sinh(z) / z`, entire and even.
pub(crate) fn sinhc(z: C64) -> C64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        1.0 + z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sinh() / z
    }
}

/// Undamped pair factors `(u, s)` with `u = cosh(eta T/4) - xi s` and
/// `s = sinh(eta T/4) / eta`.
pub(crate) fn pair_factors(xi: C64, eta: C64, t: f64) -> (C64, C64) {
    let q = t / 4.0;
    let s = q * sinhc(eta * q);
    ((eta * q).cosh() - xi * s, s)
}

/// Amplitudes `(c_e, c_g)` of one atom-cavity pair started in `|e,0>`.
fn pair(spectral: &SpectralQuantities, t: f64) -> (C64, C64) {
    let (u, s) = pair_factors(spectral.xi_minus, spectral.eta_minus, t);
    let damp = (-spectral.kappa() * t / 4.0).exp();
    (damp * u, damp * (-4.0 * I) * s)
}

pub fn psi_amplitudes(params: &ModelParams, alpha: f64, t: f64) -> Result<AmplitudeSet> {
    psi_amplitudes_from(&params.spectral(), alpha, t)
}

pub fn psi_amplitudes_from(spectral: &SpectralQuantities, alpha: f64, t: f64) -> Result<AmplitudeSet> {
    check_time(t)?;
    let (s, c) = alpha.sin_cos();
    let (ce, cg) = pair(spectral, t);
    Ok(AmplitudeSet { family: Family::Psi, t, x: vec![c * ce, s * ce, c * cg, s * cg] })
}

/// Psi-family concurrence `2 |x1 x2*|`, evaluated in the symmetric form
/// `|sin 2a| exp(-kappa T/2) |u_+ u_-|` that uses both spectral branches.
pub fn psi_concurrence(params: &ModelParams, alpha: f64, t: f64) -> Result<ConcurrenceSample> {
    psi_concurrence_from(&params.spectral(), alpha, t)
}

pub fn psi_concurrence_from(spectral: &SpectralQuantities, alpha: f64, t: f64) -> Result<ConcurrenceSample> {
    check_time(t)?;
    let (u_plus, _) = pair_factors(spectral.xi_plus, spectral.eta_plus, t);
    let (u_minus, _) = pair_factors(spectral.xi_minus, spectral.eta_minus, t);
    let raw = (2.0 * alpha).sin().abs() * (-spectral.kappa() * t / 2.0).exp() * (u_plus * u_minus).norm();
    Ok(ConcurrenceSample::from_raw(t, raw))
}

/// Resonant (`delta = 0`) Psi-family concurrence `f(T) / 4` with
///
/// ```text
/// f(T) = exp(-T (kappa + eta) / 2) {1 + kappa/eta + exp(T eta / 2) (1 - kappa/eta)}^2 |sin 2a|
/// eta  = sqrt(kappa^2 - 16)
/// ```
///
/// The brace is rewritten as `2 + zeta - kappa zeta / eta` with
/// `zeta / eta = (T/2) exp(T eta/4) sinhc(T eta/4)`, which is finite at
/// `kappa = 4`.
pub fn resonant_psi_concurrence(kappa: f64, alpha: f64, t: f64) -> Result<ConcurrenceSample> {
    if !(kappa.is_finite() && kappa >= 0.0) {
        return Err(Error::InvalidArgument(format!("kappa must be finite and >= 0, got {kappa}")));
    }
    check_time(t)?;
    let eta = C64::from(kappa * kappa - 16.0).sqrt();
    let half = eta * t / 2.0;
    let zeta_over_eta = (t / 2.0) * (half / 2.0).exp() * sinhc(half / 2.0);
    let zeta = zeta_over_eta * eta;
    let brace = 2.0 + zeta - kappa * zeta_over_eta;
    let f = (-(kappa + eta) * t / 2.0).exp() * brace * brace * (2.0 * alpha).sin().abs();
    // f is real for real kappa: the imaginary part is round-off
    Ok(ConcurrenceSample::from_raw(t, f.re / 4.0))
}

pub fn phi_amplitudes(params: &ModelParams, alpha: f64, t: f64) -> Result<AmplitudeSet> {
    phi_amplitudes_from(&params.spectral(), alpha, t)
}

pub fn phi_amplitudes_from(spectral: &SpectralQuantities, alpha: f64, t: f64) -> Result<AmplitudeSet> {
    check_time(t)?;
    let (s, c) = alpha.sin_cos();
    let (ce, cg) = pair(spectral, t);
    let mixed = c * ce * cg;
    Ok(AmplitudeSet { family: Family::Phi, t, x: vec![c * ce * ce, c * cg * cg, mixed, mixed, C64::from(s)] })
}

/// Phi-family concurrence of the X state obtained by tracing out the
/// fields: coherence between `|ee>` and `|gg>` against the geometric mean
/// of the `|eg>`, `|ge>` populations, `raw = 2|x1 x5*| - 2|x3 x4|`.
pub fn phi_concurrence(params: &ModelParams, alpha: f64, t: f64) -> Result<ConcurrenceSample> {
    phi_concurrence_from(&params.spectral(), alpha, t)
}

pub fn phi_concurrence_from(spectral: &SpectralQuantities, alpha: f64, t: f64) -> Result<ConcurrenceSample> {
    let a = phi_amplitudes_from(spectral, alpha, t)?;
    let x = &a.x;
    let raw = 2.0 * (x[0] * x[4].conj()).norm() - 2.0 * (x[2] * x[3]).norm();
    Ok(ConcurrenceSample::from_raw(t, raw))
}

/// The as-printed `F(T) + G(T)` expression; see [`printed::phi_concurrence`].
pub fn phi_concurrence_printed(params: &ModelParams, alpha: f64, t: f64) -> Result<ConcurrenceSample> {
    check_time(t)?;
    Ok(ConcurrenceSample::from_raw(t, printed::phi_concurrence(&params.spectral(), alpha, t)))
}

pub fn amplitudes(params: &ModelParams, initial: &InitialState, t: f64) -> Result<AmplitudeSet> {
    amplitudes_from(&params.spectral(), initial, t)
}

pub fn amplitudes_from(spectral: &SpectralQuantities, initial: &InitialState, t: f64) -> Result<AmplitudeSet> {
    match initial.family {
        Family::Psi => psi_amplitudes_from(spectral, initial.alpha, t),
        Family::Phi => phi_amplitudes_from(spectral, initial.alpha, t),
    }
}

/// Family dispatch plus optional renormalization by the reduced-state
/// trace (equal to the amplitude norm).
pub fn concurrence(
    params: &ModelParams,
    initial: &InitialState,
    t: f64,
    norm: Normalization,
) -> Result<ConcurrenceSample> {
    concurrence_from(&params.spectral(), initial, t, norm)
}

pub fn concurrence_from(
    spectral: &SpectralQuantities,
    initial: &InitialState,
    t: f64,
    norm: Normalization,
) -> Result<ConcurrenceSample> {
    let sample = match initial.family {
        Family::Psi => psi_concurrence_from(spectral, initial.alpha, t)?,
        Family::Phi => phi_concurrence_from(spectral, initial.alpha, t)?,
    };
    match norm {
        Normalization::Unnormalized => Ok(sample),
        Normalization::Renormalized => {
            let trace = amplitudes_from(spectral, initial, t)?.norm_sqr();
            sample.renormalized(trace)
        }
    }
}
