//! Reference closed forms transcribed symbol for symbol, for auditing.
//!
//! These use the auxiliary quantities
//!
//! ```text
//! zeta_pm = exp(T eta_pm / 2) - 1
//! M_pm    = 1 + exp(T eta_pm / 2) - zeta_pm xi_pm / eta_pm
//! ```
//!
//! and divide by `eta`, so they are undefined at `eta = 0`. Nothing in
//! the simulator depends on them; `docs/RECONCILIATION.md` records which
//! ones agree with the reconciled forms in the parent module and which
//! carry typographical errors.

use nalgebra::Matrix4;

use super::AmplitudeSet;
use crate::model::{Family, ModelParams, SpectralQuantities};
use crate::C64;

const I: C64 = C64::new(0.0, 1.0);

fn zeta(eta: C64, t: f64) -> C64 {
    (t * eta / 2.0).exp() - 1.0
}

fn big_m(xi: C64, eta: C64, t: f64) -> C64 {
    1.0 + (t * eta / 2.0).exp() - zeta(eta, t) * xi / eta
}

/// Psi-family amplitudes over `|eg00>, |ge00>, |gg10>, |gg01>`. The
/// exponent pairs `xi_plus` with `eta_minus`; the `xi_plus` part is a pure
/// phase times `exp(-kappa T / 4)`, so moduli are unaffected.
pub fn psi_amplitudes(spectral: &SpectralQuantities, alpha: f64, t: f64) -> AmplitudeSet {
    let (s, c) = alpha.sin_cos();
    let (xi_p, xi_m, eta_m) = (spectral.xi_plus, spectral.xi_minus, spectral.eta_minus);
    let env = (-t * (xi_p + eta_m) / 4.0).exp();
    let m = big_m(xi_m, eta_m, t);
    let photon = -2.0 * I * zeta(eta_m, t) / eta_m * env;
    AmplitudeSet { family: Family::Psi, t, x: vec![0.5 * m * c * env, 0.5 * m * s * env, c * photon, s * photon] }
}

/// `(1/4) exp(-T (xi_+ + xi_- + eta_+ + eta_-) / 4) M_+ M_- sin 2a`.
pub fn psi_concurrence(spectral: &SpectralQuantities, alpha: f64, t: f64) -> C64 {
    let sq = spectral;
    let env = (-t * (sq.xi_plus + sq.xi_minus + sq.eta_plus + sq.eta_minus) / 4.0).exp();
    0.25 * env * big_m(sq.xi_plus, sq.eta_plus, t) * big_m(sq.xi_minus, sq.eta_minus, t) * (2.0 * alpha).sin()
}

/// Resonant `f(T)`; the concurrence is `f / 4`.
pub fn resonant_f(kappa: f64, alpha: f64, t: f64) -> C64 {
    let eta = C64::from(kappa * kappa - 16.0).sqrt();
    let brace = 1.0 + kappa / eta + (t * eta / 2.0).exp() * (1.0 - kappa / eta);
    (-t * (kappa + eta) / 2.0).exp() * brace * brace * (2.0 * alpha).sin()
}

fn phi_envelope(params: &ModelParams, eta_m: C64, t: f64) -> C64 {
    let kappa = params.kappa();
    (-t * (kappa + 2.0 * I * params.nu() / params.g() + eta_m) / 2.0).exp()
}

/// Phi-family amplitudes over `|ee00>, |gg11>, |eg01>, |ge10>, |gg00>`,
/// with the `x1` bracket exactly as printed: its last term reads
/// `(1 + (1 + zeta)^2) zeta^2`.
pub fn phi_amplitudes(params: &ModelParams, spectral: &SpectralQuantities, alpha: f64, t: f64) -> AmplitudeSet {
    phi_amplitudes_impl(params, spectral, alpha, t, false)
}

/// As [`phi_amplitudes`] with the `x1` bracket's last term read as
/// `(1 + (1 + zeta)^2) xi^2`.
pub fn phi_amplitudes_corrected(
    params: &ModelParams,
    spectral: &SpectralQuantities,
    alpha: f64,
    t: f64,
) -> AmplitudeSet {
    phi_amplitudes_impl(params, spectral, alpha, t, true)
}

fn phi_amplitudes_impl(
    params: &ModelParams,
    spectral: &SpectralQuantities,
    alpha: f64,
    t: f64,
    corrected: bool,
) -> AmplitudeSet {
    let (s, c) = alpha.sin_cos();
    let (xi, eta) = (spectral.xi_minus, spectral.eta_minus);
    let z = zeta(eta, t);
    let env = phi_envelope(params, eta, t);
    let last = if corrected { xi * xi } else { z * z };
    let bracket = -8.0 * (2.0 + z) * (2.0 + z) - z * (2.0 + z) * eta * xi + (1.0 + (1.0 + z) * (1.0 + z)) * last;
    let x1 = c * env * bracket / (2.0 * eta * eta);
    let x2 = -4.0 * env * (z / eta) * (z / eta) * c;
    let x3 = -I / (eta * eta) * c * env * (-z * z * xi + ((t * eta).exp() - 1.0) * eta);
    let x5 = (2.0 * I * t * params.omega() / params.g()).exp() * s;
    AmplitudeSet { family: Family::Phi, t, x: vec![x1, x2, x3, x3, x5] }
}

fn delta_pm(sign: f64, xi: C64, eta: C64, t: f64) -> C64 {
    let q = t * eta / 4.0;
    -sign * q.cosh() * eta + sign * q.sinh() * xi
}

fn lambda_pm(xi: C64, eta: C64, t: f64) -> C64 {
    let h = t * eta / 2.0;
    8.0 + h.sinh() * eta * xi - h.cosh() * (xi * xi - 8.0)
}

/// `F(T) = 32 exp(-kappa T) cos^2 a sinh(T eta_+/4) sinh(T eta_-/4) D_+ D_- / (eta_+ eta_-)^2`.
pub fn phi_f(spectral: &SpectralQuantities, alpha: f64, t: f64) -> C64 {
    let sq = spectral;
    let kappa = sq.kappa();
    let d_plus = delta_pm(1.0, sq.xi_plus, sq.eta_plus, t);
    let d_minus = delta_pm(-1.0, sq.xi_minus, sq.eta_minus, t);
    let ee = sq.eta_plus * sq.eta_minus;
    32.0 * (-kappa * t).exp()
        * alpha.cos().powi(2)
        * (t * sq.eta_plus / 4.0).sinh()
        * (t * sq.eta_minus / 4.0).sinh()
        * d_plus
        * d_minus
        / (ee * ee)
}

/// `G(T) = 2 sqrt(L_+ L_- sin^2 a cos^2 a / (eta_+ eta_-)^2) exp(-kappa T / 2)`.
pub fn phi_g(spectral: &SpectralQuantities, alpha: f64, t: f64) -> C64 {
    let sq = spectral;
    let ee = sq.eta_plus * sq.eta_minus;
    let (s, c) = alpha.sin_cos();
    let radicand =
        lambda_pm(sq.xi_plus, sq.eta_plus, t) * lambda_pm(sq.xi_minus, sq.eta_minus, t) * s * s * c * c / (ee * ee);
    2.0 * radicand.sqrt() * (-sq.kappa() * t / 2.0).exp()
}

/// `F(T) + G(T)`, real part (the imaginary part vanishes up to round-off
/// for real `kappa`, `delta`).
pub fn phi_concurrence(spectral: &SpectralQuantities, alpha: f64, t: f64) -> f64 {
    (phi_f(spectral, alpha, t) + phi_g(spectral, alpha, t)).re
}

/// Psi-family reduced matrix over `{|ee>, |eg>, |ge>, |gg>}` in the printed
/// layout (which coincides with the partial trace).
pub fn psi_reduced_matrix(x: &[C64]) -> Matrix4<C64> {
    let z = C64::new(0.0, 0.0);
    Matrix4::new(
        z,
        z,
        z,
        z,
        z,
        C64::from(x[0].norm_sqr()),
        x[0] * x[1].conj(),
        z,
        z,
        x[1] * x[0].conj(),
        C64::from(x[1].norm_sqr()),
        z,
        z,
        z,
        z,
        C64::from(x[2].norm_sqr() + x[3].norm_sqr()),
    )
}

/// Phi-family reduced matrix in the printed layout: coherence `x1 x5*`
/// between `|eg>` and `|ge>`, `|x3|^2` on `|ee>` and `|x4|^2` on `|gg>`.
/// Tracing out the fields instead puts the coherence between `|ee>` and
/// `|gg>`.
pub fn phi_reduced_matrix(x: &[C64]) -> Matrix4<C64> {
    let z = C64::new(0.0, 0.0);
    Matrix4::new(
        C64::from(x[2].norm_sqr()),
        z,
        z,
        z,
        z,
        C64::from(x[0].norm_sqr()),
        x[0] * x[4].conj(),
        z,
        z,
        x[4] * x[0].conj(),
        C64::from(x[1].norm_sqr() + x[4].norm_sqr()),
        z,
        z,
        z,
        z,
        C64::from(x[3].norm_sqr()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

    fn grid() -> Vec<ModelParams> {
        let mut v = Vec::new();
        for k in [0.0, 0.5, 1.0] {
            for d in [0.0, 1.0, -3.0, 5.0] {
                v.push(ModelParams::new(1.0, 0.7, 0.7 + d, k).unwrap());
            }
        }
        v
    }

    #[test]
    fn printed_psi_amplitudes_agree_in_modulus() {
        for p in grid() {
            let sq = p.spectral();
            for i in 1..40 {
                let t = 0.31 * i as f64;
                let a = psi_amplitudes(&sq, FRAC_PI_3, t);
                let b = closed_form::psi_amplitudes(&p, FRAC_PI_3, t).unwrap();
                for (x, y) in a.x.iter().zip(&b.x) {
                    assert_abs_diff_eq!(x.norm(), y.norm(), epsilon = 1e-12);
                }
                let c = psi_concurrence(&sq, FRAC_PI_3, t);
                assert_abs_diff_eq!(c.im, 0.0, epsilon = 1e-12);
                assert_abs_diff_eq!(c.re, closed_form::psi_concurrence(&p, FRAC_PI_3, t).unwrap().raw, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn printed_resonant_form_agrees() {
        for k in [0.0, 0.5, 1.0, 3.0, 6.0] {
            for i in 0..30 {
                let t = 0.29 * i as f64;
                let f = resonant_f(k, FRAC_PI_6, t);
                let r = closed_form::resonant_psi_concurrence(k, FRAC_PI_6, t).unwrap();
                assert_abs_diff_eq!(f.re / 4.0, r.raw, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn printed_phi_x1_carries_a_typo() {
        let p = ModelParams::scaled(0.5, 0.0).unwrap();
        let sq = p.spectral();
        // at T = 0 the verbatim bracket gives -16 / eta^2 instead of 1
        let a = phi_amplitudes(&p, &sq, FRAC_PI_4, 0.0);
        assert!((a.x[0].norm() - FRAC_PI_4.cos()).abs() > 1e-3);
        let b = phi_amplitudes_corrected(&p, &sq, FRAC_PI_4, 0.0);
        assert_abs_diff_eq!(b.x[0].norm(), FRAC_PI_4.cos(), epsilon = 1e-14);
        // lossless resonant point hides it
        let p0 = ModelParams::scaled(0.0, 0.0).unwrap();
        let a0 = phi_amplitudes(&p0, &p0.spectral(), FRAC_PI_3, 0.0);
        assert_abs_diff_eq!(a0.x[0].norm(), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn corrected_phi_amplitudes_agree_in_modulus() {
        for p in grid() {
            let sq = p.spectral();
            for i in 1..40 {
                let t = 0.31 * i as f64;
                let a = phi_amplitudes_corrected(&p, &sq, FRAC_PI_6, t);
                let b = closed_form::phi_amplitudes(&p, FRAC_PI_6, t).unwrap();
                for (x, y) in a.x.iter().zip(&b.x) {
                    assert_abs_diff_eq!(x.norm(), y.norm(), epsilon = 1e-11);
                }
            }
        }
    }

    #[test]
    fn printed_f_plus_g_agrees() {
        for p in grid() {
            let sq = p.spectral();
            for alpha in [0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_3] {
                for i in 0..40 {
                    let t = 0.31 * i as f64;
                    let fg = phi_concurrence(&sq, alpha, t);
                    let c = closed_form::phi_concurrence(&p, alpha, t).unwrap();
                    assert_abs_diff_eq!(fg, c.raw, epsilon = 1e-11);
                }
            }
        }
    }

    #[test]
    fn printed_phi_layout_differs_from_partial_trace() {
        let p = ModelParams::scaled(0.0, 0.0).unwrap();
        let a = closed_form::phi_amplitudes(&p, FRAC_PI_6, 1.0).unwrap();
        let m = phi_reduced_matrix(&a.x);
        assert!(m[(1, 2)].norm() > 0.1);
        assert_eq!(m[(0, 3)].norm(), 0.0);
    }
}
