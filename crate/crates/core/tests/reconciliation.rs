//! The as-printed reference expressions in `closed_form::printed`, measured
//! against the reconciled closed forms.

use jcdamp::closed_form::{self, printed};
use jcdamp::model::SpectralQuantities;
use jcdamp::oracle::{wootters_concurrence, ReducedDensityMatrix};
use jcdamp::{InitialState, ModelParams, Normalization};

const CASES: [(f64, f64); 5] = [(0.0, 0.0), (0.5, 0.0), (1.0, 0.0), (0.5, 3.0), (2.0, 1.0)];
const ALPHA: f64 = 0.6;

fn times() -> impl Iterator<Item = f64> {
    (0..=60).map(|i| i as f64 * 0.1)
}

fn worst(f: impl Fn(&ModelParams, f64) -> f64) -> f64 {
    CASES
        .iter()
        .flat_map(|&(k, d)| {
            let p = ModelParams::scaled(k, d).unwrap();
            times().map(move |t| (p, t))
        })
        .map(|(p, t)| f(&p, t))
        .fold(0.0, f64::max)
}

fn modulus_gap(a: &[jcdamp::C64], b: &[jcdamp::C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x.norm() - y.norm()).abs()).fold(0.0, f64::max)
}

#[test]
fn psi_amplitudes_agree_in_modulus() {
    let gap = worst(|p, t| {
        let r = closed_form::psi_amplitudes(p, ALPHA, t).unwrap();
        modulus_gap(&r.x, &printed::psi_amplitudes(&p.spectral(), ALPHA, t).x)
    });
    assert!(gap < 1e-12, "{gap:e}");
}

#[test]
fn psi_concurrence_agrees_in_modulus() {
    let gap = worst(|p, t| {
        let c = closed_form::psi_concurrence(p, ALPHA, t).unwrap();
        (printed::psi_concurrence(&p.spectral(), ALPHA, t).norm() - c.raw).abs()
    });
    assert!(gap < 1e-12, "{gap:e}");
}

#[test]
fn resonant_f_over_four_is_the_psi_concurrence() {
    let gap = worst(|p, t| {
        if p.delta_over_g() != 0.0 {
            return 0.0;
        }
        let c = closed_form::psi_concurrence(p, ALPHA, t).unwrap();
        (printed::resonant_f(p.kappa(), ALPHA, t).norm() / 4.0 - c.raw).abs()
    });
    assert!(gap < 1e-12, "{gap:e}");
}

#[test]
fn phi_x1_needs_xi_squared_in_its_last_term() {
    let amps = |p: &ModelParams, t| closed_form::phi_amplitudes(p, ALPHA, t).unwrap().x;
    let verbatim = worst(|p, t| modulus_gap(&amps(p, t), &printed::phi_amplitudes(p, &p.spectral(), ALPHA, t).x));
    let corrected =
        worst(|p, t| modulus_gap(&amps(p, t), &printed::phi_amplitudes_corrected(p, &p.spectral(), ALPHA, t).x));
    assert!(verbatim > 1e-2, "{verbatim:e}");
    assert!(corrected < 1e-12, "{corrected:e}");
}

#[test]
fn phi_f_plus_g_is_the_raw_concurrence() {
    let gap = worst(|p, t| {
        let c = closed_form::phi_concurrence(p, ALPHA, t).unwrap();
        (printed::phi_concurrence(&p.spectral(), ALPHA, t) - c.raw).abs()
    });
    assert!(gap < 1e-12, "{gap:e}");
    let c0 = printed::phi_concurrence(&ModelParams::scaled(0.0, 0.0).unwrap().spectral(), ALPHA, 0.0);
    assert!((c0 - (2.0 * ALPHA).sin()).abs() < 1e-12);
}

#[test]
fn printed_phi_matrix_layout_has_the_same_concurrence() {
    let gap = worst(|p, t| {
        let x = closed_form::phi_amplitudes(p, ALPHA, t).unwrap().x;
        let rho = ReducedDensityMatrix::new(printed::phi_reduced_matrix(&x));
        let c = closed_form::phi_concurrence(p, ALPHA, t).unwrap();
        (wootters_concurrence(&rho).unwrap().value() - c.value).abs()
    });
    assert!(gap < 1e-12, "{gap:e}");
}

#[test]
fn printed_radicand_only_matches_when_xi_is_zero_or_one() {
    let phi = InitialState::phi(ALPHA).unwrap();
    let gap = |k, d| {
        let p = ModelParams::scaled(k, d).unwrap();
        let sp = SpectralQuantities::derive_as_printed(&p);
        times()
            .map(|t| {
                let a = closed_form::concurrence(&p, &phi, t, Normalization::Unnormalized).unwrap().value;
                let b = closed_form::concurrence_from(&sp, &phi, t, Normalization::Unnormalized).unwrap().value;
                (a - b).abs()
            })
            .fold(0.0, f64::max)
    };
    assert_eq!(gap(0.0, 0.0), 0.0);
    assert_eq!(gap(1.0, 0.0), 0.0);
    assert!(gap(0.5, 0.0) > 1e-3);
    assert!(gap(0.5, 3.0) > 1e-1);
}
