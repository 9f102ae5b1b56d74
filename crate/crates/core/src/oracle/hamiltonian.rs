//! Non-Hermitian Hamiltonian of two atoms in two independent cavities,
//! restricted to the closed sector reached from a given initial family.
//!
//! The Hamiltonian (in units of `g`) is
//!
//! ```text
//! H = sum_{l=A,B} [ E_atom(l) + E_field(l) + (a_l^dag sigma_-^l + a_l sigma_+^l)
//!                   - i (kappa/2) |e><e|_l ]
//! ```
//!
//! Rotating-wave coupling conserves the excitation number, the decay term
//! only removes norm, and each cavity starts in vacuum, so one photon per
//! cavity is the exact truncation.

use std::fmt;

use nalgebra::DMatrix;

use crate::model::{Family, ModelParams};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Ground,
    Excited,
}

impl Level {
    fn flip(self) -> Self {
        match self {
            Level::Ground => Level::Excited,
            Level::Excited => Level::Ground,
        }
    }
}

/// `|atom A, atom B, photons in a, photons in b>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisState {
    pub atom_a: Level,
    pub atom_b: Level,
    pub photons_a: u8,
    pub photons_b: u8,
}

impl BasisState {
    const fn new(atom_a: Level, atom_b: Level, photons_a: u8, photons_b: u8) -> Self {
        BasisState { atom_a, atom_b, photons_a, photons_b }
    }

    pub fn excited_atoms(&self) -> usize {
        [self.atom_a, self.atom_b].iter().filter(|&&l| l == Level::Excited).count()
    }

    pub fn photons(&self) -> (u8, u8) {
        (self.photons_a, self.photons_b)
    }

    /// Index of the atomic part in `{|ee>, |eg>, |ge>, |gg>}`.
    pub fn atomic_index(&self) -> usize {
        let bit = |l: Level| usize::from(l == Level::Ground);
        2 * bit(self.atom_a) + bit(self.atom_b)
    }

    /// Images under `a^dag sigma_- + a sigma_+` for one atom-cavity pair,
    /// with their matrix elements.
    fn exchange(&self, pair_a: bool) -> Option<(BasisState, f64)> {
        let (atom, n) = if pair_a { (self.atom_a, self.photons_a) } else { (self.atom_b, self.photons_b) };
        let (n_new, amp) = match atom {
            Level::Excited => (n + 1, f64::from(n + 1).sqrt()),
            Level::Ground if n > 0 => (n - 1, f64::from(n).sqrt()),
            Level::Ground => return None,
        };
        let mut out = *self;
        if pair_a {
            out.atom_a = atom.flip();
            out.photons_a = n_new;
        } else {
            out.atom_b = atom.flip();
            out.photons_b = n_new;
        }
        Some((out, amp))
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |l: Level| if l == Level::Excited { 'e' } else { 'g' };
        write!(f, "|{}{}{}{}>", c(self.atom_a), c(self.atom_b), self.photons_a, self.photons_b)
    }
}

use Level::{Excited as E, Ground as G};

const PSI_BASIS: [BasisState; 4] = [
    BasisState::new(E, G, 0, 0),
    BasisState::new(G, E, 0, 0),
    BasisState::new(G, G, 1, 0),
    BasisState::new(G, G, 0, 1),
];

const PHI_BASIS: [BasisState; 5] = [
    BasisState::new(E, E, 0, 0),
    BasisState::new(G, G, 1, 1),
    BasisState::new(E, G, 0, 1),
    BasisState::new(G, E, 1, 0),
    BasisState::new(G, G, 0, 0),
];

/// Ordered basis of a family's sector; matches the amplitude order used by
/// [`crate::closed_form::AmplitudeSet`].
pub fn sector_basis(family: Family) -> &'static [BasisState] {
    match family {
        Family::Psi => &PSI_BASIS,
        Family::Phi => &PHI_BASIS,
    }
}

/// Reference frame for the bare energies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Frame {
    /// Each excited atom contributes `-delta/2`, each photon `+delta/2`.
    /// Diagonal energies depend on the detuning alone.
    #[default]
    Interaction,
    /// Atoms at `+-omega/2`, photons at `nu`. Differs from
    /// [`Frame::Interaction`] by a multiple of the excitation number, i.e.
    /// by phases that cannot change any modulus or concurrence.
    Lab,
}

impl Frame {
    fn energy(self, params: &ModelParams, s: &BasisState) -> f64 {
        let photons = f64::from(s.photons_a) + f64::from(s.photons_b);
        let excited = s.excited_atoms() as f64;
        let e = match self {
            Frame::Interaction => 0.5 * params.delta() * (photons - excited),
            Frame::Lab => 0.5 * params.omega() * (2.0 * excited - 2.0) + params.nu() * photons,
        };
        e / params.g()
    }
}

/// Sector Hamiltonian in units of `g`, so that `i d psi / dT = H psi`.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSector {
    pub family: Family,
    pub frame: Frame,
    pub matrix: DMatrix<C64>,
    pub basis: &'static [BasisState],
}

impl HamiltonianSector {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `(H - H^dag) / 2`.
    pub fn anti_hermitian_part(&self) -> DMatrix<C64> {
        (&self.matrix - self.matrix.adjoint()) * C64::from(0.5)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.anti_hermitian_part().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.basis.iter().map(ToString::to_string).collect()
    }
}

pub fn build_sector(params: &ModelParams, family: Family, frame: Frame) -> Result<HamiltonianSector> {
    let basis = sector_basis(family);
    let n = basis.len();
    let kappa = params.kappa();
    let mut h = DMatrix::<C64>::zeros(n, n);
    for (i, s) in basis.iter().enumerate() {
        h[(i, i)] = C64::new(frame.energy(params, s), -0.5 * kappa * s.excited_atoms() as f64);
        for pair_a in [true, false] {
            if let Some((image, amp)) = s.exchange(pair_a) {
                let j = basis.iter().position(|b| *b == image).ok_or_else(|| {
                    Error::InvalidArgument(format!("{family} sector is not closed: {s} couples to {image}"))
                })?;
                h[(j, i)] += C64::from(amp);
            }
        }
    }
    Ok(HamiltonianSector { family, frame, matrix: h, basis })
}

/// [`build_sector`] from a textual family tag.
pub fn build_sector_named(params: &ModelParams, family: &str, frame: Frame) -> Result<HamiltonianSector> {
    build_sector(params, family.parse()?, frame)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn psi_resonant_lossless_structure() {
        let h = build_sector(&ModelParams::scaled(0.0, 0.0).unwrap(), Family::Psi, Frame::Interaction).unwrap();
        let expected = DMatrix::from_row_slice(
            4,
            4,
            &[
                c(0., 0.),
                c(0., 0.),
                c(1., 0.),
                c(0., 0.),
                c(0., 0.),
                c(0., 0.),
                c(0., 0.),
                c(1., 0.),
                c(1., 0.),
                c(0., 0.),
                c(0., 0.),
                c(0., 0.),
                c(0., 0.),
                c(1., 0.),
                c(0., 0.),
                c(0., 0.),
            ],
        );
        assert_eq!(h.matrix, expected);
        assert_eq!(h.hermiticity_defect(), 0.0);
    }

    #[test]
    fn psi_decay_on_singly_excited_states_only() {
        let h = build_sector(&ModelParams::scaled(1.0, 0.0).unwrap(), Family::Psi, Frame::Interaction).unwrap();
        let diag: Vec<C64> = h.matrix.diagonal().iter().copied().collect();
        assert_eq!(diag, vec![c(0., -0.5), c(0., -0.5), c(0., 0.), c(0., 0.)]);
    }

    #[test]
    fn phi_decay_and_decoupled_ground_state() {
        let h = build_sector(&ModelParams::scaled(1.0, 0.0).unwrap(), Family::Phi, Frame::Interaction).unwrap();
        let diag: Vec<C64> = h.matrix.diagonal().iter().copied().collect();
        assert_eq!(diag, vec![c(0., -1.), c(0., 0.), c(0., -0.5), c(0., -0.5), c(0., 0.)]);
        for k in 0..4 {
            assert_eq!(h.matrix[(4, k)], c(0., 0.));
            assert_eq!(h.matrix[(k, 4)], c(0., 0.));
        }
        // |ee00> couples to both singly-emitted states, which both feed |gg11>
        assert_eq!(h.matrix[(2, 0)], c(1., 0.));
        assert_eq!(h.matrix[(3, 0)], c(1., 0.));
        assert_eq!(h.matrix[(1, 2)], c(1., 0.));
        assert_eq!(h.matrix[(1, 3)], c(1., 0.));
        assert_eq!(h.matrix[(1, 0)], c(0., 0.));
    }

    #[test]
    fn anti_hermitian_part_is_decay_projector() {
        let kappa = 0.8;
        for family in [Family::Psi, Family::Phi] {
            let p = ModelParams::scaled(kappa, 2.5).unwrap();
            let h = build_sector(&p, family, Frame::Lab).unwrap();
            let ah = h.anti_hermitian_part();
            for (i, s) in h.basis.iter().enumerate() {
                for j in 0..h.dimension() {
                    let expected = if i == j { c(0., -0.5 * kappa * s.excited_atoms() as f64) } else { c(0., 0.) };
                    assert!((ah[(i, j)] - expected).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn frames_differ_by_excitation_number() {
        let p = ModelParams::new(1.0, 3.0, 4.5, 0.2).unwrap();
        for family in [Family::Psi, Family::Phi] {
            let a = build_sector(&p, family, Frame::Interaction).unwrap();
            let b = build_sector(&p, family, Frame::Lab).unwrap();
            let diff = &b.matrix - &a.matrix;
            for (i, s) in a.basis.iter().enumerate() {
                let n = s.excited_atoms() as f64 + f64::from(s.photons_a + s.photons_b);
                // lab - interaction = (omega + delta/2) N - omega
                let expected = (p.omega() + 0.5 * p.delta()) * n - p.omega();
                assert!((diff[(i, i)] - c(expected, 0.)).norm() < 1e-12, "{s}");
            }
        }
    }

    #[test]
    fn unknown_family_is_rejected() {
        let p = ModelParams::scaled(0.0, 0.0).unwrap();
        assert!(build_sector_named(&p, "psi", Frame::Interaction).is_ok());
        assert!(matches!(build_sector_named(&p, "xi", Frame::Interaction), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn labels() {
        let h = build_sector(&ModelParams::scaled(0.0, 0.0).unwrap(), Family::Phi, Frame::Interaction).unwrap();
        assert_eq!(h.basis_labels(), vec!["|ee00>", "|gg11>", "|eg01>", "|ge10>", "|gg00>"]);
        assert_eq!(PHI_BASIS[2].atomic_index(), 1);
        assert_eq!(PHI_BASIS[1].atomic_index(), 3);
    }
}
