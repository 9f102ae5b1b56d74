use nalgebra::{Matrix4, SymmetricEigen};

use super::hamiltonian::sector_basis;
use super::integrate::StateVector;
use crate::{Error, Result, C64};

/// Two-atom density matrix over `{|ee>, |eg>, |ge>, |gg>}`.
///
/// Construction does not validate; [`ReducedDensityMatrix::check`] does,
/// and the concurrence routines call it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedDensityMatrix {
    entries: Matrix4<C64>,
}

impl ReducedDensityMatrix {
    pub fn new(entries: Matrix4<C64>) -> Self {
        ReducedDensityMatrix { entries }
    }

    /// `|psi><psi|` for atomic amplitudes over `{|ee>, |eg>, |ge>, |gg>}`.
    pub fn pure(amplitudes: &[C64; 4]) -> Self {
        let v = nalgebra::Vector4::from_column_slice(amplitudes);
        Self::new(v * v.adjoint())
    }

    pub fn entries(&self) -> &Matrix4<C64> {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (self.entries - self.entries.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let herm = (self.entries + self.entries.adjoint()) * C64::from(0.5);
        let mut ev: Vec<f64> = SymmetricEigen::new(herm).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        [ev[0], ev[1], ev[2], ev[3]]
    }

    /// Hermitian to `1e-10` and no eigenvalue below `-1e-8`.
    pub fn check(&self) -> Result<()> {
        let deviation = self.hermiticity_defect();
        if !(deviation <= 1e-10) {
            return Err(Error::NotHermitian { deviation });
        }
        let lowest = self.eigenvalues()[0];
        if lowest < -1e-8 {
            return Err(Error::NotPositive { eigenvalue: lowest });
        }
        Ok(())
    }

    pub fn renormalized(&self) -> Result<Self> {
        let tr = self.trace();
        if !(tr > 0.0) {
            return Err(Error::ZeroTrace(tr));
        }
        Ok(Self::new(self.entries / C64::from(tr)))
    }

    /// Largest modulus outside the diagonal and the two anti-diagonal
    /// coherence pairs.
    pub fn off_x_pattern(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 {
                    worst = worst.max(self.entries[(i, j)].norm());
                }
            }
        }
        worst
    }
}

/// Traces the two cavity fields out of a sector state:
/// `rho[a, a'] = sum_ph psi(a, ph) conj(psi(a', ph))`.
pub fn partial_trace_fields(state: &StateVector) -> ReducedDensityMatrix {
    let basis = sector_basis(state.family);
    let mut rho = Matrix4::<C64>::zeros();
    for (i, si) in basis.iter().enumerate() {
        for (j, sj) in basis.iter().enumerate() {
            if si.photons() == sj.photons() {
                rho[(si.atomic_index(), sj.atomic_index())] += state.amplitudes[i] * state.amplitudes[j].conj();
            }
        }
    }
    ReducedDensityMatrix::new(rho)
}
