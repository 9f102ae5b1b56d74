//! Fixed-step classical Runge-Kutta evolution of `i d psi / dT = H psi`.

use nalgebra::{DMatrix, DVector};

use super::hamiltonian::HamiltonianSector;
use crate::model::{Family, InitialState};
use crate::{Error, Result, C64};

/// Default step in units of `1/g`.
pub const DEFAULT_STEP: f64 = 1e-3;
/// Larger steps are refused.
pub const MAX_STEP: f64 = 0.01;
/// Relative norm growth that aborts an integration.
const NORM_GROWTH_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub family: Family,
    pub amplitudes: DVector<C64>,
    pub t: f64,
}

impl StateVector {
    /// The sector vector of an initial atomic state with both cavities in
    /// vacuum, at `T = 0`.
    pub fn initial(initial: &InitialState) -> Self {
        let (s, c) = initial.alpha.sin_cos();
        let amplitudes = match initial.family {
            Family::Psi => DVector::from_vec(vec![c.into(), s.into(), 0.0.into(), 0.0.into()]),
            Family::Phi => DVector::from_vec(vec![c.into(), 0.0.into(), 0.0.into(), 0.0.into(), s.into()]),
        };
        StateVector { family: initial.family, amplitudes, t: 0.0 }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.norm_squared()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rk4 {
    dt: f64,
}

impl Default for Rk4 {
    fn default() -> Self {
        Rk4 { dt: DEFAULT_STEP }
    }
}

impl Rk4 {
    pub fn new(dt: f64) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidArgument(format!("step dT must be finite and > 0, got {dt}")));
        }
        if dt > MAX_STEP {
            return Err(Error::StepTooLarge { dt, max: MAX_STEP });
        }
        Ok(Rk4 { dt })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Evolves `state` to `t_final`, calling `observe` after every step.
    ///
    /// The span is cut into the smallest number of equal steps not longer
    /// than `dt`.
    pub fn propagate<F>(
        &self,
        sector: &HamiltonianSector,
        state: &StateVector,
        t_final: f64,
        mut observe: F,
    ) -> Result<StateVector>
    where
        F: FnMut(f64, &DVector<C64>),
    {
        check_sector(sector, state)?;
        if !(t_final.is_finite() && t_final >= state.t) {
            return Err(Error::InvalidArgument(format!(
                "final time {t_final} must be finite and not before the state time {}",
                state.t
            )));
        }
        let span = t_final - state.t;
        if span == 0.0 {
            return Ok(state.clone());
        }
        let steps = ((span / self.dt) * (1.0 - 1e-12)).ceil().max(1.0) as usize;
        let h = span / steps as f64;

        let gen: DMatrix<C64> = &sector.matrix * C64::new(0.0, -1.0);
        let n = gen.nrows();
        let limit = state.amplitudes.norm() * (1.0 + NORM_GROWTH_LIMIT);
        let mut y = state.amplitudes.clone();
        let mut k1 = DVector::zeros(n);
        let mut k2 = DVector::zeros(n);
        let mut k3 = DVector::zeros(n);
        let mut k4 = DVector::zeros(n);
        let mut tmp = DVector::zeros(n);
        let one = C64::from(1.0);
        let zero = C64::from(0.0);

        for step in 1..=steps {
            k1.gemv(one, &gen, &y, zero);
            tmp.copy_from(&y);
            tmp.axpy(C64::from(0.5 * h), &k1, one);
            k2.gemv(one, &gen, &tmp, zero);
            tmp.copy_from(&y);
            tmp.axpy(C64::from(0.5 * h), &k2, one);
            k3.gemv(one, &gen, &tmp, zero);
            tmp.copy_from(&y);
            tmp.axpy(C64::from(h), &k3, one);
            k4.gemv(one, &gen, &tmp, zero);
            y.axpy(C64::from(h / 6.0), &k1, one);
            y.axpy(C64::from(h / 3.0), &k2, one);
            y.axpy(C64::from(h / 3.0), &k3, one);
            y.axpy(C64::from(h / 6.0), &k4, one);

            let t = if step == steps { t_final } else { state.t + h * step as f64 };
            let norm = y.norm();
            if norm > limit {
                return Err(Error::NormGrowth { t, norm });
            }
            observe(t, &y);
        }
        Ok(StateVector { family: state.family, amplitudes: y, t: t_final })
    }

    pub fn integrate(&self, sector: &HamiltonianSector, state: &StateVector, t_final: f64) -> Result<StateVector> {
        self.propagate(sector, state, t_final, |_, _| {})
    }

    /// States at each of `times` (non-decreasing, none before the initial
    /// state's time).
    pub fn trajectory(
        &self,
        sector: &HamiltonianSector,
        initial: &StateVector,
        times: &[f64],
    ) -> Result<Vec<StateVector>> {
        let mut out = Vec::with_capacity(times.len());
        let mut current = initial.clone();
        for &t in times {
            current = self.integrate(sector, &current, t)?;
            out.push(current.clone());
        }
        Ok(out)
    }

    /// Largest amplitude difference between this step and half of it at
    /// `t_final`; RK4 error at the finer step is about 1/15 of this.
    pub fn step_halving_error(&self, sector: &HamiltonianSector, initial: &StateVector, t_final: f64) -> Result<f64> {
        let coarse = self.integrate(sector, initial, t_final)?;
        let fine = Rk4::new(self.dt / 2.0)?.integrate(sector, initial, t_final)?;
        Ok((coarse.amplitudes - fine.amplitudes).iter().map(|z| z.norm()).fold(0.0, f64::max))
    }
}

fn check_sector(sector: &HamiltonianSector, state: &StateVector) -> Result<()> {
    if sector.family != state.family || state.amplitudes.len() != sector.dimension() {
        return Err(Error::InvalidArgument(format!(
            "state of the {} family does not live in the {} sector",
            state.family, sector.family
        )));
    }
    Ok(())
}

/// Integrates with a fresh [`Rk4`] of step `dt`.
pub fn integrate(sector: &HamiltonianSector, initial: &StateVector, t_final: f64, dt: f64) -> Result<StateVector> {
    Rk4::new(dt)?.integrate(sector, initial, t_final)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelParams;
    use crate::oracle::hamiltonian::{build_sector, Frame};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};

    fn sector(kappa: f64, delta: f64, family: Family) -> HamiltonianSector {
        build_sector(&ModelParams::scaled(kappa, delta).unwrap(), family, Frame::Interaction).unwrap()
    }

    #[test]
    fn rabi_transfer_at_quarter_period() {
        let h = sector(0.0, 0.0, Family::Psi);
        let start = StateVector::initial(&InitialState::psi(0.0).unwrap());
        let end = integrate(&h, &start, FRAC_PI_2, DEFAULT_STEP).unwrap();
        assert!(end.amplitudes[0].norm() < 1e-12);
        assert!((end.amplitudes[2].norm() - 1.0).abs() < 1e-12);
        // c_g = -i sin T
        assert!((end.amplitudes[2] - C64::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_span_is_identity() {
        let h = sector(0.5, 1.0, Family::Phi);
        let start = StateVector::initial(&InitialState::phi(0.3).unwrap());
        assert_eq!(integrate(&h, &start, 0.0, DEFAULT_STEP).unwrap(), start);
    }

    #[test]
    fn norm_strictly_decreases_under_decay() {
        let h = sector(1.0, 0.0, Family::Phi);
        let start = StateVector::initial(&InitialState::phi(FRAC_PI_6).unwrap());
        let mut prev = start.norm_sqr();
        let mut worst = f64::NEG_INFINITY;
        Rk4::default()
            .propagate(&h, &start, 5.0, |_, y| {
                let n = y.norm_squared();
                worst = worst.max(n - prev);
                prev = n;
            })
            .unwrap();
        assert!(worst < 0.0, "norm increased by {worst}");
    }

    #[test]
    fn lossless_norm_is_conserved() {
        let h = sector(0.0, 3.0, Family::Phi);
        let start = StateVector::initial(&InitialState::phi(0.4).unwrap());
        let end = integrate(&h, &start, 5.0 * PI, DEFAULT_STEP).unwrap();
        assert!((end.norm_sqr() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn step_guard() {
        assert!(matches!(Rk4::new(0.05), Err(Error::StepTooLarge { .. })));
        assert!(Rk4::new(0.0).is_err());
        assert!(Rk4::new(f64::NAN).is_err());
        assert!(Rk4::new(MAX_STEP).is_ok());
    }

    #[test]
    fn gain_is_detected() {
        // flip the decay sign by hand: the generator now amplifies
        let mut h = sector(1.0, 0.0, Family::Psi);
        for i in 0..2 {
            h.matrix[(i, i)] = h.matrix[(i, i)].conj();
        }
        let start = StateVector::initial(&InitialState::psi(0.2).unwrap());
        assert!(matches!(integrate(&h, &start, 2.0, DEFAULT_STEP), Err(Error::NormGrowth { .. })));
    }

    #[test]
    fn mismatched_family_is_rejected() {
        let h = sector(0.0, 0.0, Family::Psi);
        let start = StateVector::initial(&InitialState::phi(0.2).unwrap());
        assert!(integrate(&h, &start, 1.0, DEFAULT_STEP).is_err());
    }

    #[test]
    fn trajectory_hits_requested_times() {
        let h = sector(0.5, 1.0, Family::Psi);
        let start = StateVector::initial(&InitialState::psi(0.7).unwrap());
        let times = [0.0, 0.0123, 0.5, 1.7777];
        let traj = Rk4::default().trajectory(&h, &start, &times).unwrap();
        for (s, t) in traj.iter().zip(times) {
            assert_eq!(s.t, t);
        }
        let direct = integrate(&h, &start, 1.7777, DEFAULT_STEP).unwrap();
        assert!((&traj[3].amplitudes - &direct.amplitudes).norm() < 1e-12);
    }

    #[test]
    fn step_halving_shows_fourth_order() {
        let h = sector(0.5, 2.0, Family::Phi);
        let start = StateVector::initial(&InitialState::phi(0.5).unwrap());
        let e1 = Rk4::new(0.01).unwrap().step_halving_error(&h, &start, 3.0).unwrap();
        let e2 = Rk4::new(0.005).unwrap().step_halving_error(&h, &start, 3.0).unwrap();
        let ratio = e1 / e2;
        assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
    }
}
