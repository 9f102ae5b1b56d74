//! Brute-force reference path: build the sector Hamiltonian, integrate it
//! numerically, trace out the fields and take the general Wootters
//! concurrence. Shares nothing with [`crate::closed_form`] beyond
//! [`ModelParams`] and [`InitialState`].

pub mod concurrence;
pub mod density;
pub mod hamiltonian;
pub mod integrate;

pub use concurrence::{wootters_concurrence, wootters_lambdas, x_state_concurrence};
pub use density::{partial_trace_fields, ReducedDensityMatrix};
pub use hamiltonian::{build_sector, sector_basis, BasisState, Frame, HamiltonianSector, Level};
pub use integrate::{integrate, Rk4, StateVector, DEFAULT_STEP, MAX_STEP};

use crate::closed_form::ConcurrenceSample;
use crate::model::{InitialState, ModelParams, Normalization};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    pub dt: f64,
    pub frame: Frame,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { dt: DEFAULT_STEP, frame: Frame::Interaction }
    }
}

/// One oracle evaluation: the sector state, its reduced two-atom matrix
/// and concurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSample {
    pub state: StateVector,
    pub rho: ReducedDensityMatrix,
    pub concurrence: ConcurrenceSample,
}

impl OracleSample {
    pub fn norm_sqr(&self) -> f64 {
        self.state.norm_sqr()
    }
}

/// Evolves `initial` under `params` and evaluates the concurrence at every
/// entry of `times` (non-decreasing, >= 0).
pub fn evolve(
    params: &ModelParams,
    initial: &InitialState,
    times: &[f64],
    options: &OracleOptions,
    norm: Normalization,
) -> Result<Vec<OracleSample>> {
    let sector = build_sector(params, initial.family, options.frame)?;
    let rk = Rk4::new(options.dt)?;
    let states = rk.trajectory(&sector, &StateVector::initial(initial), times)?;
    states.into_iter().map(|state| sample(state, norm)).collect()
}

/// Concurrence of a sector state.
pub fn sample(state: StateVector, norm: Normalization) -> Result<OracleSample> {
    let rho = partial_trace_fields(&state);
    let c = match norm {
        Normalization::Unnormalized => wootters_concurrence(&rho)?,
        Normalization::Renormalized => wootters_concurrence(&rho.renormalized()?)?,
    };
    Ok(OracleSample { concurrence: ConcurrenceSample::from_raw(state.t, c.raw), state, rho })
}

/// Oracle concurrence at a single time.
pub fn concurrence_at(
    params: &ModelParams,
    initial: &InitialState,
    t: f64,
    options: &OracleOptions,
    norm: Normalization,
) -> Result<ConcurrenceSample> {
    crate::closed_form::check_time(t)?;
    Ok(evolve(params, initial, &[t], options, norm)?.remove(0).concurrence)
}
