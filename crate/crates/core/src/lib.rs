//! Entanglement dynamics of two atoms, each held in its own damped
//! Jaynes-Cummings cavity.
//!
//! Two independent routes to the two-atom concurrence are provided:
//!
//! - [`closed_form`]: analytic amplitudes and concurrences, with the
//!   as-printed reference expressions kept callable in
//!   [`closed_form::printed`] for auditing.
//! - [`oracle`]: the non-Hermitian Hamiltonian on the exact one-photon-per-
//!   cavity sectors, fixed-step RK4 evolution, a partial trace over the
//!   fields and the general Wootters concurrence.
//!
//! [`analysis`] turns either route into traces, sudden-death reports and
//! parameter sweeps; [`validate`] cross-checks the two routes on a grid.
//!
//! Time is always the dimensionless `T = g t`.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod closed_form;
mod error;
pub mod exec;
pub mod model;
pub mod oracle;
pub mod validate;

pub use error::{Error, Result};
pub use exec::Execution;
pub use model::{Concurrence, Family, InitialState, ModelParams, Normalization, SpectralQuantities};

/// Complex amplitude type used throughout the crate.
pub type C64 = num_complex::Complex64;
