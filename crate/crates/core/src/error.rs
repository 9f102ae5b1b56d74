use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown state family `{0}` (expected `psi` or `phi`)")]
    UnknownFamily(String),

    #[error("unknown sweep axis `{0}` (expected one of delta, gamma, alpha, T)")]
    UnknownAxis(String),

    #[error("integration step {dt} exceeds the accuracy guard of {max}")]
    StepTooLarge { dt: f64, max: f64 },

    #[error("state norm grew to {norm} at T = {t}; the generator is not dissipative")]
    NormGrowth { t: f64, norm: f64 },

    #[error("density matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("density matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPositive { eigenvalue: f64 },

    #[error("density matrix is not an X state (off-pattern entry of magnitude {magnitude:e})")]
    NotXState { magnitude: f64 },

    #[error("density matrix has non-positive trace {0:e} and cannot be renormalized")]
    ZeroTrace(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
