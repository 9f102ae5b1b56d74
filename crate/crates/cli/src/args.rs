use std::f64::consts::{FRAC_PI_4, TAU};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jcdamp::analysis::{AxisSpec, DEFAULT_TOLERANCE};
use jcdamp::oracle::DEFAULT_STEP;
use jcdamp::{Execution, Family, InitialState, ModelParams, Normalization};
use serde::Serialize;

use crate::CliError;

/// Entanglement of two atoms in independent damped Jaynes-Cummings cavities.
///
/// Rates are in units of the coupling g; time is T = g t; angles are in
/// radians (pi/6 = 0.5236, pi/4 = 0.7854).
#[derive(Debug, Parser)]
#[command(name = "jcdamp", version)]
pub struct Cli {
    /// Evaluate grid points one at a time instead of on the thread pool.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Concurrence against time.
    #[command(allow_negative_numbers = true)]
    Evolve(EvolveArgs),
    /// Concurrence on a 2-D parameter grid.
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Sudden-death intervals as JSON.
    #[command(allow_negative_numbers = true)]
    Sde(SdeArgs),
    /// Compare the closed form with the numerical oracle on the reference grid.
    #[command(allow_negative_numbers = true)]
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    Psi,
    Phi,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Psi => Family::Psi,
            FamilyArg::Phi => Family::Phi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceArg {
    Closed,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Physics {
    /// Initial state family: psi = cos a |eg> + sin a |ge>, phi = cos a |ee> + sin a |gg>.
    #[arg(long, value_enum, default_value = "psi")]
    pub initial: FamilyArg,
    /// Mixing angle a of the initial state.
    #[arg(long, default_value_t = FRAC_PI_4)]
    pub alpha: f64,
    /// Upper-level decay rate gamma / g.
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    /// Atom-cavity detuning delta / g.
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    /// Divide the two-atom state by its trace before taking the concurrence.
    #[arg(long)]
    pub renormalize: bool,
    /// Oracle integration step in units of 1/g.
    #[arg(long, default_value_t = DEFAULT_STEP)]
    pub dt: f64,
}

/// Parameters echoed into JSON outputs.
#[derive(Debug, Clone, Serialize)]
pub struct Echo {
    pub initial: FamilyArg,
    pub alpha: f64,
    pub gamma: f64,
    pub delta: f64,
    pub renormalize: bool,
    pub dt: f64,
}

impl Physics {
    pub fn params(&self) -> Result<ModelParams, CliError> {
        Ok(ModelParams::scaled(self.gamma, self.delta)?)
    }

    pub fn initial_state(&self) -> Result<InitialState, CliError> {
        Ok(InitialState::new(self.initial.into(), self.alpha)?)
    }

    pub fn normalization(&self) -> Normalization {
        if self.renormalize {
            Normalization::Renormalized
        } else {
            Normalization::Unnormalized
        }
    }

    pub fn echo(&self) -> Echo {
        Echo {
            initial: self.initial,
            alpha: self.alpha,
            gamma: self.gamma,
            delta: self.delta,
            renormalize: self.renormalize,
            dt: self.dt,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub physics: Physics,
    /// End of the time window.
    #[arg(long, default_value_t = TAU)]
    pub tmax: f64,
    /// Number of samples including both ends; 2000 per 2 pi by default.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, value_enum, default_value = "closed")]
    pub source: SourceArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub physics: Physics,
    /// Two axes, each `name:lo:hi:n` with name one of delta, gamma, alpha, T.
    /// Swept values override the corresponding fixed flags.
    #[arg(long, num_args = 2, required = true, value_names = ["AXIS1", "AXIS2"])]
    pub axes: Vec<String>,
    /// Time at which to evaluate when neither axis is T.
    #[arg(long)]
    pub time: Option<f64>,
    #[arg(long, value_enum, default_value = "closed")]
    pub source: SourceArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArgs,
}

impl SweepArgs {
    pub fn axis_specs(&self) -> Result<(AxisSpec, AxisSpec), CliError> {
        let a: AxisSpec = self.axes[0].parse()?;
        let b: AxisSpec = self.axes[1].parse()?;
        if a.name == b.name {
            return Err(CliError::Config(format!("axes must differ, both are {}", a.name)));
        }
        Ok((a, b))
    }
}

#[derive(Debug, Clone, Args)]
pub struct SdeArgs {
    #[command(flatten)]
    pub physics: Physics,
    /// End of the time window.
    #[arg(long, default_value_t = 2.0 * TAU)]
    pub tmax: f64,
    /// Number of samples including both ends; 2000 per 2 pi by default.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Negativity threshold on the unclamped concurrence.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "closed")]
    pub source: SourceArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// Oracle integration step in units of 1/g.
    #[arg(long, default_value_t = DEFAULT_STEP)]
    pub dt: f64,
    /// Samples per cell on [0, 5 pi].
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    /// Compare renormalized concurrences.
    #[arg(long)]
    pub renormalize: bool,
    /// Evaluate the closed form with eta^2 = xi^2 + 16 to check that the
    /// validator notices.
    #[arg(long, hide = true)]
    pub inject_eta_sign_error: bool,
    /// JSON summary file; standard output when omitted.
    #[command(flatten)]
    pub out: OutputArgs,
}
