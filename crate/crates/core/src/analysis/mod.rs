//! Concurrence traces and the phenomenology built on them: sudden-death
//! intervals, dark-time scans, long-time averages and 2-D sweeps.

mod sde;
mod sweep;

pub use sde::{dark_time, detect_sde, sde_interval_vs_alpha, SdeInterval, SdeReport, DEFAULT_TOLERANCE};
pub use sweep::{sweep, AxisName, AxisSpec, SweepBase, SweepGrid};

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::closed_form::{self, ConcurrenceSample};
use crate::exec::Execution;
use crate::model::{InitialState, ModelParams, Normalization};
use crate::oracle::{self, OracleOptions};
use crate::{Error, Result};

/// Samples per `2 pi` of `T` used when the caller does not choose.
pub const SAMPLES_PER_TAU: f64 = 2000.0;

/// Number of uniformly spaced samples covering `[0, t_max]` at the default
/// resolution, endpoints included.
pub fn default_samples(t_max: f64) -> usize {
    ((SAMPLES_PER_TAU * t_max / TAU).round() as usize + 1).max(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    ClosedForm,
    Oracle,
}

impl FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" | "closed_form" => Ok(Source::ClosedForm),
            "oracle" => Ok(Source::Oracle),
            _ => Err(Error::InvalidArgument(format!("unknown source `{s}` (expected closed or oracle)"))),
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::ClosedForm => "closed",
            Source::Oracle => "oracle",
        })
    }
}

/// Knobs shared by every evaluation path.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Settings {
    pub normalization: Normalization,
    pub oracle: OracleOptions,
    pub execution: Execution,
}

/// Evaluates one concurrence by either path.
pub fn evaluate(
    params: &ModelParams,
    initial: &InitialState,
    t: f64,
    source: Source,
    settings: &Settings,
) -> Result<ConcurrenceSample> {
    match source {
        Source::ClosedForm => closed_form::concurrence(params, initial, t, settings.normalization),
        Source::Oracle => oracle::concurrence_at(params, initial, t, &settings.oracle, settings.normalization),
    }
}

/// Concurrence sampled uniformly on `[0, t_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceTrace {
    pub params: ModelParams,
    pub initial: InitialState,
    pub source: Source,
    pub settings: Settings,
    pub samples: Vec<ConcurrenceSample>,
    /// Squared norm of the full state at each sample.
    pub norms: Vec<f64>,
}

impl ConcurrenceTrace {
    pub fn spacing(&self) -> f64 {
        self.samples[1].t - self.samples[0].t
    }

    pub fn t_end(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.t)
    }

    /// Re-evaluates the underlying path at an arbitrary time.
    pub fn evaluate(&self, t: f64) -> Result<ConcurrenceSample> {
        evaluate(&self.params, &self.initial, t, self.source, &self.settings)
    }

    pub fn max_value(&self) -> f64 {
        self.samples.iter().map(|s| s.value).fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn trace(
    params: &ModelParams,
    initial: &InitialState,
    t_max: f64,
    n_samples: usize,
    source: Source,
    settings: &Settings,
) -> Result<ConcurrenceTrace> {
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::InvalidArgument(format!("T_max must be finite and > 0, got {t_max}")));
    }
    if n_samples < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 samples, got {n_samples}")));
    }
    let step = t_max / (n_samples - 1) as f64;
    let times: Vec<f64> = (0..n_samples).map(|i| if i + 1 == n_samples { t_max } else { step * i as f64 }).collect();

    let (samples, norms) = match source {
        Source::ClosedForm => {
            let spectral = params.spectral();
            let points = settings.execution.try_map(n_samples, |i| {
                let t = times[i];
                let c = closed_form::concurrence_from(&spectral, initial, t, settings.normalization)?;
                let n = closed_form::amplitudes_from(&spectral, initial, t)?.norm_sqr();
                Ok((c, n))
            })?;
            points.into_iter().unzip()
        }
        Source::Oracle => oracle::evolve(params, initial, &times, &settings.oracle, settings.normalization)?
            .into_iter()
            .map(|s| (s.concurrence, s.norm_sqr()))
            .unzip(),
    };
    Ok(ConcurrenceTrace { params: *params, initial: *initial, source, settings: *settings, samples, norms })
}

/// Trapezoidal mean of the concurrence over `[t_from, T_end]`; the value
/// at `t_from` is linearly interpolated between samples.
pub fn time_average(trace: &ConcurrenceTrace, t_from: f64) -> Result<f64> {
    let s = &trace.samples;
    let t_end = trace.t_end();
    if !(t_from.is_finite() && t_from < t_end) {
        return Err(Error::InvalidArgument(format!("averaging start {t_from} must precede the trace end {t_end}")));
    }
    let start = t_from.max(s[0].t);
    let k = s.iter().position(|p| p.t > start).unwrap_or(s.len() - 1);
    let value_at_start = if k == 0 {
        s[0].value
    } else {
        let (a, b) = (&s[k - 1], &s[k]);
        a.value + (b.value - a.value) * (start - a.t) / (b.t - a.t)
    };
    let mut area = 0.0;
    let (mut t_prev, mut v_prev) = (start, value_at_start);
    for p in &s[k..] {
        area += 0.5 * (p.value + v_prev) * (p.t - t_prev);
        t_prev = p.t;
        v_prev = p.value;
    }
    Ok(area / (t_end - start))
}
