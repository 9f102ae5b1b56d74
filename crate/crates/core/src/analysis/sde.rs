//! Sudden-death detection on the sign of the unclamped concurrence.

use std::f64::consts::TAU;

use serde::{Serialize, Serializer};

use super::{default_samples, trace, ConcurrenceTrace, Settings, Source};
use crate::model::{Family, InitialState, ModelParams};
use crate::{Error, Result};

/// Negativity threshold used when the caller does not choose.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// One dark period. `revival_t` is `None` when the concurrence has not
/// recovered by the end of the trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SdeInterval {
    #[serde(rename = "death_T")]
    pub death_t: f64,
    #[serde(rename = "revival_T")]
    pub revival_t: Option<f64>,
    /// Duration, counted up to the trace end when open-ended.
    pub length: f64,
    /// Bisection bracket `[raw >= 0, raw < 0]` around the death time;
    /// degenerate when the trace starts dark.
    #[serde(skip)]
    pub death_bracket: [f64; 2],
    /// Bisection bracket `[raw < 0, raw >= 0]` around the revival time.
    #[serde(skip)]
    pub revival_bracket: Option<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SdeReport {
    pub intervals: Vec<SdeInterval>,
    #[serde(serialize_with = "finite_or_null")]
    pub min_raw: f64,
    pub tolerance: f64,
}

fn finite_or_null<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_none()
    }
}

impl SdeReport {
    pub fn total_dark_time(&self) -> f64 {
        self.intervals.iter().map(|i| i.length).sum()
    }
}

/// Finds the dark periods of a trace.
///
/// Maximal runs of samples with `raw < tol` are candidates; a run is kept
/// only if some sample in it drops below `-tol`. A zero touched from above
/// therefore never opens a dark period, and a zero touched from below
/// (the atoms passing through a product state mid-period) never splits
/// one. Each boundary is refined by bisection on `raw < 0` along the
/// trace's own path, between the lit neighbour and the nearest negative
/// sample, until the bracket is narrower than a hundredth of the sample
/// spacing.
pub fn detect_sde(trace: &ConcurrenceTrace, tol: f64) -> Result<SdeReport> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be finite and > 0, got {tol}")));
    }
    let s = &trace.samples;
    let min_raw = s.iter().map(|p| p.raw).fold(f64::INFINITY, f64::min);
    let width = trace.spacing() / 100.0;
    let t_end = trace.t_end();
    let negative = |t: f64| -> Result<bool> { Ok(trace.evaluate(t)?.raw < 0.0) };

    let mut intervals = Vec::new();
    let mut i = 0;
    while i < s.len() {
        if s[i].raw >= tol {
            i += 1;
            continue;
        }
        let start = i;
        while i < s.len() && s[i].raw < tol {
            i += 1;
        }
        let run = &s[start..i];
        if !run.iter().any(|p| p.raw < -tol) {
            continue;
        }
        let first_dark = run.iter().position(|p| p.raw < 0.0).unwrap();
        let last_dark = run.iter().rposition(|p| p.raw < 0.0).unwrap();
        let death_bracket = if start == 0 {
            [s[0].t, s[0].t]
        } else {
            bisect(s[start - 1].t, run[first_dark].t, width, |t| Ok(!negative(t)?))?
        };
        let revival_bracket = if i < s.len() { Some(bisect(run[last_dark].t, s[i].t, width, negative)?) } else { None };
        let death_t = 0.5 * (death_bracket[0] + death_bracket[1]);
        let revival_t = revival_bracket.map(|b| 0.5 * (b[0] + b[1]));
        intervals.push(SdeInterval {
            death_t,
            revival_t,
            length: revival_t.unwrap_or(t_end) - death_t,
            death_bracket,
            revival_bracket,
        });
    }
    Ok(SdeReport { intervals, min_raw, tolerance: tol })
}

/// Shrinks `[a, b]`, where `keeps_left(a)` holds and `keeps_left(b)` does
/// not, until it is narrower than `width`.
fn bisect<F>(mut a: f64, mut b: f64, width: f64, keeps_left: F) -> Result<[f64; 2]>
where
    F: Fn(f64) -> Result<bool>,
{
    while b - a > width {
        let mid = 0.5 * (a + b);
        if keeps_left(mid)? {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok([a, b])
}

/// Total dark time on `[0, window]` at the default resolution.
pub fn dark_time(
    params: &ModelParams,
    initial: &InitialState,
    window: f64,
    source: Source,
    settings: &Settings,
    tol: f64,
) -> Result<f64> {
    let tr = trace(params, initial, window, default_samples(window), source, settings)?;
    Ok(detect_sde(&tr, tol)?.total_dark_time())
}

/// Dark time of the `Phi` family on `T in [0, 2 pi]` for each `alpha`,
/// from the closed form.
pub fn sde_interval_vs_alpha(params: &ModelParams, alphas: &[f64], settings: &Settings) -> Result<Vec<f64>> {
    alphas
        .iter()
        .map(|&a| {
            let init = InitialState::new(Family::Phi, a)?;
            dark_time(params, &init, TAU, Source::ClosedForm, settings, DEFAULT_TOLERANCE)
        })
        .collect()
}
