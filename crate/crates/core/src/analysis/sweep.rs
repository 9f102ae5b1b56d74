//! Concurrence on a 2-D grid of parameters.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Settings, Source};
use crate::closed_form;
use crate::model::{InitialState, ModelParams};
use crate::oracle;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxisName {
    /// Detuning in units of `g`.
    #[serde(rename = "delta")]
    Delta,
    /// Decay rate in units of `g`.
    #[serde(rename = "gamma")]
    Gamma,
    #[serde(rename = "alpha")]
    Alpha,
    #[serde(rename = "T")]
    T,
}

impl FromStr for AxisName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(AxisName::Delta),
            "gamma" => Ok(AxisName::Gamma),
            "alpha" => Ok(AxisName::Alpha),
            "T" | "t" => Ok(AxisName::T),
            _ => Err(Error::UnknownAxis(s.to_string())),
        }
    }
}

impl fmt::Display for AxisName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxisName::Delta => "delta",
            AxisName::Gamma => "gamma",
            AxisName::Alpha => "alpha",
            AxisName::T => "T",
        })
    }
}

/// `n` uniform samples from `lo` to `hi`, both included. Written and parsed
/// as `name:lo:hi:n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub name: AxisName,
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl AxisSpec {
    pub fn new(name: AxisName, lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidArgument(format!("axis {name} bounds must be finite")));
        }
        if n < 2 {
            return Err(Error::InvalidArgument(format!("axis {name} needs at least 2 points, got {n}")));
        }
        if matches!(name, AxisName::Gamma | AxisName::T) && lo.min(hi) < 0.0 {
            return Err(Error::InvalidArgument(format!("axis {name} must not go below 0")));
        }
        Ok(AxisSpec { name, lo, hi, n })
    }

    /// Weighted form of the endpoints, so an axis symmetric about zero
    /// comes out exactly antisymmetric and both ends are exact.
    pub fn values(&self) -> Vec<f64> {
        let m = (self.n - 1) as f64;
        (0..self.n).map(|i| (self.lo * (m - i as f64) + self.hi * i as f64) / m).collect()
    }
}

impl FromStr for AxisSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("axis spec `{s}` is not of the form name:lo:hi:n"));
        let parts: Vec<&str> = s.split(':').collect();
        let [name, lo, hi, n] = parts[..] else {
            return Err(bad());
        };
        let name: AxisName = name.parse()?;
        let lo: f64 = lo.parse().map_err(|_| bad())?;
        let hi: f64 = hi.parse().map_err(|_| bad())?;
        let n: usize = n.parse().map_err(|_| bad())?;
        AxisSpec::new(name, lo, hi, n)
    }
}

impl fmt::Display for AxisSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.name, self.lo, self.hi, self.n)
    }
}

/// Everything a sweep holds fixed. Values on swept axes are overridden.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepBase {
    pub params: ModelParams,
    pub initial: InitialState,
    #[serde(rename = "T")]
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    pub axis1_values: Vec<f64>,
    pub axis2_values: Vec<f64>,
    /// Row-major: `values[i * axis2.n + j]` belongs to
    /// `(axis1_values[i], axis2_values[j])`.
    pub values: Vec<f64>,
    pub fixed: SweepBase,
}

impl SweepGrid {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.axis2.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.axis2.n)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

fn apply(base: &SweepBase, axis: AxisName, v: f64) -> Result<SweepBase> {
    let mut out = *base;
    match axis {
        AxisName::Delta => out.params = base.params.with_delta_over_g(v)?,
        AxisName::Gamma => out.params = base.params.with_kappa(v)?,
        AxisName::Alpha => out.initial = InitialState::new(base.initial.family, v)?,
        AxisName::T => out.t = v,
    }
    Ok(out)
}

/// Concurrence at every point of `axis1 x axis2`.
///
/// With the oracle, a `T` axis is covered by a single integration per value
/// of the other axis; otherwise each point is integrated on its own.
pub fn sweep(
    axis1: &AxisSpec,
    axis2: &AxisSpec,
    base: &SweepBase,
    source: Source,
    settings: &Settings,
) -> Result<SweepGrid> {
    if axis1.name == axis2.name {
        return Err(Error::InvalidArgument(format!("axes must differ, both are {}", axis1.name)));
    }
    let (v1, v2) = (axis1.values(), axis2.values());
    let (n1, n2) = (v1.len(), v2.len());
    let point = |i: usize, j: usize| apply(&apply(base, axis1.name, v1[i])?, axis2.name, v2[j]);

    let values = match source {
        Source::ClosedForm => settings.execution.try_map(n1 * n2, |k| {
            let p = point(k / n2, k % n2)?;
            Ok(closed_form::concurrence(&p.params, &p.initial, p.t, settings.normalization)?.value)
        })?,
        Source::Oracle if axis1.name == AxisName::T || axis2.name == AxisName::T => {
            let t_first = axis1.name == AxisName::T;
            let (outer, times) = if t_first { (n2, &v1) } else { (n1, &v2) };
            let mut order: Vec<usize> = (0..times.len()).collect();
            order.sort_by(|&a, &b| times[a].total_cmp(&times[b]));
            let sorted: Vec<f64> = order.iter().map(|&k| times[k]).collect();
            let lines = settings.execution.try_map(outer, |o| {
                let p = if t_first { point(0, o)? } else { point(o, 0)? };
                let samples = oracle::evolve(&p.params, &p.initial, &sorted, &settings.oracle, settings.normalization)?;
                let mut line = vec![0.0; sorted.len()];
                for (s, &k) in samples.iter().zip(&order) {
                    line[k] = s.concurrence.value;
                }
                Ok(line)
            })?;
            let mut values = vec![0.0; n1 * n2];
            for (o, line) in lines.iter().enumerate() {
                for (k, &c) in line.iter().enumerate() {
                    let (i, j) = if t_first { (k, o) } else { (o, k) };
                    values[i * n2 + j] = c;
                }
            }
            values
        }
        Source::Oracle => settings.execution.try_map(n1 * n2, |k| {
            let p = point(k / n2, k % n2)?;
            Ok(oracle::concurrence_at(&p.params, &p.initial, p.t, &settings.oracle, settings.normalization)?.value)
        })?,
    };
    Ok(SweepGrid { axis1: *axis1, axis2: *axis2, axis1_values: v1, axis2_values: v2, values, fixed: *base })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Execution;
    use std::f64::consts::{FRAC_PI_6, TAU};

    fn base(kappa: f64) -> SweepBase {
        SweepBase {
            params: ModelParams::scaled(kappa, 0.0).unwrap(),
            initial: InitialState::psi(FRAC_PI_6).unwrap(),
            t: 1.0,
        }
    }

    #[test]
    fn axis_spec_parsing() {
        let a: AxisSpec = "delta:-5:5:201".parse().unwrap();
        assert_eq!(a, AxisSpec { name: AxisName::Delta, lo: -5.0, hi: 5.0, n: 201 });
        assert_eq!(a.values()[100], 0.0);
        assert_eq!(a.values()[200], 5.0);
        let v = a.values();
        assert!((0..201).all(|i| v[i] == -v[200 - i]));
        for bad in ["delta:-5:5", "beta:0:1:3", "T:0:1:1", "T:0:x:3", "gamma:-1:1:3", "T:0:1:2:4"] {
            assert!(bad.parse::<AxisSpec>().is_err(), "{bad}");
        }
        assert!(matches!("beta:0:1:3".parse::<AxisSpec>(), Err(Error::UnknownAxis(_))));
    }

    #[test]
    fn duplicate_axes_are_rejected() {
        let t: AxisSpec = "T:0:1:2".parse().unwrap();
        assert!(sweep(&t, &t, &base(0.0), Source::ClosedForm, &Settings::default()).is_err());
    }

    #[test]
    fn small_grid_matches_single_calls() {
        let a: AxisSpec = "gamma:0:1:2".parse().unwrap();
        let b: AxisSpec = "alpha:0.3:0.9:2".parse().unwrap();
        let g = sweep(&a, &b, &base(0.0), Source::ClosedForm, &Settings::default()).unwrap();
        assert_eq!(g.values.len(), 4);
        for (i, &k) in g.axis1_values.iter().enumerate() {
            for (j, &al) in g.axis2_values.iter().enumerate() {
                let p = ModelParams::scaled(k, 0.0).unwrap();
                let c = closed_form::concurrence(&p, &InitialState::psi(al).unwrap(), 1.0, Default::default()).unwrap();
                assert_eq!(g.get(i, j), c.value);
            }
        }
    }

    #[test]
    fn detuning_grid_is_symmetric() {
        let d: AxisSpec = "delta:-5:5:41".parse().unwrap();
        let t = AxisSpec::new(AxisName::T, 0.0, TAU, 41).unwrap();
        let g = sweep(&d, &t, &base(0.0), Source::ClosedForm, &Settings::default()).unwrap();
        for i in 0..41 {
            for j in 0..41 {
                assert!((g.get(i, j) - g.get(40 - i, j)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn execution_strategy_does_not_change_results() {
        let d: AxisSpec = "delta:-3:3:9".parse().unwrap();
        let t: AxisSpec = "T:0:3:7".parse().unwrap();
        let seq = Settings { execution: Execution::Sequential, ..Default::default() };
        let par = Settings { execution: Execution::Parallel, ..Default::default() };
        for source in [Source::ClosedForm, Source::Oracle] {
            let a = sweep(&d, &t, &base(0.5), source, &seq).unwrap();
            let b = sweep(&d, &t, &base(0.5), source, &par).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn oracle_grid_agrees_with_closed_form() {
        let t: AxisSpec = "T:3:0:7".parse().unwrap();
        let k: AxisSpec = "gamma:0:1:3".parse().unwrap();
        let s = Settings::default();
        let cf = sweep(&t, &k, &base(0.0), Source::ClosedForm, &s).unwrap();
        let or = sweep(&t, &k, &base(0.0), Source::Oracle, &s).unwrap();
        let a: AxisSpec = "alpha:0.2:1.2:3".parse().unwrap();
        let cf2 = sweep(&a, &k, &base(0.0), Source::ClosedForm, &s).unwrap();
        let or2 = sweep(&a, &k, &base(0.0), Source::Oracle, &s).unwrap();
        for (x, y) in cf.values.iter().zip(&or.values).chain(cf2.values.iter().zip(&or2.values)) {
            assert!((x - y).abs() < 1e-8, "{x} vs {y}");
        }
    }
}
