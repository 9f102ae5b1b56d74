use std::f64::consts::PI;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use jcdamp::analysis::{self, detect_sde, AxisSpec, SdeReport, Settings, Source, SweepBase};
use jcdamp::oracle::{OracleOptions, Rk4};
use jcdamp::validate::{run_validation, Mutation, ValidationConfig, ValidationReport};
use jcdamp::{Execution, Normalization};
use serde::Serialize;

use crate::args::{Echo, EvolveArgs, Format, Physics, SdeArgs, SourceArg, SweepArgs, ValidateArgs};
use crate::CliError;

/// CSV field with 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            match out.write_all(bytes).and_then(|_| out.flush()) {
                // reader went away (`| head`): nothing left to deliver
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                r => r.map_err(|e| CliError::Io(format!("standard output: {e}"))),
            }
        }
    }
}

fn csv_bytes(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn settings(physics: &Physics, execution: Execution) -> Result<Settings, CliError> {
    Rk4::new(physics.dt)?;
    Ok(Settings {
        normalization: physics.normalization(),
        oracle: OracleOptions { dt: physics.dt, ..Default::default() },
        execution,
    })
}

fn single_source(source: SourceArg, command: &str) -> Result<Source, CliError> {
    match source {
        SourceArg::Closed => Ok(Source::ClosedForm),
        SourceArg::Oracle => Ok(Source::Oracle),
        SourceArg::Both => Err(CliError::Config(format!("{command} takes a single source (closed or oracle)"))),
    }
}

fn samples_for(tmax: f64, samples: Option<usize>) -> Result<usize, CliError> {
    if !(tmax.is_finite() && tmax > 0.0) {
        return Err(CliError::Config(format!("--tmax must be finite and > 0, got {tmax}")));
    }
    let n = samples.unwrap_or_else(|| analysis::default_samples(tmax));
    if n < 2 {
        return Err(CliError::Config(format!("--samples must be at least 2, got {n}")));
    }
    Ok(n)
}

#[derive(Serialize)]
struct EvolveSample {
    #[serde(rename = "T")]
    t: f64,
    #[serde(rename = "C")]
    c: f64,
    raw: f64,
    norm: f64,
    #[serde(rename = "C_oracle", skip_serializing_if = "Option::is_none")]
    c_oracle: Option<f64>,
}

#[derive(Serialize)]
struct EvolveOutput {
    parameters: Echo,
    tmax: f64,
    samples: usize,
    source: SourceArg,
    trace: Vec<EvolveSample>,
}

pub fn evolve(a: &EvolveArgs, execution: Execution) -> Result<(), CliError> {
    let params = a.physics.params()?;
    let initial = a.physics.initial_state()?;
    let n = samples_for(a.tmax, a.samples)?;
    let s = settings(&a.physics, execution)?;

    let primary = if a.source == SourceArg::Oracle { Source::Oracle } else { Source::ClosedForm };
    let tr = analysis::trace(&params, &initial, a.tmax, n, primary, &s)?;
    let oracle = match a.source {
        SourceArg::Both => Some(analysis::trace(&params, &initial, a.tmax, n, Source::Oracle, &s)?),
        _ => None,
    };
    let rows: Vec<EvolveSample> = tr
        .samples
        .iter()
        .zip(&tr.norms)
        .enumerate()
        .map(|(i, (smp, &norm))| EvolveSample {
            t: smp.t,
            c: smp.value,
            raw: smp.raw,
            norm,
            c_oracle: oracle.as_ref().map(|o| o.samples[i].value),
        })
        .collect();

    let bytes = match a.format {
        Format::Csv => {
            let mut header = vec!["T", "C", "raw", "norm"];
            if oracle.is_some() {
                header.push("C_oracle");
            }
            csv_bytes(
                &header,
                rows.iter().map(|r| {
                    let mut f = vec![num(r.t), num(r.c), num(r.raw), num(r.norm)];
                    f.extend(r.c_oracle.map(num));
                    f
                }),
            )?
        }
        Format::Json => json_bytes(&EvolveOutput {
            parameters: a.physics.echo(),
            tmax: a.tmax,
            samples: n,
            source: a.source,
            trace: rows,
        })?,
    };
    emit(a.out.output.as_deref(), &bytes)
}

#[derive(Serialize)]
struct AxisOutput<'a> {
    #[serde(flatten)]
    spec: &'a AxisSpec,
    values: &'a [f64],
}

#[derive(Serialize)]
struct SweepOutput<'a> {
    parameters: Echo,
    #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
    time: Option<f64>,
    source: SourceArg,
    axis1: AxisOutput<'a>,
    axis2: AxisOutput<'a>,
    /// Row-major: `values[i][j]` is at `(axis1.values[i], axis2.values[j])`.
    values: Vec<&'a [f64]>,
}

pub fn sweep(a: &SweepArgs, execution: Execution) -> Result<(), CliError> {
    let (ax1, ax2) = a.axis_specs()?;
    let source = single_source(a.source, "sweep")?;
    let has_t = ax1.name == analysis::AxisName::T || ax2.name == analysis::AxisName::T;
    let t = match (has_t, a.time) {
        (true, None) => 0.0,
        (true, Some(_)) => return Err(CliError::Config("--time conflicts with a T axis".into())),
        (false, Some(t)) if t.is_finite() && t >= 0.0 => t,
        (false, Some(t)) => return Err(CliError::Config(format!("--time must be finite and >= 0, got {t}"))),
        (false, None) => return Err(CliError::Config("--time is required when neither axis is T".into())),
    };
    let base = SweepBase { params: a.physics.params()?, initial: a.physics.initial_state()?, t };
    let s = settings(&a.physics, execution)?;
    let grid = analysis::sweep(&ax1, &ax2, &base, source, &s)?;

    let bytes = match a.format {
        Format::Csv => {
            let (n1, n2) = (ax1.name.to_string(), ax2.name.to_string());
            let rows = grid.axis1_values.iter().enumerate().flat_map(|(i, &x)| {
                let grid = &grid;
                grid.axis2_values.iter().enumerate().map(move |(j, &y)| vec![num(x), num(y), num(grid.get(i, j))])
            });
            csv_bytes(&[n1.as_str(), n2.as_str(), "C"], rows)?
        }
        Format::Json => json_bytes(&SweepOutput {
            parameters: a.physics.echo(),
            time: (!has_t).then_some(t),
            source: a.source,
            axis1: AxisOutput { spec: &grid.axis1, values: &grid.axis1_values },
            axis2: AxisOutput { spec: &grid.axis2, values: &grid.axis2_values },
            values: grid.rows().collect(),
        })?,
    };
    emit(a.out.output.as_deref(), &bytes)
}

#[derive(Serialize)]
struct SdeOutput {
    parameters: Echo,
    tmax: f64,
    samples: usize,
    source: SourceArg,
    #[serde(flatten)]
    report: SdeReport,
}

pub fn sde(a: &SdeArgs, execution: Execution) -> Result<(), CliError> {
    let params = a.physics.params()?;
    let initial = a.physics.initial_state()?;
    let n = samples_for(a.tmax, a.samples)?;
    let source = single_source(a.source, "sde")?;
    if !(a.tol.is_finite() && a.tol > 0.0) {
        return Err(CliError::Config(format!("--tol must be finite and > 0, got {}", a.tol)));
    }
    let s = settings(&a.physics, execution)?;
    let tr = analysis::trace(&params, &initial, a.tmax, n, source, &s)?;
    let report = detect_sde(&tr, a.tol)?;
    let bytes =
        json_bytes(&SdeOutput { parameters: a.physics.echo(), tmax: a.tmax, samples: n, source: a.source, report })?;
    emit(a.out.output.as_deref(), &bytes)
}

fn describe(rep: &ValidationReport) -> String {
    let mut lines = vec![format!(
        "{} cells, max |C_closed - C_oracle| = {:.3e} (limit {:.0e})",
        rep.cells.len(),
        rep.max_deviation,
        rep.tolerance
    )];
    for c in rep.failing_cells() {
        lines.push(format!("  FAIL cell {}: max deviation {:.3e} at T={:.4}", c.label(), c.max_deviation, c.worst_t));
    }
    for i in &rep.invariants {
        let at = i.location.as_deref().map(|l| format!(" ({l})")).unwrap_or_default();
        lines.push(format!(
            "  {} {}: worst {:.3e}, limit {:.0e}{at}",
            if i.passed { "ok  " } else { "FAIL" },
            i.name,
            i.worst,
            i.limit
        ));
    }
    lines.push(if rep.passed { "validation passed".into() } else { "validation FAILED".into() });
    lines.join("\n")
}

pub fn validate(a: &ValidateArgs, execution: Execution) -> Result<(), CliError> {
    let cfg = ValidationConfig {
        n_samples: a.samples,
        t_max: 5.0 * PI,
        dt: a.dt,
        normalization: if a.renormalize { Normalization::Renormalized } else { Normalization::Unnormalized },
        mutation: a.inject_eta_sign_error.then_some(Mutation::EtaSignError),
        ..Default::default()
    };
    let rep = run_validation(&cfg, execution)?;
    eprintln!("{}", describe(&rep));
    emit(a.out.output.as_deref(), &json_bytes(&rep)?)?;
    if rep.passed {
        Ok(())
    } else {
        let first = rep
            .failing_cells()
            .next()
            .map(|c| format!("cell {}", c.label()))
            .or_else(|| rep.failing_invariants().next().map(|i| format!("invariant `{}`", i.name)))
            .unwrap_or_default();
        Err(CliError::Validation(format!("first failure: {first}")))
    }
}
