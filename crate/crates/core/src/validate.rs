//! Cross-check of the closed form against the oracle on a parameter grid,
//! together with the structural invariants both paths must satisfy.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

use serde::Serialize;

use crate::closed_form;
use crate::exec::Execution;
use crate::model::{Family, InitialState, ModelParams, Normalization, SpectralQuantities};
use crate::oracle::{self, build_sector, Frame, Rk4, StateVector};
use crate::{Error, Result};

/// Deliberate defects the validator must catch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    /// Closed form evaluated with `eta^2 = xi^2 + 16`.
    EtaSignError,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationConfig {
    pub families: Vec<Family>,
    pub kappas: Vec<f64>,
    pub deltas: Vec<f64>,
    pub alphas: Vec<f64>,
    pub n_samples: usize,
    pub t_max: f64,
    pub dt: f64,
    pub frame: Frame,
    pub normalization: Normalization,
    /// Largest accepted `|C_closed - C_oracle|` per cell.
    pub tolerance: f64,
    pub mutation: Option<Mutation>,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            families: vec![Family::Psi, Family::Phi],
            kappas: vec![0.0, 0.5, 1.0],
            deltas: vec![0.0, 1.0, -1.0, 3.0, -3.0, 5.0, -5.0],
            alphas: vec![FRAC_PI_6, FRAC_PI_4, FRAC_PI_3],
            n_samples: 2000,
            t_max: 5.0 * PI,
            dt: oracle::DEFAULT_STEP,
            frame: Frame::Interaction,
            normalization: Normalization::Unnormalized,
            tolerance: 1e-6,
            mutation: None,
        }
    }
}

impl ValidationConfig {
    fn check(&self) -> Result<()> {
        Rk4::new(self.dt)?;
        if self.n_samples < 2 {
            return Err(Error::InvalidArgument(format!("need at least 2 samples, got {}", self.n_samples)));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(Error::InvalidArgument(format!("T_max must be finite and > 0, got {}", self.t_max)));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!("tolerance must be finite and > 0, got {}", self.tolerance)));
        }
        if self.families.is_empty() || self.kappas.is_empty() || self.deltas.is_empty() || self.alphas.is_empty() {
            return Err(Error::InvalidArgument("validation grid is empty".into()));
        }
        Ok(())
    }

    fn spectral(&self, params: &ModelParams) -> SpectralQuantities {
        let s = params.spectral();
        match self.mutation {
            None => s,
            Some(Mutation::EtaSignError) => SpectralQuantities {
                eta_plus: (s.xi_plus * s.xi_plus + 16.0).sqrt(),
                eta_minus: (s.xi_minus * s.xi_minus + 16.0).sqrt(),
                ..s
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellResult {
    pub family: Family,
    pub kappa: f64,
    pub delta: f64,
    pub alpha: f64,
    pub max_deviation: f64,
    /// Sample time of the largest deviation.
    #[serde(rename = "worst_T")]
    pub worst_t: f64,
    pub passed: bool,
}

impl CellResult {
    pub fn label(&self) -> String {
        format!("{} kappa={} delta={} alpha={:.6}", self.family, self.kappa, self.delta, self.alpha)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantResult {
    pub name: &'static str,
    pub worst: f64,
    pub limit: f64,
    pub passed: bool,
    /// Cell that produced `worst`.
    pub location: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub cells: Vec<CellResult>,
    pub invariants: Vec<InvariantResult>,
    pub tolerance: f64,
    pub max_deviation: f64,
    pub mutation: Option<Mutation>,
    pub passed: bool,
}

impl ValidationReport {
    pub fn failing_cells(&self) -> impl Iterator<Item = &CellResult> {
        self.cells.iter().filter(|c| !c.passed)
    }

    pub fn failing_invariants(&self) -> impl Iterator<Item = &InvariantResult> {
        self.invariants.iter().filter(|i| !i.passed)
    }
}

/// Worst values of each invariant within one cell.
#[derive(Debug, Clone, Copy, Default)]
struct CellInvariants {
    lossless_norm_drift: f64,
    norm_step_increase: f64,
    wootters_vs_x_state: f64,
    branch_flip: f64,
    detuning_mirror: f64,
    psi_negativity: f64,
}

const INVARIANTS: [(&str, f64); 6] = [
    ("lossless norm conservation", 1e-9),
    ("norm never increases", 1e-12),
    ("Wootters vs X-state concurrence", 1e-10),
    ("eta branch invariance", 1e-10),
    ("detuning symmetry", 1e-9),
    ("Psi raw concurrence non-negative", 1e-12),
];

impl CellInvariants {
    fn as_array(&self) -> [f64; 6] {
        [
            self.lossless_norm_drift,
            self.norm_step_increase,
            self.wootters_vs_x_state,
            self.branch_flip,
            self.detuning_mirror,
            self.psi_negativity,
        ]
    }
}

fn run_cell(
    cfg: &ValidationConfig,
    family: Family,
    kappa: f64,
    delta: f64,
    alpha: f64,
) -> Result<(CellResult, CellInvariants)> {
    let params = ModelParams::scaled(kappa, delta)?;
    let mirror = ModelParams::scaled(kappa, -delta)?;
    let initial = InitialState::new(family, alpha)?;
    let spectral = cfg.spectral(&params);
    let mirror_spectral = cfg.spectral(&mirror);
    let sector = build_sector(&params, family, cfg.frame)?;
    let rk = Rk4::new(cfg.dt)?;

    let step = cfg.t_max / (cfg.n_samples - 1) as f64;
    let mut inv = CellInvariants::default();
    let mut state = StateVector::initial(&initial);
    let mut prev_norm = state.norm_sqr();
    let (mut max_dev, mut worst_t) = (0.0f64, 0.0);

    for i in 0..cfg.n_samples {
        let t = if i + 1 == cfg.n_samples { cfg.t_max } else { step * i as f64 };
        state = rk.propagate(&sector, &state, t, |_, y| {
            let n = y.norm_squared();
            inv.norm_step_increase = inv.norm_step_increase.max(n - prev_norm);
            prev_norm = n;
        })?;
        if kappa == 0.0 {
            inv.lossless_norm_drift = inv.lossless_norm_drift.max((state.norm_sqr() - 1.0).abs());
        }

        let rho = oracle::partial_trace_fields(&state);
        let w = oracle::wootters_concurrence(&rho)?;
        let x = oracle::x_state_concurrence(&rho)?;
        inv.wootters_vs_x_state = inv.wootters_vs_x_state.max((w.raw - x.raw).abs());
        let c_oracle = match cfg.normalization {
            Normalization::Unnormalized => w.value(),
            Normalization::Renormalized => oracle::wootters_concurrence(&rho.renormalized()?)?.value(),
        };

        let closed = closed_form::concurrence_from(&spectral, &initial, t, cfg.normalization)?;
        let dev = (closed.value - c_oracle).abs();
        if !(dev <= max_dev) {
            max_dev = dev;
            worst_t = t;
        }
        for (fp, fm) in [(true, false), (false, true), (true, true)] {
            let flipped =
                closed_form::concurrence_from(&spectral.with_flipped_eta(fp, fm), &initial, t, cfg.normalization)?;
            inv.branch_flip = inv.branch_flip.max((flipped.value - closed.value).abs());
        }
        let mirrored = closed_form::concurrence_from(&mirror_spectral, &initial, t, cfg.normalization)?;
        inv.detuning_mirror = inv.detuning_mirror.max((mirrored.value - closed.value).abs());
        if family == Family::Psi {
            inv.psi_negativity = inv.psi_negativity.max(-closed.raw);
        }
    }
    let cell =
        CellResult { family, kappa, delta, alpha, max_deviation: max_dev, worst_t, passed: max_dev < cfg.tolerance };
    Ok((cell, inv))
}

/// Runs every cell of the grid. A failing comparison is reported, not
/// returned as an error; errors mean a cell could not be evaluated at all.
pub fn run_validation(cfg: &ValidationConfig, execution: Execution) -> Result<ValidationReport> {
    cfg.check()?;
    let mut grid = Vec::new();
    for &f in &cfg.families {
        for &k in &cfg.kappas {
            for &d in &cfg.deltas {
                for &a in &cfg.alphas {
                    grid.push((f, k, d, a));
                }
            }
        }
    }
    let results = execution.try_map(grid.len(), |i| {
        let (f, k, d, a) = grid[i];
        run_cell(cfg, f, k, d, a)
    })?;

    let mut invariants: Vec<InvariantResult> = INVARIANTS
        .iter()
        .map(|&(name, limit)| InvariantResult { name, worst: 0.0, limit, passed: true, location: None })
        .collect();
    for (cell, inv) in &results {
        for (slot, value) in invariants.iter_mut().zip(inv.as_array()) {
            if value > slot.worst || value.is_nan() {
                slot.worst = value;
                slot.location = Some(cell.label());
            }
        }
    }
    for slot in &mut invariants {
        slot.passed = slot.worst <= slot.limit;
    }

    let cells: Vec<CellResult> = results.into_iter().map(|(c, _)| c).collect();
    let max_deviation = cells.iter().map(|c| c.max_deviation).fold(0.0, f64::max);
    let passed = cells.iter().all(|c| c.passed) && invariants.iter().all(|i| i.passed);
    Ok(ValidationReport { cells, invariants, tolerance: cfg.tolerance, max_deviation, mutation: cfg.mutation, passed })
}
