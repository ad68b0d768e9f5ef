//! Negativity maximization over the dot–wire couplings, and grid sweeps.

pub mod figures;
pub mod search;
pub mod sweep;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::LinalgError;
use crate::model::{ModelParams, ParamError};
use crate::negativity::logarithmic_negativity;
use crate::states::{ground_state, reduce_over_majorana, StateError, TieRule};
use crate::thermal::ThermalError;
use search::{golden_section_max, nelder_mead_max, NelderMeadOptions};

pub use sweep::{sweep, Axis, AxisParam, SweepKind, SweepRow, SweepSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OptimizeError {
    #[error("invalid search config: {0}")]
    Config(String),
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Thermal(#[from] ThermalError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// `λ₁ = λ₂`, one-dimensional search.
    Symmetric,
    /// `λ₁`, `λ₂` searched jointly.
    Independent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Closed interval searched for each coupling.
    pub lambda_domain: (f64, f64),
    /// Coarse grid points per axis (log-spaced when the domain excludes zero).
    pub coarse_points: usize,
    pub refine_tolerance: f64,
    pub mode: SearchMode,
    /// Initial Nelder–Mead simplex edge as a fraction of the domain width.
    pub simplex_scale: f64,
    pub max_iterations: usize,
    pub tie_rule: TieRule,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            lambda_domain: (1e-3, 5.0),
            coarse_points: 25,
            refine_tolerance: 1e-7,
            mode: SearchMode::Independent,
            simplex_scale: 0.05,
            max_iterations: 2000,
            tie_rule: TieRule::EvenFirst,
        }
    }
}

impl SearchConfig {
    /// Default settings with the λ domain `[10⁻³ω, 5ω]` expressed in absolute energy.
    pub fn for_omega(omega: f64) -> Self {
        Self {
            lambda_domain: (1e-3 * omega, 5.0 * omega),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), OptimizeError> {
        let (lo, hi) = self.lambda_domain;
        if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && lo < hi) {
            return Err(OptimizeError::Config(format!(
                "lambda domain must satisfy 0 <= lo < hi, got [{lo}, {hi}]"
            )));
        }
        if self.coarse_points < 2 {
            return Err(OptimizeError::Config("coarse_points must be at least 2".into()));
        }
        if !(self.refine_tolerance > 0.0) {
            return Err(OptimizeError::Config("refine_tolerance must be positive".into()));
        }
        if !(self.simplex_scale > 0.0) {
            return Err(OptimizeError::Config("simplex_scale must be positive".into()));
        }
        Ok(())
    }

    pub fn coarse_grid(&self) -> Vec<f64> {
        let (lo, hi) = self.lambda_domain;
        let n = self.coarse_points;
        if lo > 0.0 {
            logspace(lo, hi, n)
        } else {
            linspace(lo, hi, n)
        }
    }
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    linspace(a, b, n)
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                x.exp()
            }
        })
        .collect()
}

/// Ground-state logarithmic negativity and whether the ground state was degenerate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityPoint {
    pub negativity: f64,
    pub degenerate: bool,
}

pub fn ground_negativity(p: &ModelParams, tie_rule: TieRule) -> Result<NegativityPoint, StateError> {
    let g = ground_state(p, tie_rule)?;
    let rho = reduce_over_majorana(g.primary());
    Ok(NegativityPoint {
        negativity: logarithmic_negativity(&rho)?,
        degenerate: g.degenerate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub lam1: f64,
    pub lam2: f64,
    pub n_max: f64,
    pub boundary_hit: bool,
    pub evaluations: usize,
    /// Ground state at the optimum was degenerate (tie rule applied).
    pub degenerate: bool,
}

/// Maximizes the ground-state negativity over the couplings at fixed energies.
///
/// A coarse scan over the λ domain picks the start; the symmetric mode then runs a
/// golden-section search between the neighbouring grid points, the independent mode a
/// box-constrained Nelder–Mead. Failed evaluations count as `−∞` and never abort the
/// search.
pub fn maximize_negativity(
    eps1: f64,
    eps2: f64,
    eps_m: f64,
    cfg: &SearchConfig,
) -> Result<OptimizationResult, OptimizeError> {
    cfg.validate()?;
    let base = ModelParams::new(eps_m, eps1, eps2, 0.0, 0.0, 0.0)?;
    let objective = |l1: f64, l2: f64| {
        ground_negativity(&base.with_couplings(l1, l2), cfg.tie_rule)
            .map(|p| p.negativity)
            .unwrap_or(f64::NEG_INFINITY)
    };
    let grid = cfg.coarse_grid();
    let (lo, hi) = cfg.lambda_domain;
    let mut evaluations = 0;

    let (lam1, lam2) = match cfg.mode {
        SearchMode::Symmetric => {
            let values: Vec<f64> = grid.iter().map(|&l| objective(l, l)).collect();
            evaluations += values.len();
            let k = argmax(&values);
            let left = grid[k.saturating_sub(1)];
            let right = grid[(k + 1).min(grid.len() - 1)];
            let m = golden_section_max(|l| objective(l, l), left, right, cfg.refine_tolerance);
            evaluations += m.evaluations;
            if m.value >= values[k] {
                (m.x, m.x)
            } else {
                (grid[k], grid[k])
            }
        }
        SearchMode::Independent => {
            let mut best = (f64::NEG_INFINITY, [grid[0], grid[0]]);
            for &l1 in &grid {
                for &l2 in &grid {
                    let v = objective(l1, l2);
                    evaluations += 1;
                    if v > best.0 {
                        best = (v, [l1, l2]);
                    }
                }
            }
            let opts = NelderMeadOptions {
                initial_step: cfg.simplex_scale * (hi - lo),
                tolerance: cfg.refine_tolerance,
                max_iterations: cfg.max_iterations,
            };
            let m = nelder_mead_max(|x| objective(x[0], x[1]), best.1, [lo, lo], [hi, hi], opts);
            evaluations += m.evaluations;
            if m.value >= best.0 {
                (m.x[0], m.x[1])
            } else {
                (best.1[0], best.1[1])
            }
        }
    };

    let at_opt = ground_negativity(&base.with_couplings(lam1, lam2), cfg.tie_rule)?;
    evaluations += 1;
    let near_edge = |x: f64| x - lo <= cfg.refine_tolerance || hi - x <= cfg.refine_tolerance;
    Ok(OptimizationResult {
        lam1,
        lam2,
        n_max: at_opt.negativity,
        boundary_hit: near_edge(lam1) || near_edge(lam2),
        evaluations,
        degenerate: at_opt.degenerate,
    })
}

/// First index of the largest value.
fn argmax(values: &[f64]) -> usize {
    let mut k = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[k] {
            k = i;
        }
    }
    k
}
