//! Grid sweeps. Rows come back in lexicographic grid order (first axis outermost) no
//! matter how the points were scheduled.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use super::{ground_negativity, linspace, logspace, maximize_negativity, OptimizeError, SearchConfig};
use crate::exec::Executor;
use crate::model::{ModelParams, UnitConvention};
use crate::states::{ground_state, reduce_thermal, TieRule};
use crate::thermal::{quantum_mutual_information, thermal_concurrence, thermal_qmi, wootters_concurrence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepKind {
    /// Optimal couplings and `N_max` over the `(ε₁, ε₂)` plane.
    #[serde(rename = "fig2")]
    Fig2,
    /// Negativity over the `(ε₁, ε₂)` plane at fixed `λ₁ = λ₂`.
    #[serde(rename = "fig2sup")]
    Fig2Sup,
    /// Negativity against the coupling for small dot energies.
    #[serde(rename = "fig4")]
    Fig4,
    /// Negativity against `ε₁ = ε₂` at fixed couplings.
    #[serde(rename = "fig5-negativity")]
    Fig5Negativity,
    /// Thermal mutual information (and concurrence) of the special set over `(λ, ω)`.
    #[serde(rename = "fig5-qmi")]
    Fig5Qmi,
    #[serde(rename = "custom")]
    Custom,
}

impl SweepKind {
    pub const ALL: [SweepKind; 6] = [
        SweepKind::Fig2,
        SweepKind::Fig2Sup,
        SweepKind::Fig4,
        SweepKind::Fig5Negativity,
        SweepKind::Fig5Qmi,
        SweepKind::Custom,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SweepKind::Fig2 => "fig2",
            SweepKind::Fig2Sup => "fig2sup",
            SweepKind::Fig4 => "fig4",
            SweepKind::Fig5Negativity => "fig5-negativity",
            SweepKind::Fig5Qmi => "fig5-qmi",
            SweepKind::Custom => "custom",
        }
    }

    fn allows(self, p: AxisParam) -> bool {
        use AxisParam::*;
        match self {
            SweepKind::Fig2 => matches!(p, EpsM | Omega | Eps1 | Eps2 | Eps),
            SweepKind::Fig2Sup | SweepKind::Fig4 | SweepKind::Fig5Negativity => p != Temperature,
            SweepKind::Fig5Qmi => matches!(p, Omega | Lam | Temperature),
            SweepKind::Custom => true,
        }
    }
}

impl fmt::Display for SweepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SweepKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        SweepKind::ALL
            .into_iter()
            .find(|k| k.label() == s)
            .ok_or_else(|| format!("unknown sweep kind `{s}`"))
    }
}

/// Parameter driven by one grid axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxisParam {
    EpsM,
    /// Sets `ε_M = 2ω`.
    Omega,
    Eps1,
    Eps2,
    /// Sets `ε₁ = ε₂`.
    Eps,
    Lam1,
    Lam2,
    /// Sets `λ₁ = λ₂`; for the special set, `λ₁ = −λ₂ = √2λ`.
    Lam,
    Temperature,
}

impl AxisParam {
    pub const ALL: [AxisParam; 9] = [
        AxisParam::EpsM,
        AxisParam::Omega,
        AxisParam::Eps1,
        AxisParam::Eps2,
        AxisParam::Eps,
        AxisParam::Lam1,
        AxisParam::Lam2,
        AxisParam::Lam,
        AxisParam::Temperature,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxisParam::EpsM => "eps_m",
            AxisParam::Omega => "omega",
            AxisParam::Eps1 => "eps1",
            AxisParam::Eps2 => "eps2",
            AxisParam::Eps => "eps",
            AxisParam::Lam1 => "lam1",
            AxisParam::Lam2 => "lam2",
            AxisParam::Lam => "lam",
            AxisParam::Temperature => "temperature",
        }
    }

    fn conflicts(self, other: AxisParam) -> bool {
        use AxisParam::*;
        self == other
            || matches!(
                (self, other),
                (Eps, Eps1)
                    | (Eps1, Eps)
                    | (Eps, Eps2)
                    | (Eps2, Eps)
                    | (Lam, Lam1)
                    | (Lam1, Lam)
                    | (Lam, Lam2)
                    | (Lam2, Lam)
                    | (EpsM, Omega)
                    | (Omega, EpsM)
            )
    }
}

impl FromStr for AxisParam {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        AxisParam::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown axis parameter `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub param: AxisParam,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(param: AxisParam, values: Vec<f64>) -> Result<Self, OptimizeError> {
        if values.is_empty() {
            return Err(OptimizeError::Grid(format!("axis `{}` is empty", param.name())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(OptimizeError::Grid(format!(
                "axis `{}` has a non-finite value",
                param.name()
            )));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(OptimizeError::Grid(format!(
                "axis `{}` is not strictly increasing",
                param.name()
            )));
        }
        Ok(Self { param, values })
    }

    pub fn linspace(param: AxisParam, lo: f64, hi: f64, n: usize) -> Result<Self, OptimizeError> {
        Self::new(param, linspace(lo, hi, n))
    }

    pub fn logspace(param: AxisParam, lo: f64, hi: f64, n: usize) -> Result<Self, OptimizeError> {
        if !(lo > 0.0) {
            return Err(OptimizeError::Grid(format!(
                "log axis `{}` needs a positive lower bound",
                param.name()
            )));
        }
        Self::new(param, logspace(lo, hi, n))
    }
}

impl FromStr for Axis {
    type Err = String;

    /// `name=lo:hi:n`, `name=lo:hi:n:log` or `name=v1,v2,...`.
    fn from_str(s: &str) -> Result<Self, String> {
        let (name, body) = s
            .split_once('=')
            .ok_or_else(|| format!("axis `{s}` must look like name=lo:hi:n or name=v1,v2"))?;
        let param: AxisParam = name.trim().parse()?;
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("malformed number `{t}` in axis `{s}`"))
        };
        let axis = if body.contains(':') {
            let parts: Vec<&str> = body.split(':').collect();
            let (lo, hi) = match parts.as_slice() {
                [lo, hi, _] | [lo, hi, _, _] => (num(lo)?, num(hi)?),
                _ => return Err(format!("axis `{s}` must be lo:hi:n[:log]")),
            };
            let n: usize = parts[2]
                .trim()
                .parse()
                .map_err(|_| format!("malformed point count in axis `{s}`"))?;
            match parts.get(3).map(|t| t.trim()) {
                None | Some("lin") => Axis::linspace(param, lo, hi, n),
                Some("log") => Axis::logspace(param, lo, hi, n),
                Some(other) => return Err(format!("unknown spacing `{other}` in axis `{s}`")),
            }
        } else {
            let values = body.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
            Axis::new(param, values)
        };
        axis.map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub kind: SweepKind,
    pub axes: Vec<Axis>,
    /// Values for every parameter no axis drives.
    pub base: ModelParams,
    pub units: UnitConvention,
    pub tie_rule: TieRule,
    /// Used by `fig2` only.
    pub search: SearchConfig,
}

impl SweepSpec {
    pub fn new(kind: SweepKind, axes: Vec<Axis>, units: UnitConvention) -> Self {
        let base = ModelParams {
            eps_m: units.eps_m(),
            eps1: 0.0,
            eps2: 0.0,
            lam1: 0.0,
            lam2: 0.0,
            temperature: 0.0,
        };
        Self {
            kind,
            axes,
            base,
            units,
            tie_rule: TieRule::EvenFirst,
            search: SearchConfig::for_omega(base.omega()),
        }
    }

    pub fn with_base(mut self, base: ModelParams) -> Self {
        self.base = base;
        self
    }

    pub fn row_count(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    pub fn validate(&self) -> Result<(), OptimizeError> {
        if self.axes.is_empty() {
            return Err(OptimizeError::Grid("at least one axis is required".into()));
        }
        for (i, a) in self.axes.iter().enumerate() {
            Axis::new(a.param, a.values.clone())?;
            if !self.kind.allows(a.param) {
                return Err(OptimizeError::Grid(format!(
                    "axis `{}` is not valid for sweep kind `{}`",
                    a.param.name(),
                    self.kind
                )));
            }
            if let Some(b) = self.axes[..i].iter().find(|b| b.param.conflicts(a.param)) {
                return Err(OptimizeError::Grid(format!(
                    "axes `{}` and `{}` drive the same parameter",
                    b.param.name(),
                    a.param.name()
                )));
            }
        }
        self.base.validate()?;
        if self.kind == SweepKind::Fig2 {
            self.search.validate()?;
        }
        if self.kind == SweepKind::Fig5Qmi {
            let temps = self
                .axes
                .iter()
                .find(|a| a.param == AxisParam::Temperature)
                .map(|a| a.values.clone())
                .unwrap_or_else(|| vec![self.base.temperature]);
            if temps.iter().any(|&t| !(t > 0.0)) {
                return Err(OptimizeError::Grid("fig5-qmi needs positive temperatures".into()));
            }
            let omegas = self
                .axes
                .iter()
                .find(|a| a.param == AxisParam::Omega)
                .map(|a| a.values.clone())
                .unwrap_or_else(|| vec![self.base.omega()]);
            if omegas.iter().any(|&w| !(w > 0.0)) {
                return Err(OptimizeError::Grid("fig5-qmi needs positive omega".into()));
            }
            let lams = self
                .axes
                .iter()
                .find(|a| a.param == AxisParam::Lam)
                .map(|a| a.values.clone())
                .unwrap_or_default();
            if lams.iter().any(|&l| l < 0.0) {
                return Err(OptimizeError::Grid("fig5-qmi needs lam >= 0".into()));
            }
        }
        Ok(())
    }

    /// Parameter sets in lexicographic grid order.
    pub fn points(&self) -> Vec<ModelParams> {
        let mut out = Vec::with_capacity(self.row_count());
        let mut idx = vec![0usize; self.axes.len()];
        loop {
            let mut p = self.base;
            if self.kind == SweepKind::Fig5Qmi {
                p.eps1 = 0.0;
                p.eps2 = 0.0;
                // base couplings follow the special set too
                p.lam2 = -p.lam1;
            }
            for (axis, &i) in self.axes.iter().zip(&idx) {
                self.assign(&mut p, axis.param, axis.values[i]);
            }
            out.push(p);
            // odometer, last axis fastest
            let mut k = self.axes.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < self.axes[k].values.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    fn assign(&self, p: &mut ModelParams, param: AxisParam, v: f64) {
        match param {
            AxisParam::EpsM => p.eps_m = v,
            AxisParam::Omega => p.eps_m = 2.0 * v,
            AxisParam::Eps1 => p.eps1 = v,
            AxisParam::Eps2 => p.eps2 = v,
            AxisParam::Eps => {
                p.eps1 = v;
                p.eps2 = v;
            }
            AxisParam::Lam1 => p.lam1 = v,
            AxisParam::Lam2 => p.lam2 = v,
            AxisParam::Lam if self.kind == SweepKind::Fig5Qmi => {
                p.lam1 = std::f64::consts::SQRT_2 * v;
                p.lam2 = -p.lam1;
            }
            AxisParam::Lam => {
                p.lam1 = v;
                p.lam2 = v;
            }
            AxisParam::Temperature => p.temperature = v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub params: ModelParams,
    pub negativity: Option<f64>,
    pub concurrence: Option<f64>,
    pub qmi: Option<f64>,
    /// Closed-form mutual information from the printed Bell weights (special set only).
    pub qmi_closed_form: Option<f64>,
    pub tie_rule: TieRule,
    pub degenerate: bool,
    /// Set for optimizer rows only.
    pub boundary_hit: Option<bool>,
}

impl SweepRow {
    fn new(params: ModelParams, tie_rule: TieRule, degenerate: bool) -> Self {
        Self {
            params,
            negativity: None,
            concurrence: None,
            qmi: None,
            qmi_closed_form: None,
            tie_rule,
            degenerate,
            boundary_hit: None,
        }
    }
}

/// Special-set `(ω, λ)` of a parameter set produced by a `fig5-qmi` grid.
pub fn special_set_coordinates(p: &ModelParams) -> (f64, f64) {
    (p.omega(), p.lam1 / std::f64::consts::SQRT_2)
}

/// Evaluates one grid point for a sweep kind.
pub fn evaluate_point(
    kind: SweepKind,
    p: &ModelParams,
    tie_rule: TieRule,
    search: &SearchConfig,
) -> Result<SweepRow, OptimizeError> {
    p.validate()?;
    match kind {
        SweepKind::Fig2 => {
            let r = maximize_negativity(p.eps1, p.eps2, p.eps_m, search)?;
            let mut row = SweepRow::new(p.with_couplings(r.lam1, r.lam2), search.tie_rule, r.degenerate);
            row.negativity = Some(r.n_max);
            row.boundary_hit = Some(r.boundary_hit);
            Ok(row)
        }
        SweepKind::Fig2Sup | SweepKind::Fig4 | SweepKind::Fig5Negativity => {
            let n = ground_negativity(p, tie_rule)?;
            let mut row = SweepRow::new(*p, tie_rule, n.degenerate);
            row.negativity = Some(n.negativity);
            Ok(row)
        }
        SweepKind::Fig5Qmi => {
            let (omega, lam) = special_set_coordinates(p);
            let degenerate = ground_state(p, tie_rule)?.degenerate;
            let q = thermal_qmi(omega, lam, p.temperature)?;
            let c = thermal_concurrence(omega, lam, p.temperature)?;
            let mut row = SweepRow::new(*p, tie_rule, degenerate);
            row.qmi = Some(q.value);
            row.qmi_closed_form = Some(q.closed_form);
            row.concurrence = Some(c.value);
            Ok(row)
        }
        SweepKind::Custom => {
            let n = ground_negativity(p, tie_rule)?;
            let mut row = SweepRow::new(*p, tie_rule, n.degenerate);
            row.negativity = Some(n.negativity);
            if p.temperature > 0.0 {
                let rho = reduce_thermal(p)?;
                row.concurrence = Some(wootters_concurrence(&rho)?);
                row.qmi = Some(quantum_mutual_information(&rho)?);
            }
            Ok(row)
        }
    }
}

/// Evaluates every grid point. The spec is validated before any evaluation.
pub fn sweep(spec: &SweepSpec, executor: Executor) -> Result<Vec<SweepRow>, OptimizeError> {
    spec.validate()?;
    let points = spec.points();
    let search = SearchConfig {
        tie_rule: spec.tie_rule,
        ..spec.search
    };
    executor
        .map(&points, |p| evaluate_point(spec.kind, p, spec.tie_rule, &search))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_grid_cardinality_and_order() {
        let spec = SweepSpec::new(
            SweepKind::Custom,
            vec![
                Axis::new(AxisParam::Eps1, vec![0.0, 0.5]).unwrap(),
                Axis::new(AxisParam::Lam, vec![0.1, 0.2]).unwrap(),
            ],
            UnitConvention::Omega,
        );
        let rows = sweep(&spec, Executor::Sequential).unwrap();
        assert_eq!(rows.len(), 4);
        let coords: Vec<(f64, f64)> = rows.iter().map(|r| (r.params.eps1, r.params.lam1)).collect();
        assert_eq!(coords, vec![(0.0, 0.1), (0.0, 0.2), (0.5, 0.1), (0.5, 0.2)]);
        assert!(rows.iter().all(|r| r.concurrence.is_none()));
    }

    #[test]
    fn invalid_axes_are_rejected() {
        assert!(Axis::new(AxisParam::Eps1, vec![]).is_err());
        assert!(Axis::new(AxisParam::Eps1, vec![0.2, 0.1]).is_err());
        assert!(Axis::new(AxisParam::Eps1, vec![0.1, 0.1]).is_err());
        let spec = SweepSpec::new(
            SweepKind::Fig4,
            vec![
                Axis::new(AxisParam::Eps, vec![0.1]).unwrap(),
                Axis::new(AxisParam::Eps1, vec![0.1]).unwrap(),
            ],
            UnitConvention::Omega,
        );
        assert!(matches!(
            sweep(&spec, Executor::Sequential),
            Err(OptimizeError::Grid(_))
        ));
        let spec = SweepSpec::new(
            SweepKind::Fig5Qmi,
            vec![Axis::new(AxisParam::Lam, vec![0.1]).unwrap()],
            UnitConvention::Omega,
        );
        // base temperature is zero
        assert!(sweep(&spec, Executor::Sequential).is_err());
    }

    #[test]
    fn axis_parsing() {
        let a: Axis = "eps1=0:1:3".parse().unwrap();
        assert_eq!(a.values, vec![0.0, 0.5, 1.0]);
        let a: Axis = "lam=0.1,0.2,0.4".parse().unwrap();
        assert_eq!(a.param, AxisParam::Lam);
        let a: Axis = "lam=0.01:1:3:log".parse().unwrap();
        assert!((a.values[1] - 0.1).abs() < 1e-15);
        assert!("bogus=1,2".parse::<Axis>().is_err());
        assert!("eps1=1,x".parse::<Axis>().is_err());
        assert!("eps1=0:1".parse::<Axis>().is_err());
    }

    #[test]
    fn custom_thermal_measures() {
        let spec = SweepSpec::new(
            SweepKind::Custom,
            vec![Axis::new(AxisParam::Temperature, vec![0.5, 1.0]).unwrap()],
            UnitConvention::Omega,
        )
        .with_base(ModelParams::new(2.0, 0.1, 0.1, 0.5, 0.5, 0.0).unwrap());
        let rows = sweep(&spec, Executor::Sequential).unwrap();
        assert!(rows.iter().all(|r| r.qmi.is_some() && r.concurrence.is_some()));
    }

    #[test]
    fn fig5_qmi_uses_special_set() {
        let spec = SweepSpec::new(
            SweepKind::Fig5Qmi,
            vec![
                Axis::new(AxisParam::Temperature, vec![1.0]).unwrap(),
                Axis::new(AxisParam::Lam, vec![0.0, 0.5]).unwrap(),
                Axis::new(AxisParam::Omega, vec![1.0]).unwrap(),
            ],
            UnitConvention::Omega,
        );
        let rows = sweep(&spec, Executor::Sequential).unwrap();
        assert_eq!(rows[0].qmi, Some(0.0));
        let p = rows[1].params;
        assert_eq!((p.eps1, p.eps2, p.eps_m), (0.0, 0.0, 2.0));
        assert_eq!(p.lam2, -p.lam1);
        assert!(rows.iter().all(|r| r.degenerate));
    }
}
