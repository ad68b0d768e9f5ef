//! Canned grids for the figure reproductions.

use std::fmt;
use std::str::FromStr;

use super::sweep::{Axis, AxisParam, SweepKind, SweepSpec};
use super::{linspace, OptimizeError, SearchConfig, SearchMode};
use crate::model::UnitConvention;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig2,
    Fig2Sup,
    Fig4,
    Fig5,
}

/// One data set of a figure, written to `<stem>.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct FigurePanel {
    pub stem: &'static str,
    pub spec: SweepSpec,
}

/// Fixed couplings used by the fixed-λ negativity panels.
pub const PANEL_LAMBDAS: [f64; 3] = [0.2, 0.5, 1.0];
/// Dot energies of the negativity-versus-coupling curves.
pub const FIG4_ENERGIES: [f64; 3] = [0.005, 0.05, 0.25];
pub const FIG5_TEMPERATURES: [f64; 2] = [1.0, 10.0];

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::Fig2, Figure::Fig2Sup, Figure::Fig4, Figure::Fig5];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig2 => "fig2",
            Figure::Fig2Sup => "fig2sup",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
        }
    }

    pub fn units(self) -> UnitConvention {
        match self {
            Figure::Fig2 => UnitConvention::EpsM,
            _ => UnitConvention::Omega,
        }
    }

    pub fn panels(self) -> Result<Vec<FigurePanel>, OptimizeError> {
        let units = self.units();
        let eps_plane = || -> Result<Vec<Axis>, OptimizeError> {
            Ok(vec![
                Axis::new(AxisParam::Eps1, linspace(0.0, 2.0, 41))?,
                Axis::new(AxisParam::Eps2, linspace(0.0, 2.0, 41))?,
            ])
        };
        let panels = match self {
            Figure::Fig2 => {
                let mut spec = SweepSpec::new(SweepKind::Fig2, eps_plane()?, units);
                spec.search = fig2_search(units);
                vec![FigurePanel { stem: "fig2", spec }]
            }
            Figure::Fig2Sup => {
                let mut axes = vec![Axis::new(AxisParam::Lam, PANEL_LAMBDAS.to_vec())?];
                axes.extend(eps_plane()?);
                vec![FigurePanel {
                    stem: "fig2sup",
                    spec: SweepSpec::new(SweepKind::Fig2Sup, axes, units),
                }]
            }
            Figure::Fig4 => {
                let axes = vec![
                    Axis::new(AxisParam::Eps, FIG4_ENERGIES.to_vec())?,
                    Axis::new(AxisParam::Lam, linspace(0.01, 3.0, 300))?,
                ];
                vec![FigurePanel {
                    stem: "fig4",
                    spec: SweepSpec::new(SweepKind::Fig4, axes, units),
                }]
            }
            Figure::Fig5 => {
                let neg = vec![
                    Axis::new(AxisParam::Lam, PANEL_LAMBDAS.to_vec())?,
                    Axis::new(AxisParam::Eps, linspace(0.0, 2.0, 100))?,
                ];
                let qmi = vec![
                    Axis::new(AxisParam::Temperature, FIG5_TEMPERATURES.to_vec())?,
                    Axis::new(AxisParam::Lam, linspace(0.1, 5.0, 50))?,
                    Axis::new(AxisParam::Omega, linspace(0.1, 5.0, 50))?,
                ];
                vec![
                    FigurePanel {
                        stem: "fig5_negativity",
                        spec: SweepSpec::new(SweepKind::Fig5Negativity, neg, units),
                    },
                    FigurePanel {
                        stem: "fig5_qmi",
                        spec: SweepSpec::new(SweepKind::Fig5Qmi, qmi, units),
                    },
                ]
            }
        };
        Ok(panels)
    }
}

/// Independent-coupling search over `[10⁻³ω, 5ω]` with a lighter coarse scan than the
/// default, since every one of the 41×41 cells runs its own search.
pub fn fig2_search(units: UnitConvention) -> SearchConfig {
    SearchConfig {
        mode: SearchMode::Independent,
        coarse_points: 13,
        ..SearchConfig::for_omega(units.eps_m() / 2.0)
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Figure {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Figure::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown figure `{s}` (expected fig2, fig2sup, fig4 or fig5)"))
    }
}
