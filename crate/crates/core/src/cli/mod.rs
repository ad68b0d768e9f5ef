//! Command-line front end.
//!
//! Every command computes all of its results before anything is written, so a failed
//! run never leaves partial output files behind.

pub mod plot;
pub mod table;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::exec::{configure_threads_from_env, Executor};
use crate::linalg::{singular_values, trace_norm, LinalgError};
use crate::model::{ModelParams, ParamError, UnitConvention};
use crate::negativity::{
    fermionic_partial_transpose, logarithmic_negativity, logarithmic_negativity_dot2, negativity_pure_analytic,
    SectorSign,
};
use crate::optimize::figures::Figure;
use crate::optimize::{
    maximize_negativity, sweep, Axis, OptimizationResult, OptimizeError, SearchConfig, SearchMode, SweepKind, SweepRow,
    SweepSpec,
};
use crate::states::{
    ground_state, marginal, reduce_over_majorana, reduce_thermal, DensityMatrix, Dot, Sector, StateError, TieRule,
};
use crate::thermal::{
    closed_form_qmi, low_temperature_concurrence, quantum_mutual_information, special_eigenbasis, thermal_concurrence,
    thermal_dot_state, thermal_qmi, von_neumann_entropy, wootters_roots, ThermalError, ThermalWeights,
};
use table::{csv_bytes, fmt_value, VERSION};

#[derive(Debug, Parser)]
#[command(
    name = "qdwire",
    version,
    about = "Entanglement of two quantum dots coupled through a Majorana wire"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ground-state logarithmic negativity at one parameter point.
    Negativity(PointArgs),
    /// Concurrence at one parameter point (thermal when --temp > 0).
    Concurrence(PointArgs),
    /// Quantum mutual information in bits at one parameter point (thermal when --temp > 0).
    Qmi(PointArgs),
    /// Maximize the negativity over the couplings; prints JSON.
    Optimize(OptimizeArgs),
    /// Evaluate a parameter grid; writes CSV (or JSON).
    Sweep(SweepArgs),
    /// Write the data and a gnuplot script for one figure.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    #[value(name = "eps_m=1", alias = "eps_m")]
    EpsM,
    #[value(name = "omega=1", alias = "omega")]
    Omega,
}

impl From<Units> for UnitConvention {
    fn from(u: Units) -> Self {
        match u {
            Units::EpsM => UnitConvention::EpsM,
            Units::Omega => UnitConvention::Omega,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Tie {
    EvenFirst,
    OddFirst,
    Both,
}

impl From<Tie> for TieRule {
    fn from(t: Tie) -> Self {
        match t {
            Tie::EvenFirst => TieRule::EvenFirst,
            Tie::OddFirst => TieRule::OddFirst,
            Tie::Both => TieRule::Both,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Unit convention; fixes the default Majorana overlap and is recorded in outputs.
    #[arg(long, value_enum, default_value = "omega=1")]
    pub units: Units,
    /// Which ground state to use when the two parity sectors tie.
    #[arg(long, value_enum, default_value = "even-first")]
    pub tie_rule: Tie,
}

/// One parameter point. Energies share one unit; `--eps-m` defaults to the convention.
#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Majorana overlap energy.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "omega")]
    pub eps_m: Option<f64>,
    /// Half the Majorana overlap energy.
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    /// Level of dot 1.
    #[arg(long, allow_negative_numbers = true)]
    pub eps1: Option<f64>,
    /// Level of dot 2.
    #[arg(long, allow_negative_numbers = true)]
    pub eps2: Option<f64>,
    /// Coupling of dot 1 to the wire.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "lam")]
    pub lam1: Option<f64>,
    /// Coupling of dot 2 to the wire.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "lam")]
    pub lam2: Option<f64>,
    /// Sets both couplings; with --special-set, the special-set coupling.
    #[arg(long, allow_negative_numbers = true)]
    pub lam: Option<f64>,
    /// Temperature; 0 selects the ground state.
    #[arg(
        long = "temp",
        alias = "temperature",
        allow_negative_numbers = true,
        default_value_t = 0.0
    )]
    pub temperature: f64,
    /// Use εM = 2ω, ε1 = ε2 = 0, λ1 = −λ2 = √2·λ.
    #[arg(long, conflicts_with_all = ["eps1", "eps2", "lam1", "lam2", "eps_m"])]
    pub special_set: bool,
}

impl PointArgs {
    pub fn units(&self) -> UnitConvention {
        self.common.units.into()
    }

    pub fn eps_m(&self) -> f64 {
        self.eps_m
            .or(self.omega.map(|w| 2.0 * w))
            .unwrap_or(self.units().eps_m())
    }

    pub fn params(&self) -> Result<ModelParams, ParamError> {
        if self.special_set {
            return ModelParams::special_set(0.5 * self.eps_m(), self.lam.unwrap_or(0.0), self.temperature);
        }
        let lam = self.lam.unwrap_or(0.0);
        ModelParams::new(
            self.eps_m(),
            self.eps1.unwrap_or(0.0),
            self.eps2.unwrap_or(0.0),
            self.lam1.unwrap_or(lam),
            self.lam2.unwrap_or(lam),
            self.temperature,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symmetric,
    Independent,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Search along λ1 = λ2 only, or over both couplings.
    #[arg(long, value_enum, default_value = "independent")]
    pub mode: Mode,
    /// Lower end of the coupling domain [default: 0.001·ω].
    #[arg(long)]
    pub lam_min: Option<f64>,
    /// Upper end of the coupling domain [default: 5·ω].
    #[arg(long)]
    pub lam_max: Option<f64>,
    /// Coarse scan points per coupling axis.
    #[arg(long, default_value_t = 25)]
    pub coarse_points: usize,
    /// Refinement stops once the bracket or simplex is smaller than this.
    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,
}

impl SearchArgs {
    fn config(&self, omega: f64, tie_rule: TieRule) -> SearchConfig {
        let d = SearchConfig::for_omega(omega);
        SearchConfig {
            lambda_domain: (
                self.lam_min.unwrap_or(d.lambda_domain.0),
                self.lam_max.unwrap_or(d.lambda_domain.1),
            ),
            coarse_points: self.coarse_points,
            refine_tolerance: self.tol,
            mode: match self.mode {
                Mode::Symmetric => SearchMode::Symmetric,
                Mode::Independent => SearchMode::Independent,
            },
            tie_rule,
            ..d
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Majorana overlap energy.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "omega")]
    pub eps_m: Option<f64>,
    /// Half the Majorana overlap energy.
    #[arg(long)]
    pub omega: Option<f64>,
    /// Level of dot 1.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub eps1: f64,
    /// Level of dot 2.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub eps2: f64,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Write the JSON here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// fig2, fig2sup, fig4, fig5-negativity, fig5-qmi or custom.
    #[arg(long, value_parser = parse_kind)]
    pub kind: SweepKind,
    /// Grid axis: `name=lo:hi:n`, `name=lo:hi:n:log` or `name=v1,v2,...`. Repeatable; the
    /// first axis varies slowest.
    #[arg(long = "axis", required = true, value_parser = parse_axis)]
    pub axes: Vec<Axis>,
    /// Values for parameters no axis drives.
    #[command(flatten)]
    pub base: PointArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Evaluate points on the calling thread only.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ReproduceArgs {
    /// fig2, fig2sup, fig4 or fig5.
    #[arg(value_parser = parse_figure)]
    pub figure: Figure,
    /// Directory for the CSV files and the plot script.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Skip the gnuplot script.
    #[arg(long)]
    pub no_plot: bool,
    /// Evaluate points on the calling thread only.
    #[arg(long)]
    pub sequential: bool,
}

fn parse_kind(s: &str) -> Result<SweepKind, String> {
    s.parse()
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    s.parse()
}

fn parse_figure(s: &str) -> Result<Figure, String> {
    s.parse()
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Thermal(#[from] ThermalError),
    #[error(transparent)]
    Optimize(#[from] OptimizeError),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn is_usage(&self) -> bool {
        matches!(
            self,
            CliError::Usage(_)
                | CliError::Param(_)
                | CliError::Optimize(OptimizeError::Grid(_) | OptimizeError::Config(_) | OptimizeError::Param(_))
        )
    }
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let subcommand = args.get(1).and_then(|a| a.to_str()).map(str::to_string);
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let mut text = e.render().to_string();
            if e.use_stderr() {
                if !text.contains("Usage:") {
                    text.push('\n');
                    text.push_str(&usage_text(subcommand.as_deref()));
                }
                let _ = write!(stderr, "{text}");
                return 2;
            }
            let _ = write!(stdout, "{text}");
            return 0;
        }
    };
    if let Err(msg) = configure_threads_from_env() {
        let _ = write!(
            stderr,
            "error: {msg}\n\n{}\nFor more information, try '--help'.\n",
            usage_text(subcommand.as_deref())
        );
        return 2;
    }
    match execute(&cli.command, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_usage() {
                let _ = write!(
                    stderr,
                    "\n{}\nFor more information, try '--help'.\n",
                    usage_text(subcommand.as_deref())
                );
                2
            } else {
                1
            }
        }
    }
}

/// Usage line of a subcommand, or of the whole program.
fn usage_text(subcommand: Option<&str>) -> String {
    let mut root = Cli::command();
    root.build();
    let usage = match subcommand.and_then(|name| root.find_subcommand_mut(name)) {
        Some(sub) => sub.render_usage(),
        None => root.render_usage(),
    };
    format!("{usage}\n")
}

fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Negativity(a) => emit(out, &negativity_report(a)?),
        Command::Concurrence(a) => emit(out, &concurrence_report(a)?),
        Command::Qmi(a) => emit(out, &qmi_report(a)?),
        Command::Optimize(a) => {
            let json = optimize_json(a)?;
            match &a.output {
                Some(path) => write_files(&[(path.clone(), json.into_bytes())]),
                None => emit(out, &json),
            }
        }
        Command::Sweep(a) => run_sweep(a, out, err),
        Command::Reproduce(a) => reproduce(a, out, err),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .and_then(|_| if text.ends_with('\n') { Ok(()) } else { writeln!(out) })
        .map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
}

/// Writes every file through a temporary sibling and a rename, after all contents exist.
fn write_files(files: &[(PathBuf, Vec<u8>)]) -> Result<(), CliError> {
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    let mut staged = Vec::with_capacity(files.len());
    for (path, bytes) in files {
        let mut tmp = path.clone().into_os_string();
        tmp.push(".partial");
        let tmp = PathBuf::from(tmp);
        if let Err(e) = fs::write(&tmp, bytes) {
            for (t, _) in &staged {
                let _ = fs::remove_file(t);
            }
            let _ = fs::remove_file(&tmp);
            return Err(io_err(path)(e));
        }
        staged.push((tmp, path));
    }
    for (tmp, path) in staged {
        fs::rename(&tmp, path).map_err(io_err(path))?;
    }
    Ok(())
}

/// Value first, then `name: value` lines.
struct Report {
    value: f64,
    lines: Vec<(String, String)>,
}

impl Report {
    fn new(value: f64) -> Self {
        Self {
            value,
            lines: Vec::new(),
        }
    }

    fn add(&mut self, name: &str, value: impl ToString) {
        self.lines.push((name.to_string(), value.to_string()));
    }

    fn num(&mut self, name: &str, value: f64) {
        self.add(name, fmt_value(value));
    }

    fn nums(&mut self, name: &str, values: &[f64]) {
        let v: Vec<String> = values.iter().map(|&x| fmt_value(x)).collect();
        self.add(name, v.join(" "));
    }

    fn params(&mut self, p: &ModelParams, units: UnitConvention) {
        self.add("units", units);
        for (name, v) in [
            ("eps_m", p.eps_m),
            ("eps1", p.eps1),
            ("eps2", p.eps2),
            ("lam1", p.lam1),
            ("lam2", p.lam2),
            ("temperature", p.temperature),
        ] {
            self.num(name, v);
        }
    }

    fn render(&self) -> String {
        let mut s = fmt_value(self.value);
        s.push('\n');
        for (k, v) in &self.lines {
            s.push_str(&format!("{k}: {v}\n"));
        }
        s
    }
}

fn require_positive_temperature(t: f64) -> Result<(), CliError> {
    if t > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage("--special-set needs --temp > 0".into()))
    }
}

/// Either the reduced Gibbs state (`T > 0`) or the reduced ground state.
fn dot_state(p: &ModelParams, tie: TieRule, r: &mut Report) -> Result<DensityMatrix, CliError> {
    if p.temperature > 0.0 {
        r.add("state", "thermal");
        Ok(reduce_thermal(p)?)
    } else {
        let g = ground_state(p, tie)?;
        r.add("state", "ground");
        r.add("tie_rule", tie);
        r.add("degenerate", g.degenerate);
        r.add("sector", format!("{:?}", g.primary().sector).to_lowercase());
        r.num("ground_energy", g.primary().energy);
        Ok(reduce_over_majorana(g.primary()))
    }
}

pub fn negativity_report(a: &PointArgs) -> Result<String, CliError> {
    let p = a.params()?;
    let tie: TieRule = a.common.tie_rule.into();
    let mut r = Report::new(0.0);
    r.params(&p, a.units());
    // the negativity is a ground-state quantity
    let g = ground_state(&p, tie)?;
    let w = g.primary();
    let rho = reduce_over_majorana(w);
    r.value = logarithmic_negativity(&rho)?;
    r.add("tie_rule", tie);
    r.add("degenerate", g.degenerate);
    r.add("sector", format!("{:?}", w.sector).to_lowercase());
    r.num("ground_energy", w.energy);
    let pt = fermionic_partial_transpose(&rho);
    r.nums("partial_transpose_singular_values", &singular_values(&pt)?);
    r.num("trace_norm", trace_norm(&pt)?);
    r.num("negativity_dot2", logarithmic_negativity_dot2(&rho)?);
    let sign = match w.sector {
        Sector::Even => Some(SectorSign::Plus),
        Sector::Odd => Some(SectorSign::Minus),
        Sector::Mixed => None,
    };
    match sign.map(|s| negativity_pure_analytic(w, s)) {
        Some(Ok(an)) => {
            r.nums("analytic_abcdef", &[an.a, an.b, an.c, an.d, an.e, an.f]);
            r.nums(
                "analytic_alpha_beta_gamma0_delta",
                &[an.alpha, an.beta, an.gamma0, an.delta],
            );
            r.nums("analytic_mu_nu", &[an.mu, an.nu]);
            r.nums("analytic_r", &an.r);
            r.num("analytic_negativity", an.negativity);
        }
        Some(Err(e)) => r.add("analytic", format!("unavailable ({e})")),
        None => r.add("analytic", "unavailable (mixed sector)"),
    }
    Ok(r.render())
}

pub fn concurrence_report(a: &PointArgs) -> Result<String, CliError> {
    let p = a.params()?;
    let mut r = Report::new(0.0);
    r.params(&p, a.units());
    if a.special_set {
        require_positive_temperature(p.temperature)?;
        let (omega, lam) = (0.5 * p.eps_m, a.lam.unwrap_or(0.0));
        let c = thermal_concurrence(omega, lam, p.temperature)?;
        r.value = c.value;
        r.add("state", "thermal special set");
        r.num("bell_shortcut", c.bell_shortcut);
        let w = ThermalWeights::exact(&special_eigenbasis(omega, lam)?, p.temperature)?;
        r.nums("bell_probabilities", &w.probabilities());
        r.num("low_temperature_formula", low_temperature_concurrence(omega, lam)?);
        r.nums(
            "wootters_roots",
            &wootters_roots(&thermal_dot_state(omega, lam, p.temperature)?)?,
        );
    } else {
        let rho = dot_state(&p, a.common.tie_rule.into(), &mut r)?;
        let roots = wootters_roots(&rho)?;
        r.value = (roots[0] - roots[1] - roots[2] - roots[3]).clamp(0.0, 1.0);
        r.nums("wootters_roots", &roots);
    }
    Ok(r.render())
}

pub fn qmi_report(a: &PointArgs) -> Result<String, CliError> {
    let p = a.params()?;
    let mut r = Report::new(0.0);
    r.params(&p, a.units());
    let rho = if a.special_set {
        require_positive_temperature(p.temperature)?;
        let (omega, lam) = (0.5 * p.eps_m, a.lam.unwrap_or(0.0));
        let q = thermal_qmi(omega, lam, p.temperature)?;
        r.add("state", "thermal special set");
        r.num("closed_form", q.closed_form);
        let basis = special_eigenbasis(omega, lam)?;
        r.nums(
            "bell_probabilities",
            &ThermalWeights::exact(&basis, p.temperature)?.probabilities(),
        );
        let printed = ThermalWeights::printed(&basis, p.temperature)?;
        r.nums("printed_bell_probabilities", &printed.probabilities());
        debug_assert_eq!(closed_form_qmi(&printed), q.closed_form);
        thermal_dot_state(omega, lam, p.temperature)?
    } else {
        dot_state(&p, a.common.tie_rule.into(), &mut r)?
    };
    r.value = quantum_mutual_information(&rho)?;
    r.num("entropy_dot1", von_neumann_entropy(&marginal(&rho, Dot::Dot1))?);
    r.num("entropy_dot2", von_neumann_entropy(&marginal(&rho, Dot::Dot2))?);
    r.num("entropy_joint", von_neumann_entropy(&rho)?);
    r.add("entropy_unit", "bits");
    Ok(r.render())
}

#[derive(Serialize)]
struct OptimizeOutput<'a> {
    unit: &'static str,
    version: &'static str,
    eps_m: f64,
    eps1: f64,
    eps2: f64,
    config: &'a SearchConfig,
    result: &'a OptimizationResult,
}

pub fn optimize_json(a: &OptimizeArgs) -> Result<String, CliError> {
    let units: UnitConvention = a.common.units.into();
    let eps_m = a.eps_m.or(a.omega.map(|w| 2.0 * w)).unwrap_or(units.eps_m());
    let cfg = a.search.config(0.5 * eps_m, a.common.tie_rule.into());
    let result = maximize_negativity(a.eps1, a.eps2, eps_m, &cfg)?;
    let out = OptimizeOutput {
        unit: units.label(),
        version: VERSION,
        eps_m,
        eps1: a.eps1,
        eps2: a.eps2,
        config: &cfg,
        result: &result,
    };
    Ok(serde_json::to_string_pretty(&out)? + "\n")
}

fn executor(sequential: bool) -> Executor {
    if sequential {
        Executor::Sequential
    } else {
        Executor::Parallel
    }
}

fn warn_degenerate(err: &mut dyn Write, label: &str, rows: &[SweepRow], tie: TieRule) {
    let n = rows.iter().filter(|r| r.degenerate).count();
    if n > 0 {
        let _ = writeln!(
            err,
            "warning: {label}: {n} of {} rows have a degenerate ground state (tie rule {tie})",
            rows.len()
        );
    }
}

pub fn sweep_spec(a: &SweepArgs) -> Result<SweepSpec, CliError> {
    let units = a.base.units();
    let tie: TieRule = a.base.common.tie_rule.into();
    let base = a.base.params()?;
    let mut spec = SweepSpec::new(a.kind, a.axes.clone(), units).with_base(base);
    spec.tie_rule = tie;
    spec.search = a.search.config(base.omega(), tie);
    spec.validate()?;
    Ok(spec)
}

fn run_sweep(a: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let spec = sweep_spec(a)?;
    let rows = sweep(&spec, executor(a.sequential))?;
    warn_degenerate(err, spec.kind.label(), &rows, spec.tie_rule);
    let bytes = match a.format {
        Format::Csv => csv_bytes(spec.units, spec.kind, &rows),
        Format::Json => {
            #[derive(Serialize)]
            struct JsonSweep<'a> {
                unit: &'static str,
                version: &'static str,
                kind: SweepKind,
                rows: &'a [SweepRow],
            }
            let doc = JsonSweep {
                unit: spec.units.label(),
                version: VERSION,
                kind: spec.kind,
                rows: &rows,
            };
            (serde_json::to_string_pretty(&doc)? + "\n").into_bytes()
        }
    };
    match &a.output {
        Some(path) => write_files(&[(path.clone(), bytes)]),
        None => out.write_all(&bytes).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

/// CSV bytes for every panel of a figure, keyed by file name.
pub fn figure_data(fig: Figure, executor: Executor, err: &mut dyn Write) -> Result<Vec<(String, Vec<u8>)>, CliError> {
    let mut files = Vec::new();
    for panel in fig.panels()? {
        let rows = sweep(&panel.spec, executor)?;
        warn_degenerate(err, panel.stem, &rows, panel.spec.tie_rule);
        files.push((
            format!("{}.csv", panel.stem),
            csv_bytes(panel.spec.units, panel.spec.kind, &rows),
        ));
    }
    Ok(files)
}

fn reproduce(a: &ReproduceArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let mut files = figure_data(a.figure, executor(a.sequential), err)?;
    if !a.no_plot {
        files.push((
            format!("{}.gp", a.figure.name()),
            plot::gnuplot_script(a.figure).into_bytes(),
        ));
    }
    if !a.out_dir.as_os_str().is_empty() {
        fs::create_dir_all(&a.out_dir).map_err(|source| CliError::Io {
            path: a.out_dir.clone(),
            source,
        })?;
    }
    let files: Vec<(PathBuf, Vec<u8>)> = files.into_iter().map(|(n, b)| (a.out_dir.join(n), b)).collect();
    write_files(&files)?;
    for (path, _) in &files {
        let _ = writeln!(out, "wrote {}", path.display());
    }
    let _ = writeln!(out, "units: {}", a.figure.units());
    Ok(())
}
