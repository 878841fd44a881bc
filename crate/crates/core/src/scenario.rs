//! Scenario files and the computations behind the `razavy-dw` binary.
//!
//! A scenario is a TOML document with five sections:
//!
//! ```toml
//! [system]
//! g = 0.01            # hbar, mass, xi default to 1
//!
//! [drive]
//! kind = "sin-symmetric"
//! f = 0.02
//! omega_ratio = 1.0   # or `omega = ...`; ratio is relative to Δ₁₀
//!
//! [initial]
//! state = "ground"    # ground | wavepacket | custom (+ amplitudes = [[re, im], ...])
//!
//! [run]
//! t_max = 400.0
//! dt_out = 0.5
//! methods = ["exact", "rwa"]
//!
//! [outputs]
//! include = ["populations", "positions", "correlation", "concurrence", "averages"]
//! ```
//!
//! Drive kinds are `none`, `sin-symmetric`, `step-symmetric`,
//! `sin-antisymmetric`, `sin-first-well` and `general`; the last takes
//! `[drive.first]` and `[drive.second]` tables with `shape = "zero" | "sine" |
//! "step" | "table"`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;

use crate::analytic::{rwa_solve, rwa_time_averages, RwaSolution, TlaStepSolution};
use crate::coupled::CoupledSystem;
use crate::drive::{DriveField, FieldShape};
use crate::dynamics::{advance, integrate_with, AmplitudeState, InitialState, IntegratorConfig};
use crate::error::Error;
use crate::format::{general, grid_json, sci, series_csv, Columns, Precision};
use crate::observables::{density_grid, GridSpec, ObservableSeries};
use crate::potential::{PotentialParams, SingleWellBasis};
use crate::C64;

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid scenario: {0}")]
    Semantic(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
}

impl ScenarioError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Read { .. } | ScenarioError::Parse(_) => 2,
            ScenarioError::Semantic(_) => 3,
            ScenarioError::Numeric(_) => 4,
            ScenarioError::Write { .. } => 1,
        }
    }
}

impl From<Error> for ScenarioError {
    fn from(e: Error) -> Self {
        match e {
            Error::QuadratureNonConvergence { .. }
            | Error::StepUnderflow(_)
            | Error::IntegratorStepUnderflow(_)
            | Error::NormDrift { .. }
            | Error::GridTooCoarse { .. } => ScenarioError::Numeric(e.to_string()),
            _ => ScenarioError::Semantic(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, ScenarioError>;

// ---- raw file layout ----

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    system: RawSystem,
    drive: RawDrive,
    #[serde(default)]
    initial: RawInitial,
    run: RawRun,
    outputs: RawOutputs,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    g: f64,
    hbar: Option<f64>,
    mass: Option<f64>,
    xi: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDrive {
    kind: String,
    f: Option<f64>,
    omega: Option<f64>,
    omega_ratio: Option<f64>,
    first: Option<RawShape>,
    second: Option<RawShape>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawShape {
    shape: String,
    f: Option<f64>,
    omega: Option<f64>,
    omega_ratio: Option<f64>,
    times: Option<Vec<f64>>,
    values: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInitial {
    state: String,
    amplitudes: Option<Vec<[f64; 2]>>,
}

impl Default for RawInitial {
    fn default() -> Self {
        Self { state: "ground".into(), amplitudes: None }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRun {
    t_max: f64,
    dt_out: Option<f64>,
    methods: Vec<String>,
    steps_per_period: Option<f64>,
    average_period: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutputs {
    include: Vec<String>,
    grid_times: Option<Vec<f64>>,
    grid_points: Option<usize>,
    grid_extent: Option<f64>,
}

// ---- validated scenario ----

/// Angular frequency, either absolute or as a multiple of `Δ₁₀`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Frequency {
    Absolute(f64),
    Resonant(f64),
}

impl Frequency {
    pub fn resolve(self, delta10: f64) -> f64 {
        match self {
            Frequency::Absolute(w) => w,
            Frequency::Resonant(r) => r * delta10,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ShapeSpec {
    Zero,
    Sine { f: f64, omega: Frequency },
    Step { f: f64 },
    Table { times: Vec<f64>, values: Vec<f64> },
}

impl ShapeSpec {
    fn resolve(&self, delta10: f64) -> FieldShape {
        match self {
            ShapeSpec::Zero => FieldShape::Zero,
            ShapeSpec::Sine { f, omega } => FieldShape::Sine { f: *f, omega: omega.resolve(delta10) },
            ShapeSpec::Step { f } => FieldShape::Step { f: *f },
            ShapeSpec::Table { times, values } => FieldShape::Table { times: times.clone(), values: values.clone() },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DriveSpec {
    None,
    SinSymmetric { f: f64, omega: Frequency },
    StepSymmetric { f: f64 },
    SinAntisymmetric { f: f64, omega: Frequency },
    SinFirstWell { f: f64, omega: Frequency },
    General { first: ShapeSpec, second: ShapeSpec },
}

impl DriveSpec {
    pub fn resolve(&self, delta10: f64) -> DriveField {
        match self {
            DriveSpec::None => DriveField::None,
            DriveSpec::SinSymmetric { f, omega } => DriveField::SinSymmetric { f: *f, omega: omega.resolve(delta10) },
            DriveSpec::StepSymmetric { f } => DriveField::StepSymmetric { f: *f },
            DriveSpec::SinAntisymmetric { f, omega } => {
                DriveField::SinAntisymmetric { f: *f, omega: omega.resolve(delta10) }
            }
            DriveSpec::SinFirstWell { f, omega } => DriveField::SinFirstWell { f: *f, omega: omega.resolve(delta10) },
            DriveSpec::General { first, second } => {
                DriveField::General { first: first.resolve(delta10), second: second.resolve(delta10) }
            }
        }
    }

    fn amplitude_mut(&mut self) -> Option<&mut f64> {
        match self {
            DriveSpec::SinSymmetric { f, .. }
            | DriveSpec::StepSymmetric { f }
            | DriveSpec::SinAntisymmetric { f, .. }
            | DriveSpec::SinFirstWell { f, .. } => Some(f),
            _ => None,
        }
    }

    fn frequency_mut(&mut self) -> Option<&mut Frequency> {
        match self {
            DriveSpec::SinSymmetric { omega, .. }
            | DriveSpec::SinAntisymmetric { omega, .. }
            | DriveSpec::SinFirstWell { omega, .. } => Some(omega),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Method {
    Exact,
    Rwa,
    Tla,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Rwa => "rwa",
            Method::Tla => "tla",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outputs {
    pub columns: Columns,
    pub averages: bool,
    pub grid_times: Vec<f64>,
    pub grid: GridSpec,
}

impl Outputs {
    fn is_empty(&self) -> bool {
        self.columns == Columns::default() && !self.averages && self.grid_times.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub params: PotentialParams,
    pub g: f64,
    pub drive: DriveSpec,
    pub initial: InitialState,
    pub t_max: f64,
    pub dt_out: f64,
    pub methods: Vec<Method>,
    pub outputs: Outputs,
    pub integrator: IntegratorConfig,
    /// Averaging window for the numerical means; `None` picks the natural
    /// oscillation period of the run.
    pub average_period: Option<f64>,
}

fn semantic<T>(msg: impl Into<String>) -> Result<T> {
    Err(ScenarioError::Semantic(msg.into()))
}

fn need(v: Option<f64>, what: &str) -> Result<f64> {
    v.ok_or_else(|| ScenarioError::Semantic(format!("missing `{what}`")))
}

fn frequency(omega: Option<f64>, ratio: Option<f64>, ctx: &str) -> Result<Frequency> {
    match (omega, ratio) {
        (Some(w), None) => Ok(Frequency::Absolute(w)),
        (None, Some(r)) => Ok(Frequency::Resonant(r)),
        (None, None) => semantic(format!("{ctx}: one of `omega` or `omega_ratio` is required")),
        (Some(_), Some(_)) => semantic(format!("{ctx}: give `omega` or `omega_ratio`, not both")),
    }
}

fn shape(raw: Option<RawShape>, which: &str) -> Result<ShapeSpec> {
    let Some(raw) = raw else {
        return semantic(format!("general drive needs [drive.{which}]"));
    };
    match raw.shape.as_str() {
        "zero" => Ok(ShapeSpec::Zero),
        "sine" => Ok(ShapeSpec::Sine {
            f: need(raw.f, "f")?,
            omega: frequency(raw.omega, raw.omega_ratio, &format!("drive.{which}"))?,
        }),
        "step" => Ok(ShapeSpec::Step { f: need(raw.f, "f")? }),
        "table" => match (raw.times, raw.values) {
            (Some(times), Some(values)) => Ok(ShapeSpec::Table { times, values }),
            _ => semantic(format!("drive.{which}: table shape needs `times` and `values`")),
        },
        other => semantic(format!("drive.{which}: unknown shape `{other}`")),
    }
}

fn drive_spec(raw: RawDrive) -> Result<DriveSpec> {
    let kind = raw.kind.as_str();
    if kind != "general" && (raw.first.is_some() || raw.second.is_some()) {
        return semantic("[drive.first]/[drive.second] only apply to kind = \"general\"");
    }
    let sine = |raw: &RawDrive| -> Result<(f64, Frequency)> {
        Ok((need(raw.f, "drive.f")?, frequency(raw.omega, raw.omega_ratio, "drive")?))
    };
    Ok(match kind {
        "none" => DriveSpec::None,
        "sin-symmetric" => {
            let (f, omega) = sine(&raw)?;
            DriveSpec::SinSymmetric { f, omega }
        }
        "sin-antisymmetric" => {
            let (f, omega) = sine(&raw)?;
            DriveSpec::SinAntisymmetric { f, omega }
        }
        "sin-first-well" => {
            let (f, omega) = sine(&raw)?;
            DriveSpec::SinFirstWell { f, omega }
        }
        "step-symmetric" => DriveSpec::StepSymmetric { f: need(raw.f, "drive.f")? },
        "general" => DriveSpec::General { first: shape(raw.first, "first")?, second: shape(raw.second, "second")? },
        other => return semantic(format!("unknown drive kind `{other}`")),
    })
}

fn initial_state(raw: RawInitial) -> Result<InitialState> {
    match raw.state.as_str() {
        "ground" => Ok(InitialState::Ground),
        "wavepacket" => Ok(InitialState::Wavepacket),
        "custom" => {
            let Some(amps) = raw.amplitudes else {
                return semantic("custom initial state needs `amplitudes`");
            };
            let amps: [[f64; 2]; 4] = amps
                .try_into()
                .map_err(|v: Vec<_>| ScenarioError::Semantic(format!("expected 4 amplitudes, got {}", v.len())))?;
            let state = InitialState::Custom(amps.map(|[re, im]| C64::new(re, im)));
            state.amplitudes()?;
            Ok(state)
        }
        other => semantic(format!("unknown initial state `{other}`")),
    }
}

impl Scenario {
    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawScenario = toml::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
        Self::from_raw(raw)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| ScenarioError::Read { path: path.into(), source })?;
        Self::from_toml(&text)
    }

    fn from_raw(raw: RawScenario) -> Result<Self> {
        let defaults = PotentialParams::default();
        let params = PotentialParams::new(
            raw.system.hbar.unwrap_or(defaults.hbar),
            raw.system.mass.unwrap_or(defaults.mass),
            raw.system.xi.unwrap_or(defaults.xi),
        )?;

        let mut methods = Vec::new();
        for m in &raw.run.methods {
            let method = match m.as_str() {
                "exact" => Method::Exact,
                "rwa" => Method::Rwa,
                "tla" => Method::Tla,
                other => return semantic(format!("unknown method `{other}`")),
            };
            if !methods.contains(&method) {
                methods.push(method);
            }
        }

        let mut outputs = Outputs::default();
        for o in &raw.outputs.include {
            match o.as_str() {
                "populations" => outputs.columns.populations = true,
                "positions" => outputs.columns.positions = true,
                "correlation" => outputs.columns.correlation = true,
                "concurrence" => outputs.columns.concurrence = true,
                "averages" => outputs.averages = true,
                "grid" => {
                    outputs.grid_times = raw.outputs.grid_times.clone().unwrap_or_default();
                    if outputs.grid_times.is_empty() {
                        return semantic("grid output needs non-empty `grid_times`");
                    }
                }
                other => return semantic(format!("unknown output `{other}`")),
            }
        }
        if let Some(points) = raw.outputs.grid_points {
            outputs.grid.points = points;
        }
        if let Some(extent) = raw.outputs.grid_extent {
            outputs.grid.extent = extent;
        }

        let mut integrator = IntegratorConfig::default();
        if let Some(spp) = raw.run.steps_per_period {
            integrator.steps_per_period = spp;
        }

        let scenario = Scenario {
            params,
            g: raw.system.g,
            drive: drive_spec(raw.drive)?,
            initial: initial_state(raw.initial)?,
            t_max: raw.run.t_max,
            dt_out: raw.run.dt_out.unwrap_or(0.5),
            methods,
            outputs,
            integrator,
            average_period: raw.run.average_period,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    /// Checks every cross-field constraint; called on load and before each run.
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if !(self.g >= 0.0 && self.g.is_finite()) {
            return semantic(format!("g must be non-negative, got {}", self.g));
        }
        if self.methods.is_empty() {
            return semantic("no methods selected");
        }
        if self.outputs.is_empty() {
            return semantic("no outputs selected");
        }
        for m in &self.methods {
            match m {
                Method::Rwa
                    if !matches!(self.drive, DriveSpec::SinSymmetric { .. } | DriveSpec::SinFirstWell { .. }) =>
                {
                    return semantic("rwa needs a sin-symmetric or sin-first-well drive");
                }
                Method::Tla if !matches!(self.drive, DriveSpec::StepSymmetric { .. }) => {
                    return semantic("tla needs a step-symmetric drive");
                }
                _ => {}
            }
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return semantic(format!("t_max must be positive, got {}", self.t_max));
        }
        if !(self.dt_out > 0.0 && self.dt_out <= self.t_max) {
            return semantic(format!("dt_out must lie in (0, t_max], got {}", self.dt_out));
        }
        if let Some(t) = self.outputs.grid_times.iter().find(|t| !(**t >= 0.0 && **t <= self.t_max)) {
            return semantic(format!("grid time {t} outside [0, t_max]"));
        }
        if self.outputs.grid.points < 3 || !(self.outputs.grid.extent > 0.0) {
            return semantic("grid needs at least 3 points and a positive extent");
        }
        if !(self.integrator.steps_per_period >= 4.0) {
            return semantic("steps_per_period must be at least 4");
        }
        if let Some(p) = self.average_period {
            if !(p > 0.0 && p.is_finite()) {
                return semantic("average_period must be positive");
            }
        }
        self.drive.resolve(1.0).validate()?;
        Ok(())
    }

    pub fn system(&self) -> Result<CoupledSystem> {
        let basis = SingleWellBasis::new(self.params)?;
        Ok(CoupledSystem::new(basis, self.g)?)
    }

    pub fn drive_field(&self, sys: &CoupledSystem) -> DriveField {
        self.drive.resolve(sys.delta10())
    }

    /// Amplitude entering the two-level formulas (`f/2` for the single-well
    /// drive) together with the drive frequency.
    fn rwa_drive(&self, sys: &CoupledSystem) -> Option<(f64, f64)> {
        match &self.drive {
            DriveSpec::SinSymmetric { f, omega } => Some((*f, omega.resolve(sys.delta10()))),
            DriveSpec::SinFirstWell { f, omega } => Some((0.5 * f, omega.resolve(sys.delta10()))),
            _ => None,
        }
    }

    /// Warnings about the RWA being used outside its comfortable range.
    pub fn rwa_warnings(&self, sys: &CoupledSystem) -> Vec<String> {
        let mut out = Vec::new();
        if !self.methods.contains(&Method::Rwa) {
            return out;
        }
        let Some((f, omega)) = self.rwa_drive(sys) else {
            return out;
        };
        let d10 = sys.delta10();
        let kappa = sys.alpha * f / sys.hbar();
        if kappa > 0.5 * d10 {
            out.push(format!(
                "RWA may be unreliable: drive rate {} exceeds half the gap {}",
                general(kappa, 6),
                general(d10, 6)
            ));
        }
        if (omega - d10).abs() > 0.5 * d10 {
            out.push(format!(
                "RWA may be unreliable: detuning {} exceeds half the gap {}",
                general(omega - d10, 6),
                general(d10, 6)
            ));
        }
        out
    }
}

// ---- execution ----

/// Closed-form and numerical averages of `Γ²` and `C²` for one method.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AverageRow {
    pub method: Method,
    /// `"closed-form"` or `"numerical"`.
    pub source: &'static str,
    pub corr_sq: f64,
    pub conc_sq: f64,
}

#[derive(Clone, Debug)]
pub struct MethodRun {
    pub method: Method,
    pub states: Vec<AmplitudeState>,
    pub series: ObservableSeries,
    /// States at the requested grid times.
    pub grid_states: Vec<AmplitudeState>,
    pub norm_drift: f64,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub system: CoupledSystem,
    pub runs: Vec<MethodRun>,
    pub averages: Vec<AverageRow>,
    pub warnings: Vec<String>,
}

impl RunResult {
    pub fn run(&self, method: Method) -> Option<&MethodRun> {
        self.runs.iter().find(|r| r.method == method)
    }
}

fn output_times(t_max: f64, dt_out: f64) -> Vec<f64> {
    let n_full = (t_max / dt_out * (1.0 + 1e-12)).floor() as usize;
    let mut times: Vec<f64> = (0..=n_full).map(|k| k as f64 * dt_out).collect();
    if t_max - n_full as f64 * dt_out > 1e-9 * dt_out {
        times.push(t_max);
    }
    times
}

fn sample<F: Fn(f64) -> [C64; 4]>(times: &[f64], amps: F) -> Vec<AmplitudeState> {
    times.iter().map(|&t| AmplitudeState::new(t, amps(t))).collect()
}

fn max_norm_drift(states: &[AmplitudeState]) -> f64 {
    states.iter().map(|s| (1.0 - s.norm_sqr()).abs()).fold(0.0, f64::max)
}

/// Runs every selected method; nothing is written to disk.
pub fn execute(scenario: &Scenario) -> Result<RunResult> {
    scenario.validate()?;
    let sys = scenario.system()?;
    let drive = scenario.drive_field(&sys);
    let times = output_times(scenario.t_max, scenario.dt_out);
    let mut runs = Vec::new();
    let mut averages = Vec::new();

    for &method in &scenario.methods {
        let (states, grid_states, natural_period) = match method {
            Method::Exact => {
                let traj = integrate_with(
                    &scenario.initial,
                    &sys,
                    &drive,
                    scenario.t_max,
                    scenario.dt_out,
                    &scenario.integrator,
                )?;
                let mut grid_states = Vec::new();
                for &tg in &scenario.outputs.grid_times {
                    // start from the last recorded state at or before tg
                    let k = traj.states.partition_point(|s| s.t <= tg + 1e-12).max(1) - 1;
                    grid_states.push(advance(&traj.states[k], &sys, &drive, tg, &scenario.integrator)?);
                }
                let period = match scenario.rwa_drive(&sys) {
                    Some((f, omega)) => {
                        let rabi = crate::analytic::rabi_frequency(&sys, f, omega);
                        (rabi > 0.0).then(|| std::f64::consts::TAU / rabi)
                    }
                    None => None,
                };
                (traj.states, grid_states, period)
            }
            Method::Rwa => {
                let (f, omega) = scenario.rwa_drive(&sys).expect("validated drive");
                let sol = rwa_solve(&scenario.initial, &sys, f, omega)?;
                let closed = rwa_time_averages(&sol, &sys);
                averages.push(AverageRow {
                    method,
                    source: "closed-form",
                    corr_sq: closed.corr_sq,
                    conc_sq: closed.conc_sq,
                });
                let period = rwa_period(&sol);
                (
                    sample(&times, |t| sol.amplitudes(t)),
                    sample(&scenario.outputs.grid_times, |t| sol.amplitudes(t)),
                    period,
                )
            }
            Method::Tla => {
                let DriveSpec::StepSymmetric { f } = scenario.drive else {
                    unreachable!("validated drive");
                };
                let sol = TlaStepSolution::new(&scenario.initial, &sys, f)?;
                let period = (sol.rabi_step > 0.0).then(|| std::f64::consts::TAU / sol.rabi_step);
                (
                    sample(&times, |t| sol.amplitudes(t)),
                    sample(&scenario.outputs.grid_times, |t| sol.amplitudes(t)),
                    period,
                )
            }
        };
        let series = ObservableSeries::from_states(&states, &sys);
        let (corr_sq, conc_sq) = series.averages(scenario.average_period.or(natural_period));
        averages.push(AverageRow { method, source: "numerical", corr_sq, conc_sq });
        let norm_drift = max_norm_drift(&states);
        runs.push(MethodRun { method, states, series, grid_states, norm_drift });
    }

    Ok(RunResult { warnings: scenario.rwa_warnings(&sys), system: sys, runs, averages })
}

fn rwa_period(sol: &RwaSolution) -> Option<f64> {
    (sol.rabi > 0.0).then(|| std::f64::consts::TAU / sol.rabi)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub precision: Precision,
}

/// Writes the artifacts of `result` into `out_dir` and returns their paths.
///
/// Files are `<stem>_<method>.csv`, `<stem>_<method>_grid_t<t>.json` and
/// `<stem>_averages.csv`.
pub fn write_artifacts(
    scenario: &Scenario,
    result: &RunResult,
    stem: &str,
    out_dir: &Path,
    options: RunOptions,
) -> Result<Vec<PathBuf>> {
    let write = |path: PathBuf, contents: String| -> Result<PathBuf> {
        fs::write(&path, contents).map_err(|source| ScenarioError::Write { path: path.clone(), source })?;
        Ok(path)
    };
    fs::create_dir_all(out_dir).map_err(|source| ScenarioError::Write { path: out_dir.into(), source })?;
    let mut written = Vec::new();
    let columns = scenario.outputs.columns;
    for run in &result.runs {
        let name = run.method.name();
        if columns != Columns::default() {
            let csv = series_csv(&run.series, columns, options.precision);
            written.push(write(out_dir.join(format!("{stem}_{name}.csv")), csv)?);
        }
        for state in &run.grid_states {
            let grid = density_grid(state, &result.system, &scenario.outputs.grid)?;
            let label = general(state.t, 6);
            written.push(write(
                out_dir.join(format!("{stem}_{name}_grid_t{label}.json")),
                grid_json(&grid, options.precision),
            )?);
        }
    }
    if scenario.outputs.averages {
        let d = options.precision.digits();
        let mut csv = String::from("method,source,gamma_sq_av,conc_sq_av\n");
        for row in &result.averages {
            let _ =
                writeln!(csv, "{},{},{},{}", row.method.name(), row.source, sci(row.corr_sq, d), sci(row.conc_sq, d));
        }
        written.push(write(out_dir.join(format!("{stem}_averages.csv")), csv)?);
    }
    Ok(written)
}

/// Loads, runs and writes one scenario file.
pub fn run_scenario(path: &Path, out_dir: &Path, options: RunOptions) -> Result<(RunResult, Vec<PathBuf>)> {
    let scenario = Scenario::load(path)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
    let result = execute(&scenario)?;
    let files = write_artifacts(&scenario, &result, stem, out_dir, options)?;
    Ok((result, files))
}

// ---- eigen table ----

/// Named constants of the coupled system, in print order.
pub fn eigen_table(params: PotentialParams, g: f64) -> Result<Vec<(&'static str, f64)>> {
    if !(g >= 0.0 && g.is_finite()) {
        return semantic(format!("g must be non-negative, got {g}"));
    }
    let basis = SingleWellBasis::new(params)?;
    let sys = CoupledSystem::new(basis, g)?;
    let e = basis.eps;
    let en = sys.energies;
    Ok(vec![
        ("eps0", e[0]),
        ("eps1", e[1]),
        ("eps2", e[2]),
        ("eps3", e[3]),
        ("delta", basis.delta()),
        ("eps", basis.eps_sum()),
        ("gamma", basis.gamma),
        ("E0", en[0]),
        ("E1", en[1]),
        ("E2", en[2]),
        ("E3", en[3]),
        ("theta", sys.theta),
        ("alpha", sys.alpha),
        ("beta", sys.beta),
        ("Delta10", sys.delta10()),
    ])
}

pub fn format_eigen_table(rows: &[(&str, f64)]) -> String {
    let mut out = String::new();
    for (name, value) in rows {
        let _ = writeln!(out, "{name:<8} {}", general(*value, 6));
    }
    out
}

// ---- sweeps ----

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    F,
    G,
    Omega,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::F => "f",
            SweepParam::G => "g",
            SweepParam::Omega => "omega",
        }
    }
}

impl std::str::FromStr for SweepParam {
    type Err = ScenarioError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f" => Ok(SweepParam::F),
            "g" => Ok(SweepParam::G),
            "omega" => Ok(SweepParam::Omega),
            other => semantic(format!("cannot sweep `{other}` (expected f, g or omega)")),
        }
    }
}

/// `steps` evenly spaced values from `from` to `to` inclusive.
pub fn sweep_range(from: f64, to: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return semantic(format!("sweep needs at least 2 points, got {steps}"));
    }
    if !(from.is_finite() && to.is_finite()) {
        return semantic("sweep bounds must be finite");
    }
    Ok((0..steps).map(|k| from + (to - from) * k as f64 / (steps - 1) as f64).collect())
}

pub fn with_param(base: &Scenario, param: SweepParam, value: f64) -> Result<Scenario> {
    let mut s = base.clone();
    match param {
        SweepParam::G => s.g = value,
        SweepParam::F => match s.drive.amplitude_mut() {
            Some(f) => *f = value,
            None => return semantic("this drive has no single amplitude to sweep"),
        },
        SweepParam::Omega => match s.drive.frequency_mut() {
            Some(w) => *w = Frequency::Absolute(value),
            None => return semantic("this drive has no frequency to sweep"),
        },
    }
    Ok(s)
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub value: f64,
    pub outcome: std::result::Result<Vec<AverageRow>, String>,
}

/// Runs `base` at each value in parallel; rows keep the input order.
pub fn sweep(base: &Scenario, param: SweepParam, values: &[f64]) -> Result<Vec<SweepRow>> {
    if values.len() < 2 {
        return semantic(format!("sweep needs at least 2 points, got {}", values.len()));
    }
    // reject structurally impossible sweeps before fanning out
    with_param(base, param, values[0])?;
    Ok(values
        .par_iter()
        .map(|&value| {
            let outcome =
                with_param(base, param, value).and_then(|s| execute(&s)).map(|r| r.averages).map_err(|e| e.to_string());
            SweepRow { value, outcome }
        })
        .collect())
}

/// One CSV row per point; columns follow the methods of `base`.
pub fn sweep_csv(base: &Scenario, param: SweepParam, rows: &[SweepRow], precision: Precision) -> String {
    let d = precision.digits();
    let mut keys: Vec<(Method, &'static str)> = Vec::new();
    for &m in &base.methods {
        if m == Method::Rwa {
            keys.push((m, "closed-form"));
        }
        keys.push((m, "numerical"));
    }
    let mut header = vec![param.name().to_string()];
    for (m, source) in &keys {
        let tag = if *source == "closed-form" { m.name().to_string() } else { format!("{}_num", m.name()) };
        header.push(format!("{tag}_gamma_sq_av"));
        header.push(format!("{tag}_conc_sq_av"));
    }
    header.push("status".into());
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let mut fields = vec![sci(row.value, d)];
        match &row.outcome {
            Ok(avgs) => {
                for (m, source) in &keys {
                    match avgs.iter().find(|a| a.method == *m && a.source == *source) {
                        Some(a) => fields.extend([sci(a.corr_sq, d), sci(a.conc_sq, d)]),
                        None => fields.extend([String::new(), String::new()]),
                    }
                }
                fields.push("ok".into());
            }
            Err(msg) => {
                fields.extend(std::iter::repeat_n(String::new(), 2 * keys.len()));
                // keep the row a single CSV record
                fields.push(format!("failed: {}", msg.replace([',', '\n'], ";")));
            }
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
