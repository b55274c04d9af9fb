//! Config-driven scenario runner backing the `tcdyn` binary.
//!
//! A scenario is a JSON description of one computation: which quantity to
//! produce, the model parameters, the time grid, and which engines to run.
//! Results are written as CSV (default) or JSON files into an output
//! directory. Output is deterministic: the same config always produces
//! byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use ndarray::Array1;
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adiabatic::{
    manifold_levels, prob_extremal_return, prob_middle_return, AdiabaticCoherent,
};
use crate::dynamics::{linspace, Propagator};
use crate::entangle::{bell_coherent_initial, concurrence_x, reduce_to_qubits, ConcurrenceAnalytic};
use crate::error::{Result, TcdynError};
use crate::hamiltonian::{hamiltonian, ModelParams, Variant};
use crate::multiqubit::exact_vs_adiabatic_report;
use crate::revival::{
    peak_in_window, revival_schedule, revival_time_asymptotic, revival_time_overlap_gap,
    sliding_max, RevivalParams, SAnalytic,
};
use crate::special::displacement_matrix;
use crate::state::{default_n_max, displaced_coherent, JointBasis, JointState};
use crate::validity::{classify_validity, Region, ValidityThresholds};

/// What to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    /// Adiabatic and exact manifold triplets over a range of Fock indices.
    Spectrum,
    /// Return probability from one displaced number state.
    EvolveNumber,
    /// Collapse and revival of the coherent-state return probability.
    EvolveCoherent,
    /// Revival schedule (centers, heights, widths) over a coupling sweep.
    Revivals,
    /// Qubit-qubit concurrence dynamics from a Bell state.
    Concurrence,
    /// K-qubit exact vs adiabatic comparison.
    KQubit,
    /// Parameter-regime classification (always written as JSON).
    Validity,
    /// Engine cross-validation on the coherent return probability.
    Compare,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Spectrum => "spectrum",
            Scenario::EvolveNumber => "evolve_number",
            Scenario::EvolveCoherent => "evolve_coherent",
            Scenario::Revivals => "revivals",
            Scenario::Concurrence => "concurrence",
            Scenario::KQubit => "k_qubit",
            Scenario::Validity => "validity",
            Scenario::Compare => "compare",
        }
    }
}

/// Computation backends. Not every scenario supports every engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Truncated-Fock-space diagonalization of the full Hamiltonian.
    Exact,
    /// Manifold-by-manifold adiabatic treatment (numerically summed).
    Adiabatic,
    /// Closed-form revival-packet expressions.
    Analytic,
    /// Rotating-wave Hamiltonian, diagonalized exactly.
    Rwa,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Exact => "exact",
            Engine::Adiabatic => "adiabatic",
            Engine::Analytic => "analytic",
            Engine::Rwa => "rwa",
        }
    }
}

/// Whether grid values are raw times or scaled times `tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeScale {
    Raw,
    ScaledTau,
}

impl Default for TimeScale {
    fn default() -> Self {
        TimeScale::Raw
    }
}

/// Uniform time grid.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    #[serde(default)]
    pub start: f64,
    pub stop: f64,
    pub samples: usize,
    #[serde(default)]
    pub scale: TimeScale,
}

/// Manifold index range for the spectrum scenario.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldRange {
    pub lo: u32,
    pub hi: u32,
}

fn default_omega() -> f64 {
    1.0
}

fn default_k() -> u32 {
    2
}

fn default_k_max() -> u32 {
    3
}

fn default_well() -> i64 {
    -1
}

/// One scenario description, normally parsed from a JSON file. Unknown keys
/// are rejected so typos fail loudly.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    #[serde(default = "default_omega")]
    pub omega: f64,
    pub omega0: f64,
    pub beta: f64,
    #[serde(default)]
    pub alpha: f64,
    /// Fock index for `evolve_number`.
    #[serde(default)]
    pub n: u32,
    /// Qubit count for `evolve_coherent` (1 or 2) and `k_qubit`.
    #[serde(default = "default_k")]
    pub k: u32,
    /// Initial well for `evolve_number`: -1, 0, or 1.
    #[serde(default = "default_well")]
    pub well: i64,
    pub time: Option<TimeGrid>,
    pub engines: Option<Vec<Engine>>,
    /// Fock-space truncation override for exact engines.
    pub n_max: Option<usize>,
    /// Manifold range for `spectrum` (default 0..=12).
    pub manifolds: Option<ManifoldRange>,
    /// Coupling sweep for `revivals` (default: the single `beta`).
    pub beta_values: Option<Vec<f64>>,
    /// Number of revivals scheduled by `revivals`.
    #[serde(default = "default_k_max")]
    pub k_max: u32,
    /// Threshold overrides for `validity` and strict-mode checks.
    pub thresholds: Option<ValidityThresholds>,
    /// Output file stem (default: the scenario name).
    pub output: Option<String>,
}

impl ScenarioConfig {
    /// Model parameters implied by the config.
    pub fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.omega, self.omega0, self.beta)
    }
}

/// Parses a scenario config from a JSON file.
pub fn load_config(path: &Path) -> Result<ScenarioConfig> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| TcdynError::Config(format!("{}: {e}", path.display())))
}

/// Output file format for tabular results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Runner options supplied by the CLI (or test harness).
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    /// Refuse to run outside the regime the requested engines assume.
    pub strict: bool,
    /// Overrides the config's engine list.
    pub engines: Option<Vec<Engine>>,
}

impl RunOptions {
    pub fn new(out_dir: impl Into<PathBuf>) -> Self {
        Self {
            out_dir: out_dir.into(),
            format: OutputFormat::Csv,
            strict: false,
            engines: None,
        }
    }
}

/// One tabular result; written as CSV or embedded in JSON.
struct Table {
    /// Appended to the file stem; empty for the primary table.
    suffix: &'static str,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

/// One structured result; always written as JSON.
struct JsonDoc {
    suffix: &'static str,
    value: serde_json::Value,
}

struct Artifacts {
    tables: Vec<Table>,
    jsons: Vec<JsonDoc>,
    comments: Vec<String>,
}

impl Artifacts {
    fn new() -> Self {
        Self { tables: Vec::new(), jsons: Vec::new(), comments: Vec::new() }
    }
}

/// Per-revival-window cross-validation metrics between two population
/// traces (typically exact vs analytic).
#[derive(Debug, Clone, Serialize)]
pub struct WindowComparison {
    pub k: u32,
    pub tau_center: f64,
    pub t_center: f64,
    /// Largest gap between the two sliding-max envelopes in the window.
    pub max_envelope_diff: f64,
    pub peak_time_a: f64,
    pub peak_time_b: f64,
    pub peak_time_rel_diff: f64,
    pub peak_height_a: f64,
    pub peak_height_b: f64,
    pub peak_height_diff: f64,
}

/// Pointwise deviation between two engines on the shared grid.
#[derive(Debug, Clone, Serialize)]
pub struct PairDeviation {
    pub a: &'static str,
    pub b: &'static str,
    pub max_abs_diff: f64,
    pub rms_diff: f64,
}

/// Engine cross-validation summary on a common time grid.
#[derive(Debug, Clone, Serialize)]
pub struct EngineComparison {
    /// Pointwise deviations for every engine pair.
    pub pairs: Vec<PairDeviation>,
    /// Feature comparison between exact and analytic, one per revival;
    /// empty when either engine is absent.
    pub windows: Vec<WindowComparison>,
}

/// Compares population traces from several engines on a common uniform
/// raw-time grid: pointwise max/RMS deviations for every pair, plus
/// per-revival-window feature metrics between `Exact` and `Analytic` when
/// both are present.
pub fn compare_engines(
    rp: &RevivalParams,
    ts: &[f64],
    traces: &[(Engine, Vec<f64>)],
) -> Result<EngineComparison> {
    if ts.len() < 8 || traces.len() < 2 || traces.iter().any(|(_, tr)| tr.len() != ts.len()) {
        return Err(TcdynError::InvalidParams(
            "engine comparison needs at least two equal-length traces on a grid of at \
             least 8 points"
                .into(),
        ));
    }
    let mut pairs = Vec::new();
    for i in 0..traces.len() {
        for j in (i + 1)..traces.len() {
            let (ea, ta) = &traces[i];
            let (eb, tb) = &traces[j];
            let mut max_abs: f64 = 0.0;
            let mut sq = 0.0;
            for (a, b) in ta.iter().zip(tb) {
                let d = (a - b).abs();
                max_abs = max_abs.max(d);
                sq += d * d;
            }
            pairs.push(PairDeviation {
                a: ea.name(),
                b: eb.name(),
                max_abs_diff: max_abs,
                rms_diff: (sq / ts.len() as f64).sqrt(),
            });
        }
    }

    let exact = traces.iter().find(|(e, _)| *e == Engine::Exact).map(|(_, t)| t);
    let analytic = traces.iter().find(|(e, _)| *e == Engine::Analytic).map(|(_, t)| t);
    let windows = match (exact, analytic) {
        (Some(exact), Some(analytic)) => revival_window_metrics(rp, ts, exact, analytic),
        _ => Vec::new(),
    };
    Ok(EngineComparison { pairs, windows })
}

/// Per-revival feature metrics between a reference trace and a candidate:
/// envelope gap, peak time, and peak height in each window `tau_k +- 2
/// dtau_k` that fits the grid.
pub fn revival_window_metrics(
    rp: &RevivalParams,
    ts: &[f64],
    reference: &[f64],
    candidate: &[f64],
) -> Vec<WindowComparison> {
    let dt = ts[1] - ts[0];
    let dtau = rp.tau(dt) - rp.tau(0.0);
    let half_window = ((rp.width_tau0() / 2.0) / dtau).round().max(1.0) as usize;
    let env_a = sliding_max(reference, half_window);
    let env_w = sliding_max(candidate, half_window);

    let tau_max = rp.tau(*ts.last().unwrap());
    let mut windows = Vec::new();
    let mut k = 1u32;
    loop {
        let tau_c = rp.tau_k(k);
        let half = 2.0 * rp.width_tau(k);
        if tau_c + half > tau_max {
            break;
        }
        let t_lo = rp.t_of_tau(tau_c - half);
        let t_hi = rp.t_of_tau(tau_c + half);
        let mut env_diff: f64 = 0.0;
        for (i, &t) in ts.iter().enumerate() {
            if t >= t_lo && t <= t_hi {
                env_diff = env_diff.max((env_a[i] - env_w[i]).abs());
            }
        }
        let pa = peak_in_window(ts, reference, t_lo, t_hi);
        let pw = peak_in_window(ts, candidate, t_lo, t_hi);
        if let (Some(pa), Some(pw)) = (pa, pw) {
            let t_c = rp.t_of_tau(tau_c);
            windows.push(WindowComparison {
                k,
                tau_center: tau_c,
                t_center: t_c,
                max_envelope_diff: env_diff,
                peak_time_a: pa.t,
                peak_time_b: pw.t,
                peak_time_rel_diff: (pa.t - pw.t).abs() / t_c,
                peak_height_a: pa.height,
                peak_height_b: pw.height,
                peak_height_diff: (pa.height - pw.height).abs(),
            });
        }
        k += 1;
    }
    windows
}

/// Runs one scenario and writes its artifacts. Returns the paths written.
pub fn run_scenario(cfg: &ScenarioConfig, opts: &RunOptions) -> Result<Vec<PathBuf>> {
    let params = cfg.params()?;
    if !cfg.alpha.is_finite() || cfg.alpha < 0.0 {
        return Err(TcdynError::Config("alpha must be finite and non-negative".into()));
    }
    let engines = resolved_engines(cfg, opts)?;
    check_regime(cfg, params, &engines, opts.strict)?;

    let mut artifacts = Artifacts::new();
    let thresholds = cfg.thresholds.unwrap_or_default();
    let report = classify_validity(params, cfg.alpha, &thresholds);
    artifacts
        .comments
        .push(format!("region={}", region_name(report.region)));
    for w in &report.warnings {
        artifacts.comments.push(format!("warning: {w}"));
    }

    match cfg.scenario {
        Scenario::Spectrum => run_spectrum(cfg, params, &engines, &mut artifacts)?,
        Scenario::EvolveNumber => run_evolve_number(cfg, params, &engines, &mut artifacts)?,
        Scenario::EvolveCoherent => run_evolve_coherent(cfg, params, &engines, &mut artifacts)?,
        Scenario::Revivals => run_revivals(cfg, params, &mut artifacts)?,
        Scenario::Concurrence => run_concurrence(cfg, params, &engines, &mut artifacts)?,
        Scenario::KQubit => run_k_qubit(cfg, params, &mut artifacts)?,
        Scenario::Validity => {
            artifacts.jsons.push(JsonDoc {
                suffix: "",
                value: serde_json::to_value(&report)?,
            });
        }
        Scenario::Compare => run_compare(cfg, params, &engines, &mut artifacts)?,
    }

    write_artifacts(cfg, opts, artifacts)
}

fn region_name(r: Region) -> &'static str {
    match r {
        Region::Region1 => "region1",
        Region::Region2 => "region2",
        Region::Region3 => "region3",
        Region::Outside => "outside",
    }
}

fn resolved_engines(cfg: &ScenarioConfig, opts: &RunOptions) -> Result<Vec<Engine>> {
    let supported: &[Engine] = match cfg.scenario {
        Scenario::Spectrum => &[Engine::Exact, Engine::Adiabatic],
        Scenario::EvolveNumber => &[Engine::Exact, Engine::Adiabatic, Engine::Rwa],
        Scenario::EvolveCoherent => {
            &[Engine::Exact, Engine::Adiabatic, Engine::Analytic, Engine::Rwa]
        }
        Scenario::Revivals => &[Engine::Analytic],
        Scenario::Concurrence => &[Engine::Exact, Engine::Analytic],
        Scenario::KQubit => &[Engine::Exact, Engine::Adiabatic],
        Scenario::Validity => &[],
        Scenario::Compare => {
            &[Engine::Exact, Engine::Adiabatic, Engine::Analytic, Engine::Rwa]
        }
    };
    let requested = opts
        .engines
        .clone()
        .or_else(|| cfg.engines.clone())
        .unwrap_or_else(|| supported.to_vec());
    if cfg.scenario == Scenario::Validity {
        return Ok(Vec::new());
    }
    if requested.is_empty() {
        return Err(TcdynError::Config("engine list must not be empty".into()));
    }
    let mut engines = Vec::new();
    for e in requested {
        if !supported.contains(&e) {
            return Err(TcdynError::Config(format!(
                "engine '{}' is not supported by scenario '{}'",
                e.name(),
                cfg.scenario.name()
            )));
        }
        if !engines.contains(&e) {
            engines.push(e);
        }
    }
    Ok(engines)
}

fn check_regime(
    cfg: &ScenarioConfig,
    params: ModelParams,
    engines: &[Engine],
    strict: bool,
) -> Result<()> {
    if !strict {
        return Ok(());
    }
    let thresholds = cfg.thresholds.unwrap_or_default();
    let report = classify_validity(params, cfg.alpha, &thresholds);
    let mut failures = Vec::new();
    let needs_region1 = matches!(
        cfg.scenario,
        Scenario::EvolveCoherent | Scenario::Revivals | Scenario::Concurrence | Scenario::Compare
    ) && engines
        .iter()
        .any(|e| matches!(e, Engine::Adiabatic | Engine::Analytic));
    if needs_region1 && !report.region1_eligible {
        failures.push("the closed-form treatment requires region 1");
    }
    let needs_region2 = matches!(cfg.scenario, Scenario::Spectrum | Scenario::EvolveNumber | Scenario::KQubit)
        && engines.iter().any(|e| matches!(e, Engine::Adiabatic));
    if needs_region2 && !report.region2_eligible {
        failures.push("the adiabatic spectrum requires region 2");
    }
    // The rotating-wave engine is deliberately usable outside region 3: its
    // main role here is demonstrating breakdown against the exact engine.
    if failures.is_empty() {
        Ok(())
    } else {
        Err(TcdynError::Strict(failures.join("; ")))
    }
}

fn time_grid(cfg: &ScenarioConfig) -> Result<TimeGrid> {
    let grid = cfg.time.ok_or_else(|| {
        TcdynError::Config(format!(
            "scenario '{}' requires a time grid",
            cfg.scenario.name()
        ))
    })?;
    if !(grid.start.is_finite() && grid.stop.is_finite()) || grid.stop <= grid.start {
        return Err(TcdynError::Config("time grid must satisfy start < stop".into()));
    }
    if grid.samples < 2 {
        return Err(TcdynError::Config("time grid needs at least 2 samples".into()));
    }
    if grid.start < 0.0 {
        return Err(TcdynError::Config("time grid must start at t >= 0".into()));
    }
    Ok(grid)
}

/// Raw times plus, when a coherent scale exists, the matching scaled times.
fn resolve_times(grid: TimeGrid, rp: Option<&RevivalParams>) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    match grid.scale {
        TimeScale::Raw => {
            let ts = linspace(grid.start, grid.stop, grid.samples);
            let taus = rp.map(|rp| ts.iter().map(|&t| rp.tau(t)).collect());
            Ok((ts, taus))
        }
        TimeScale::ScaledTau => {
            let rp = rp.ok_or_else(|| {
                TcdynError::Config(
                    "scale 'scaled_tau' only applies to coherent-state scenarios".into(),
                )
            })?;
            let taus = linspace(grid.start, grid.stop, grid.samples);
            let ts = taus.iter().map(|&tau| rp.t_of_tau(tau)).collect();
            Ok((ts, Some(taus)))
        }
    }
}

fn exact_fock_dim(cfg: &ScenarioConfig) -> usize {
    cfg.n_max.unwrap_or_else(|| default_n_max(cfg.alpha)) + 1
}

/// Exact manifold triplets: eigenvalues of the full (two-qubit) Hamiltonian
/// clustered by nearest integer manifold. Fails when a manifold does not
/// contain exactly three levels, i.e. outside the quasi-degenerate regime.
pub fn exact_manifold_levels(
    params: ModelParams,
    lo: u32,
    hi: u32,
    n_max: usize,
) -> Result<Vec<[f64; 3]>> {
    let h = hamiltonian(Variant::Full, params, 2, n_max);
    let (evals, _) = h.eigh(UPLO::Lower)?;
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    for n in lo..=hi {
        let c = n as f64 * params.omega;
        let half = 0.5 * params.omega;
        let members: Vec<f64> = evals
            .iter()
            .copied()
            .filter(|&e| e >= c - half && e < c + half)
            .collect();
        if members.len() != 3 {
            return Err(TcdynError::InvalidParams(format!(
                "manifold {n} holds {} levels instead of 3; the spectrum is not \
                 quasi-degenerate at these parameters",
                members.len()
            )));
        }
        out.push([members[0], members[1], members[2]]);
    }
    Ok(out)
}

fn run_spectrum(
    cfg: &ScenarioConfig,
    params: ModelParams,
    engines: &[Engine],
    artifacts: &mut Artifacts,
) -> Result<()> {
    let range = cfg.manifolds.unwrap_or(ManifoldRange { lo: 0, hi: 12 });
    if range.hi < range.lo {
        return Err(TcdynError::Config("manifold range must satisfy lo <= hi".into()));
    }
    let mut columns = vec!["n".to_string()];
    let want_adiabatic = engines.contains(&Engine::Adiabatic);
    let want_exact = engines.contains(&Engine::Exact);
    if want_adiabatic {
        for s in ["adiabatic_minus", "adiabatic_zero", "adiabatic_plus"] {
            columns.push(s.into());
        }
    }
    if want_exact {
        for s in ["exact_minus", "exact_zero", "exact_plus"] {
            columns.push(s.into());
        }
    }
    let exact = if want_exact {
        let n_max = cfg.n_max.unwrap_or(range.hi as usize + 40);
        Some(exact_manifold_levels(params, range.lo, range.hi, n_max)?)
    } else {
        None
    };
    let mut rows = Vec::new();
    for n in range.lo..=range.hi {
        let mut row = vec![n as f64];
        if want_adiabatic {
            let levels = manifold_levels(params, n);
            row.extend_from_slice(&levels);
        }
        if let Some(exact) = &exact {
            row.extend_from_slice(&exact[(n - range.lo) as usize]);
        }
        rows.push(row);
    }
    artifacts.tables.push(Table { suffix: "", columns, rows });
    Ok(())
}

/// Survival probability of the (normalized) initial vector along a trajectory.
fn survival_trace(prop: &Propagator, psi0: &Array1<Complex64>, ts: &[f64]) -> Vec<f64> {
    let states = prop.evolve_many(psi0, ts);
    states
        .iter()
        .map(|psi| {
            let overlap: Complex64 = psi0.iter().zip(psi.iter()).map(|(a, b)| a.conj() * b).sum();
            overlap.norm_sqr()
        })
        .collect()
}

/// Population of one spin label, summed over the oscillator.
fn label_population(basis: &JointBasis, psi: &Array1<Complex64>, label_idx: usize) -> f64 {
    let fock = basis.fock_dim();
    psi.iter()
        .skip(label_idx * fock)
        .take(fock)
        .map(|c| c.norm_sqr())
        .sum()
}

/// Validated revival-scale parameters for coherent-state scenarios.
fn revival_params(alpha: f64, beta: f64, omega0: f64) -> Result<RevivalParams> {
    if alpha <= 0.0 || beta == 0.0 || omega0 == 0.0 {
        return Err(TcdynError::Config(
            "coherent-state scenarios need alpha > 0, beta != 0, and omega0 != 0".into(),
        ));
    }
    Ok(RevivalParams { alpha, beta, omega0 })
}

fn run_evolve_number(
    cfg: &ScenarioConfig,
    params: ModelParams,
    engines: &[Engine],
    artifacts: &mut Artifacts,
) -> Result<()> {
    if !matches!(cfg.well, -1 | 0 | 1) {
        return Err(TcdynError::Config("well must be -1, 0, or 1".into()));
    }
    let grid = time_grid(cfg)?;
    let (ts, _) = resolve_times(grid, None)?;
    let n_max = cfg.n_max.unwrap_or(cfg.n as usize + 60);
    let basis = JointBasis::new(2, n_max);
    if cfg.n as usize >= basis.fock_dim() {
        return Err(TcdynError::Config("n must lie inside the truncated fock space".into()));
    }
    // Well states are displaced number states: the m-th well sits at D(-m beta)|n>.
    let d = -(cfg.well as f64) * params.beta;
    let osc = displacement_matrix(d, basis.fock_dim()).column(cfg.n as usize).to_owned();
    let label_idx = (1 - cfg.well) as usize;

    let mut columns = vec!["t".to_string()];
    let mut traces: Vec<Vec<f64>> = Vec::new();
    for &engine in engines {
        match engine {
            Engine::Exact | Engine::Rwa => {
                let variant = if engine == Engine::Exact { Variant::Full } else { Variant::Rwa };
                let state = JointState::product(basis, label_idx, osc.view())?;
                let h = hamiltonian(variant, params, 2, n_max);
                let prop = Propagator::new(&h)?;
                columns.push(engine.name().to_string());
                traces.push(survival_trace(&prop, &state.psi, &ts));
            }
            Engine::Adiabatic => {
                columns.push("adiabatic".to_string());
                let trace = ts
                    .iter()
                    .map(|&t| {
                        if cfg.well == 0 {
                            prob_middle_return(params, cfg.n, t)
                        } else {
                            prob_extremal_return(params, cfg.n, t)
                        }
                    })
                    .collect();
                traces.push(trace);
            }
            Engine::Analytic => unreachable!("rejected by resolved_engines"),
        }
    }
    let rows = ts
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let mut row = vec![t];
            row.extend(traces.iter().map(|tr| tr[i]));
            row
        })
        .collect();
    artifacts.tables.push(Table { suffix: "", columns, rows });
    Ok(())
}

/// Exact coherent-state traces shared by `evolve_coherent` and `compare`:
/// population of the lowest spin label over time.
fn exact_coherent_trace(
    cfg: &ScenarioConfig,
    params: ModelParams,
    variant: Variant,
    two_j: u32,
    displacement: f64,
    ts: &[f64],
) -> Result<Vec<f64>> {
    let n_max = exact_fock_dim(cfg) - 1;
    let basis = JointBasis::new(two_j, n_max);
    let osc = displaced_coherent(cfg.alpha, displacement, n_max);
    let state = JointState::product(basis, basis.spin_dim() - 1, osc.view())?;
    state.check_truncation(1e-8)?;
    let h = hamiltonian(variant, params, two_j, n_max);
    let prop = Propagator::new(&h)?;
    let states = prop.evolve_many(&state.psi, ts);
    Ok(states
        .iter()
        .map(|psi| label_population(&state.basis, psi, state.basis.spin_dim() - 1))
        .collect())
}

fn run_evolve_coherent(
    cfg: &ScenarioConfig,
    params: ModelParams,
    engines: &[Engine],
    artifacts: &mut Artifacts,
) -> Result<()> {
    if !matches!(cfg.k, 1 | 2) {
        return Err(TcdynError::Config("evolve_coherent supports k = 1 or k = 2".into()));
    }
    let grid = time_grid(cfg)?;
    let rp = revival_params(cfg.alpha, params.beta, params.omega0)?;
    let (ts, taus) = resolve_times(grid, Some(&rp))?;
    let taus = taus.expect("revival params were supplied");
    let tau_max = *taus.last().unwrap();
    let (two_j, displacement) = if cfg.k == 2 { (2, params.beta) } else { (1, params.beta / 2.0) };

    let mut columns = vec!["t".to_string(), "tau".to_string()];
    let mut traces: Vec<Vec<f64>> = Vec::new();
    for &engine in engines {
        columns.push(engine.name().to_string());
        match engine {
            Engine::Exact | Engine::Rwa => {
                let variant = if engine == Engine::Exact { Variant::Full } else { Variant::Rwa };
                traces.push(exact_coherent_trace(cfg, params, variant, two_j, displacement, &ts)?);
            }
            Engine::Adiabatic => {
                let model = AdiabaticCoherent::new(params, cfg.alpha)?;
                let trace = ts
                    .iter()
                    .map(|&t| {
                        if cfg.k == 2 {
                            model.prob_two_qubit(t)
                        } else {
                            model.prob_single_qubit(t)
                        }
                    })
                    .collect();
                traces.push(trace);
            }
            Engine::Analytic => {
                let s = SAnalytic::new(rp, 2.0 * tau_max)?;
                let trace = taus
                    .iter()
                    .map(|&tau| {
                        if cfg.k == 2 {
                            0.375 + 0.5 * s.eval(tau) + 0.125 * s.eval(2.0 * tau)
                        } else {
                            0.5 * (1.0 + s.eval(tau))
                        }
                    })
                    .collect();
                traces.push(trace);
            }
        }
    }
    let rows = ts
        .iter()
        .zip(&taus)
        .enumerate()
        .map(|(i, (&t, &tau))| {
            let mut row = vec![t, tau];
            row.extend(traces.iter().map(|tr| tr[i]));
            row
        })
        .collect();
    artifacts.tables.push(Table { suffix: "", columns, rows });
    Ok(())
}

fn run_revivals(cfg: &ScenarioConfig, params: ModelParams, artifacts: &mut Artifacts) -> Result<()> {
    let betas = cfg.beta_values.clone().unwrap_or_else(|| vec![params.beta]);
    if betas.is_empty() {
        return Err(TcdynError::Config("beta_values must not be empty".into()));
    }
    let k_max = cfg.k_max.max(1);
    let per_beta: Vec<Result<Vec<Vec<f64>>>> = betas
        .par_iter()
        .map(|&beta| {
            let rp = revival_params(cfg.alpha, beta, params.omega0)?;
            let schedule = revival_schedule(&rp, k_max);
            let asym = revival_time_asymptotic(&rp).unwrap_or(f64::NAN);
            let gap = revival_time_overlap_gap(&rp).unwrap_or(f64::NAN);
            Ok(schedule
                .iter()
                .map(|w| {
                    vec![
                        beta,
                        w.k as f64,
                        w.tau_center,
                        w.t_center,
                        w.height,
                        w.width_tau,
                        asym,
                        gap,
                    ]
                })
                .collect())
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_beta {
        rows.extend(r?);
    }
    let columns = ["beta", "k", "tau_center", "t_center", "height", "width_tau", "t_asymptotic", "t_overlap_gap"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    artifacts.tables.push(Table { suffix: "", columns, rows });
    Ok(())
}

fn run_concurrence(
    cfg: &ScenarioConfig,
    params: ModelParams,
    engines: &[Engine],
    artifacts: &mut Artifacts,
) -> Result<()> {
    let grid = time_grid(cfg)?;
    let rp = revival_params(cfg.alpha, params.beta, params.omega0)?;
    let (ts, taus) = resolve_times(grid, Some(&rp))?;
    let taus = taus.expect("revival params were supplied");
    let tau_max = *taus.last().unwrap();

    let mut columns = vec!["t".to_string(), "tau".to_string()];
    let mut traces: Vec<Vec<f64>> = Vec::new();
    for &engine in engines {
        match engine {
            Engine::Exact => {
                columns.push("exact".to_string());
                let n_max = exact_fock_dim(cfg) - 1;
                let state = bell_coherent_initial(cfg.alpha, n_max)?;
                state.check_truncation(1e-8)?;
                let h = hamiltonian(Variant::Full, params, 2, n_max);
                let prop = Propagator::new(&h)?;
                let states = prop.evolve_many(&state.psi, &ts);
                let mut trace = Vec::with_capacity(ts.len());
                for psi in &states {
                    let evolved = JointState { basis: state.basis, psi: psi.clone() };
                    let rho = reduce_to_qubits(&evolved)?;
                    trace.push(concurrence_x(&rho, 1e-6)?);
                }
                traces.push(trace);
            }
            Engine::Analytic => {
                columns.push("analytic".to_string());
                columns.push("envelope".to_string());
                let ca = ConcurrenceAnalytic::new(rp, tau_max)?;
                traces.push(taus.iter().map(|&tau| ca.eval_tau(tau)).collect());
                traces.push(taus.iter().map(|&tau| ca.envelope_tau(tau)).collect());
            }
            _ => unreachable!("rejected by resolved_engines"),
        }
    }
    let rows = ts
        .iter()
        .zip(&taus)
        .enumerate()
        .map(|(i, (&t, &tau))| {
            let mut row = vec![t, tau];
            row.extend(traces.iter().map(|tr| tr[i]));
            row
        })
        .collect();
    artifacts.tables.push(Table { suffix: "", columns, rows });
    Ok(())
}

fn run_k_qubit(cfg: &ScenarioConfig, params: ModelParams, artifacts: &mut Artifacts) -> Result<()> {
    let grid = time_grid(cfg)?;
    if grid.scale == TimeScale::ScaledTau {
        return Err(TcdynError::Config(
            "scale 'scaled_tau' only applies to coherent-state scenarios".into(),
        ));
    }
    let report = exact_vs_adiabatic_report(cfg.k, params, cfg.alpha, grid.stop, grid.samples)?;
    let columns = ["t", "exact", "adiabatic"].iter().map(|s| s.to_string()).collect();
    let rows = report
        .ts
        .iter()
        .zip(report.exact.iter().zip(&report.adiabatic))
        .map(|(&t, (&e, &a))| vec![t, e, a])
        .collect();
    artifacts.tables.push(Table { suffix: "", columns, rows });
    artifacts.jsons.push(JsonDoc { suffix: "_report", value: serde_json::to_value(&report)? });
    Ok(())
}

fn run_compare(
    cfg: &ScenarioConfig,
    params: ModelParams,
    engines: &[Engine],
    artifacts: &mut Artifacts,
) -> Result<()> {
    let grid = time_grid(cfg)?;
    let rp = revival_params(cfg.alpha, params.beta, params.omega0)?;
    let (ts, taus) = resolve_times(grid, Some(&rp))?;
    let taus = taus.expect("revival params were supplied");
    let tau_max = *taus.last().unwrap();

    let mut traces: Vec<(Engine, Vec<f64>)> = Vec::new();
    for &engine in engines {
        let trace = match engine {
            Engine::Exact => exact_coherent_trace(cfg, params, Variant::Full, 2, params.beta, &ts)?,
            Engine::Rwa => exact_coherent_trace(cfg, params, Variant::Rwa, 2, params.beta, &ts)?,
            Engine::Adiabatic => {
                let model = AdiabaticCoherent::new(params, cfg.alpha)?;
                ts.iter().map(|&t| model.prob_two_qubit(t)).collect()
            }
            Engine::Analytic => {
                let s = SAnalytic::new(rp, 2.0 * tau_max)?;
                taus.iter()
                    .map(|&tau| 0.375 + 0.5 * s.eval(tau) + 0.125 * s.eval(2.0 * tau))
                    .collect()
            }
        };
        traces.push((engine, trace));
    }

    let comparison = compare_engines(&rp, &ts, &traces)?;

    let mut columns = vec!["t".to_string(), "tau".to_string()];
    columns.extend(traces.iter().map(|(e, _)| e.name().to_string()));
    let rows = ts
        .iter()
        .zip(&taus)
        .enumerate()
        .map(|(i, (&t, &tau))| {
            let mut row = vec![t, tau];
            row.extend(traces.iter().map(|(_, tr)| tr[i]));
            row
        })
        .collect();
    artifacts.tables.push(Table { suffix: "", columns, rows });
    artifacts
        .jsons
        .push(JsonDoc { suffix: "_metrics", value: serde_json::to_value(&comparison)? });
    Ok(())
}

fn params_comment(cfg: &ScenarioConfig) -> String {
    format!(
        "omega={} omega0={} beta={} alpha={} n={} k={}",
        cfg.omega, cfg.omega0, cfg.beta, cfg.alpha, cfg.n, cfg.k
    )
}

fn write_artifacts(
    cfg: &ScenarioConfig,
    opts: &RunOptions,
    artifacts: Artifacts,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(&opts.out_dir)?;
    let stem = cfg.output.clone().unwrap_or_else(|| cfg.scenario.name().to_string());
    let mut written = Vec::new();

    for table in &artifacts.tables {
        let path = match opts.format {
            OutputFormat::Csv => opts.out_dir.join(format!("{stem}{}.csv", table.suffix)),
            OutputFormat::Json => opts.out_dir.join(format!("{stem}{}.json", table.suffix)),
        };
        let body = match opts.format {
            OutputFormat::Csv => render_csv(cfg, &artifacts.comments, table),
            OutputFormat::Json => render_json_table(cfg, &artifacts.comments, table)?,
        };
        fs::write(&path, body)?;
        written.push(path);
    }
    for doc in &artifacts.jsons {
        let path = opts.out_dir.join(format!("{stem}{}.json", doc.suffix));
        let mut body = serde_json::to_string_pretty(&doc.value)?;
        body.push('\n');
        fs::write(&path, body)?;
        written.push(path);
    }
    Ok(written)
}

fn render_csv(cfg: &ScenarioConfig, comments: &[String], table: &Table) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# tcdyn v{} scenario={}",
        env!("CARGO_PKG_VERSION"),
        cfg.scenario.name()
    );
    let _ = writeln!(out, "# {}", params_comment(cfg));
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{}", table.columns.join(","));
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

fn render_json_table(
    cfg: &ScenarioConfig,
    comments: &[String],
    table: &Table,
) -> Result<String> {
    let data: Vec<Vec<serde_json::Value>> = table
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| {
                    if v.is_finite() {
                        serde_json::Value::from(v)
                    } else {
                        serde_json::Value::Null
                    }
                })
                .collect()
        })
        .collect();
    let doc = serde_json::json!({
        "version": env!("CARGO_PKG_VERSION"),
        "scenario": cfg.scenario.name(),
        "params": params_comment(cfg),
        "comments": comments,
        "columns": table.columns,
        "data": data,
    });
    let mut body = serde_json::to_string_pretty(&doc)?;
    body.push('\n');
    Ok(body)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_config(scenario: Scenario) -> ScenarioConfig {
        ScenarioConfig {
            scenario,
            omega: 1.0,
            omega0: 0.15,
            beta: 0.16,
            alpha: 3.0,
            n: 9,
            k: 2,
            well: -1,
            time: Some(TimeGrid { start: 0.0, stop: 200.0, samples: 41, scale: TimeScale::Raw }),
            engines: None,
            n_max: None,
            manifolds: None,
            beta_values: None,
            k_max: 2,
            thresholds: None,
            output: None,
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{"scenario": "spectrum", "omega0": 0.15, "beta": 0.16, "bogus": 1}"#;
        let parsed: std::result::Result<ScenarioConfig, _> = serde_json::from_str(text);
        assert!(parsed.is_err());
    }

    #[test]
    fn spectrum_runs_and_writes_csv() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = base_config(Scenario::Spectrum);
        cfg.manifolds = Some(ManifoldRange { lo: 0, hi: 3 });
        cfg.n_max = Some(30);
        let paths = run_scenario(&cfg, &RunOptions::new(dir.path())).unwrap();
        assert_eq!(paths.len(), 1);
        let body = fs::read_to_string(&paths[0]).unwrap();
        assert!(body.starts_with("# tcdyn v"));
        assert!(body.contains("scenario=spectrum"));
        // 4 manifold rows plus comments and header.
        assert_eq!(body.lines().filter(|l| !l.starts_with('#')).count(), 5);
    }

    #[test]
    fn strict_mode_rejects_out_of_regime_requests() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = base_config(Scenario::EvolveCoherent);
        cfg.omega0 = 0.5;
        let mut opts = RunOptions::new(dir.path());
        opts.strict = true;
        let err = run_scenario(&cfg, &opts).unwrap_err();
        assert!(matches!(err, TcdynError::Strict(_)));
    }

    #[test]
    fn deterministic_output() {
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        let mut cfg = base_config(Scenario::Revivals);
        cfg.beta_values = Some(vec![0.1, 0.15, 0.2]);
        let a = run_scenario(&cfg, &RunOptions::new(dir_a.path())).unwrap();
        let b = run_scenario(&cfg, &RunOptions::new(dir_b.path())).unwrap();
        let body_a = fs::read(&a[0]).unwrap();
        let body_b = fs::read(&b[0]).unwrap();
        assert_eq!(body_a, body_b);
    }
}
