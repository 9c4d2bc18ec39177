//! Batch experiment runner behind the `pauli-ops` binary.
//!
//! A run is described by an [`ExperimentConfig`] (JSON), optionally patched
//! by command-line flags. Every run writes its primary output (CSV, or a text
//! dump for `visualize`) and a `<out>.manifest.json` next to it.
//!
//! Exit codes: `0` ok, `1` configuration error, `2` runtime abort or failed
//! `--verify` cross-check.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::dynamics::{evolve, evolve_two_point, EvolutionTrace, EvolveConfig};
use crate::error::PauliError;
use crate::krylov::{lanczos_verbose, lanczos_with, LanczosOptions, LanczosRun, Termination};
use crate::models::{initial_operator, Boundary, ModelDescriptor};
use crate::operator::{Operator, TrimPolicy};
use crate::oracle::{self, DenseOperator, MAX_LANCZOS_SITES};
use crate::string::{Bits, Pauli, PauliTerm};
use crate::symmetric::SymOperator1D;

/// Rough bytes held per stored string, hash-table slack included.
const BYTES_PER_TERM: f64 = 64.0;
const LANCZOS_TOLERANCE: f64 = 1e-6;
const EVOLVE_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Evolve,
    Twopoint,
    Lanczos,
    Visualize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub model: ModelDescriptor,
    /// Name understood by [`initial_operator`]; unused by `twopoint`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<String>,
    /// `log2 M`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trim: Option<u32>,
    /// `M`, as an alternative to `trim`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_strings: Option<usize>,
    #[serde(default)]
    pub noise: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<f64>,
    /// Source site of the two-point run (default `N / 2`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub verify: bool,
    #[serde(default)]
    pub translation_symmetric: bool,
    #[serde(default = "default_mem_limit")]
    pub mem_limit_gb: f64,
}

fn default_mem_limit() -> f64 {
    8.0
}

impl ExperimentConfig {
    pub fn new(mode: Mode, model: ModelDescriptor) -> Self {
        Self {
            mode,
            model,
            initial: None,
            trim: None,
            max_strings: None,
            noise: 0.0,
            dt: None,
            t_max: None,
            steps: None,
            cutoff: None,
            source: None,
            out: None,
            verify: false,
            translation_symmetric: false,
            mem_limit_gb: default_mem_limit(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, RunError> {
        serde_json::from_str(text).map_err(|e| RunError::Config(format!("bad config: {e}")))
    }

    /// `M`, from either `max_strings` or `trim`.
    pub fn trim_size(&self) -> Option<usize> {
        self.max_strings.or(self.trim.map(|t| 1usize << t))
    }

    pub fn output_path(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| {
            PathBuf::from(match self.mode {
                Mode::Evolve => "evolve.csv",
                Mode::Twopoint => "twopoint.csv",
                Mode::Lanczos => "lanczos.csv",
                Mode::Visualize => "visualize.txt",
            })
        })
    }

    pub fn manifest_path(&self) -> PathBuf {
        let mut p = self.output_path().into_os_string();
        p.push(".manifest.json");
        PathBuf::from(p)
    }

    /// Strings allowed per operator before the run aborts.
    pub fn term_limit(&self) -> usize {
        let live = match self.mode {
            Mode::Evolve | Mode::Twopoint => 6.0,
            Mode::Lanczos | Mode::Visualize => 4.0,
        };
        (self.mem_limit_gb * 1e9 / (BYTES_PER_TERM * live)) as usize
    }

    pub fn validate(&self) -> Result<(), RunError> {
        let bad = |m: String| Err(RunError::Config(m));
        if self.trim.is_some() && self.max_strings.is_some() {
            return bad("give either trim or max_strings, not both".into());
        }
        if let Some(t) = self.trim {
            if t >= usize::BITS {
                return bad(format!("trim {t} is too large"));
            }
        }
        if self.max_strings == Some(0) {
            return bad("max_strings must be at least 1".into());
        }
        if !(self.noise >= 0.0) || !self.noise.is_finite() {
            return bad(format!("noise must be non-negative, got {}", self.noise));
        }
        if !(self.mem_limit_gb > 0.0) {
            return bad(format!("mem_limit_gb must be positive, got {}", self.mem_limit_gb));
        }
        match self.mode {
            Mode::Evolve | Mode::Twopoint => {
                let Some(dt) = self.dt else {
                    return bad(format!("{:?} mode needs dt", self.mode));
                };
                if !(dt > 0.0) {
                    return bad(format!("dt must be positive, got {dt}"));
                }
                match self.t_max {
                    Some(t) if t >= 0.0 => {}
                    Some(t) => return bad(format!("t_max must be non-negative, got {t}")),
                    None => return bad(format!("{:?} mode needs t_max", self.mode)),
                }
                if self.steps.is_some() {
                    return bad("steps conflicts with time-evolution modes; use t_max".into());
                }
                if self.mode == Mode::Evolve && self.initial.is_none() {
                    return bad("evolve mode needs an initial operator".into());
                }
                if self.mode == Mode::Twopoint && self.initial.is_some() {
                    return bad("twopoint mode always starts from Z on the source site".into());
                }
            }
            Mode::Lanczos | Mode::Visualize => {
                if self.steps.is_none() {
                    return bad(format!("{:?} mode needs steps", self.mode));
                }
                if self.initial.is_none() {
                    return bad(format!("{:?} mode needs an initial operator", self.mode));
                }
                if self.t_max.is_some() || self.dt.is_some() {
                    return bad("dt/t_max conflict with Krylov modes; use steps".into());
                }
                if self.noise != 0.0 {
                    return bad("noise applies only to time evolution".into());
                }
            }
        }
        if self.translation_symmetric && self.mode != Mode::Lanczos {
            return bad("--translation-symmetric is only supported in lanczos mode".into());
        }
        if self.mode == Mode::Visualize && (self.trim_size().is_some() || self.cutoff.is_some()) {
            return bad("visualize mode uses a fixed 1e-10 cutoff and no trim".into());
        }
        if self.source.is_some() && self.mode != Mode::Twopoint {
            return bad("source applies only to twopoint mode".into());
        }
        if self.verify {
            let n = self.model.sites().map_err(|e| RunError::Config(e.to_string()))?;
            if n > MAX_LANCZOS_SITES {
                return bad(format!(
                    "--verify needs N <= {MAX_LANCZOS_SITES} for the dense cross-check, got {n}"
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RunError {
    #[error("config error: {0}")]
    Config(String),
    #[error("runtime error: {0}")]
    Runtime(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 1,
            Self::Runtime(_) => 2,
        }
    }
}

fn config_err(e: PauliError) -> RunError {
    RunError::Config(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub max_error: f64,
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub output: PathBuf,
    pub manifest: PathBuf,
    pub peak_terms: usize,
    pub aborted: bool,
    pub verify: Option<VerifyReport>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.aborted || self.verify.as_ref().is_some_and(|v| !v.passed) {
            2
        } else {
            0
        }
    }
}

struct Outcome {
    body: String,
    peak_terms: usize,
    aborted: bool,
    verify: Option<VerifyReport>,
    extra: serde_json::Value,
}

/// Run one experiment and write its outputs.
pub fn run(cfg: &ExperimentConfig) -> Result<RunReport, RunError> {
    cfg.validate()?;
    let start = Instant::now();
    let n = cfg.model.sites().map_err(config_err)?;
    let outcome = if n <= 64 {
        run_typed::<u64>(cfg)?
    } else {
        run_typed::<u128>(cfg)?
    };
    let wall = start.elapsed().as_secs_f64();

    let output = cfg.output_path();
    let manifest = cfg.manifest_path();
    write(&output, &outcome.body)?;
    let doc = json!({
        "config": cfg,
        "wall_time_s": wall,
        "peak_terms": outcome.peak_terms,
        "aborted": outcome.aborted,
        "verify": outcome.verify,
        "result": outcome.extra,
    });
    write(
        &manifest,
        &serde_json::to_string_pretty(&doc).expect("manifest serializes"),
    )?;
    Ok(RunReport {
        output,
        manifest,
        peak_terms: outcome.peak_terms,
        aborted: outcome.aborted,
        verify: outcome.verify,
    })
}

fn write(path: &Path, body: &str) -> Result<(), RunError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| RunError::Runtime(format!("creating {}: {e}", dir.display())))?;
    }
    std::fs::write(path, body).map_err(|e| RunError::Runtime(format!("writing {}: {e}", path.display())))
}

fn run_typed<B: Bits>(cfg: &ExperimentConfig) -> Result<Outcome, RunError> {
    let h: Operator<B> = cfg.model.build().map_err(config_err)?;
    let n = h.n();
    let boundary = cfg.model.effective_boundary();
    let initial = || -> Result<Operator<B>, RunError> {
        let name = cfg.initial.as_deref().unwrap_or_default();
        initial_operator(name, n, boundary).map_err(config_err)
    };
    match cfg.mode {
        Mode::Evolve => {
            let o0 = initial()?;
            let ec = evolve_config(cfg);
            let trace = evolve(&h, &o0, &ec, &[]).map_err(config_err)?;
            let verify = if cfg.verify {
                Some(verify_evolution(&h, &o0, &ec, &trace, &[])?)
            } else {
                None
            };
            Ok(trace_outcome(trace, verify))
        }
        Mode::Twopoint => {
            let source = cfg.source.unwrap_or((n / 2).max(1));
            let sites: Vec<usize> = (1..=n).collect();
            let ec = evolve_config(cfg);
            let trace = evolve_two_point(&h, source, &sites, &ec).map_err(config_err)?;
            let verify = if cfg.verify {
                let o0 = Operator::from_letters(n, &[("Z", source)]).map_err(config_err)?;
                let probes: Vec<_> = sites.iter().map(|&i| PauliTerm::single(Pauli::Z, i)).collect();
                Some(verify_evolution(&h, &o0, &ec, &trace, &probes)?)
            } else {
                None
            };
            Ok(trace_outcome(trace, verify))
        }
        Mode::Lanczos => {
            let o0 = initial()?;
            let steps = cfg.steps.unwrap_or_default();
            let mut policy = TrimPolicy::none();
            policy.max_strings = cfg.trim_size();
            policy.cutoff = cfg.cutoff;
            let mut opts = LanczosOptions::new(steps).with_policy(policy);
            opts.term_limit = Some(cfg.term_limit());
            let (b, body, termination, peak) = if cfg.translation_symmetric {
                let hs = SymOperator1D::from_operator(&h).map_err(config_err)?;
                let os = SymOperator1D::from_operator(&o0).map_err(config_err)?;
                let run = lanczos_with(&hs, &os, &opts).map_err(config_err)?;
                (run.b.clone(), run.to_csv(), run.termination, peak_terms(&run))
            } else {
                let run = lanczos_with(&h, &o0, &opts).map_err(config_err)?;
                (run.b.clone(), run.to_csv(), run.termination, peak_terms(&run))
            };
            let verify = if cfg.verify {
                Some(verify_lanczos(&h, &o0, steps, &b)?)
            } else {
                None
            };
            Ok(Outcome {
                body,
                peak_terms: peak,
                aborted: matches!(termination, Termination::Aborted { .. }),
                verify,
                extra: json!({ "termination": format!("{termination:?}"), "b": b }),
            })
        }
        Mode::Visualize => {
            let o0 = initial()?;
            let steps = cfg.steps.unwrap_or_default();
            let (run, dump) = lanczos_verbose(&h, &o0, steps).map_err(config_err)?;
            let verify = if cfg.verify {
                Some(verify_lanczos(&h, &o0, steps.saturating_sub(1), &run.b)?)
            } else {
                None
            };
            Ok(Outcome {
                body: dump,
                peak_terms: peak_terms(&run),
                aborted: false,
                verify,
                extra: json!({ "terms": run.terms, "b": run.b }),
            })
        }
    }
}

fn peak_terms<K>(run: &LanczosRun<K>) -> usize {
    run.terms.iter().copied().max().unwrap_or(0)
}

fn evolve_config(cfg: &ExperimentConfig) -> EvolveConfig {
    let mut ec = EvolveConfig::new(cfg.dt.unwrap_or_default(), cfg.t_max.unwrap_or_default()).with_noise(cfg.noise);
    ec.max_strings = cfg.trim_size();
    ec.term_limit = Some(cfg.term_limit());
    ec
}

fn trace_outcome(trace: EvolutionTrace, verify: Option<VerifyReport>) -> Outcome {
    Outcome {
        body: trace.to_csv(),
        peak_terms: trace.peak_terms,
        aborted: trace.aborted,
        verify,
        extra: json!({ "samples": trace.samples.len() }),
    }
}

fn verify_lanczos<B: Bits>(
    h: &Operator<B>,
    o0: &Operator<B>,
    steps: usize,
    b: &[f64],
) -> Result<VerifyReport, RunError> {
    let dense = oracle::dense_lanczos(h, o0, steps).map_err(config_err)?;
    let mut max_error: f64 = if dense.len() == b.len() { 0.0 } else { f64::INFINITY };
    for (x, y) in dense.iter().zip(b) {
        max_error = max_error.max((x - y).abs());
    }
    Ok(VerifyReport {
        passed: max_error < LANCZOS_TOLERANCE,
        max_error,
        tolerance: LANCZOS_TOLERANCE,
    })
}

/// Compare `S(t)` and the probe columns against the same RK4 step and
/// depolarizing channel carried out on dense matrices. Any difference comes
/// from the string algebra or from truncation.
fn verify_evolution<B: Bits>(
    h: &Operator<B>,
    o0: &Operator<B>,
    ec: &EvolveConfig,
    trace: &EvolutionTrace,
    probes: &[PauliTerm<B>],
) -> Result<VerifyReport, RunError> {
    let n = h.n();
    let dense = oracle::dense_rk4_trajectory(h, o0, ec.dt, ec.steps, ec.noise).map_err(config_err)?;
    let d0 = oracle::to_dense(o0).map_err(config_err)?;
    let d0_dag = d0.adjoint();
    let norm0 = d0.product(&d0).trace_normalized();
    let probe_mats: Vec<DenseOperator> = probes
        .iter()
        .map(|p| {
            let mut op = Operator::<B>::new(n);
            op.insert_pauli(*p, Complex64::new(1.0, 0.0));
            oracle::to_dense(&op).map_err(config_err)
        })
        .collect::<Result<_, _>>()?;
    let mut max_error: f64 = if trace.aborted { f64::INFINITY } else { 0.0 };
    for (sample, d) in trace.samples.iter().zip(&dense) {
        let s = d.product(&d0_dag).trace_normalized() / norm0;
        max_error = max_error.max((s - sample.autocorrelation).norm());
        for (p, got) in probe_mats.iter().zip(&sample.two_point) {
            let want = d.product(p).trace_normalized();
            max_error = max_error.max((want - got).norm());
        }
    }
    Ok(VerifyReport {
        passed: max_error < EVOLVE_TOLERANCE,
        max_error,
        tolerance: EVOLVE_TOLERANCE,
    })
}

/// Command-line interface. Flags override the fields of `--config`.
#[derive(Debug, Parser)]
#[command(name = "pauli-ops", version, about = "Pauli-string operator dynamics experiments")]
pub struct Cli {
    /// JSON experiment config.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// JSON array of configs run in parallel; each needs its own `out`.
    #[arg(long, conflicts_with = "config")]
    pub sweep: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Model name, e.g. `xx`, `quantum_ising`, `xxz_nnn`.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum)]
    pub boundary: Option<Boundary>,
    /// Initial operator, e.g. `sumX`, `ising_energy`, `Z1`.
    #[arg(long)]
    pub initial: Option<String>,
    /// log2 of the number of strings kept.
    #[arg(long)]
    pub trim: Option<u32>,
    #[arg(long)]
    pub noise: Option<f64>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub tmax: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Cross-check against the dense oracle (N <= 8).
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub translation_symmetric: bool,
    #[arg(long)]
    pub mem_limit_gb: Option<f64>,
}

impl Cli {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        if let Some(m) = self.mode {
            cfg.mode = m;
        }
        if let Some(name) = &self.model {
            cfg.model.model = name.clone();
        }
        if let Some(n) = self.n {
            cfg.model.n = Some(n);
        }
        if let Some(b) = self.boundary {
            cfg.model.boundary = Some(b);
        }
        if let Some(i) = &self.initial {
            cfg.initial = Some(i.clone());
        }
        if let Some(t) = self.trim {
            cfg.trim = Some(t);
            cfg.max_strings = None;
        }
        if let Some(e) = self.noise {
            cfg.noise = e;
        }
        if let Some(dt) = self.dt {
            cfg.dt = Some(dt);
        }
        if let Some(t) = self.tmax {
            cfg.t_max = Some(t);
        }
        if let Some(s) = self.steps {
            cfg.steps = Some(s);
        }
        if let Some(o) = &self.out {
            cfg.out = Some(o.clone());
        }
        cfg.verify |= self.verify;
        cfg.translation_symmetric |= self.translation_symmetric;
        if let Some(m) = self.mem_limit_gb {
            cfg.mem_limit_gb = m;
        }
    }

    /// The config this invocation describes (not used with `--sweep`).
    pub fn to_config(&self) -> Result<ExperimentConfig, RunError> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_json(&read(path)?)?,
            None => {
                let mode = self
                    .mode
                    .ok_or_else(|| RunError::Config("--mode is required without --config".into()))?;
                let model = self
                    .model
                    .as_deref()
                    .ok_or_else(|| RunError::Config("--model is required without --config".into()))?;
                let n = self
                    .n
                    .ok_or_else(|| RunError::Config("--n is required without --config".into()))?;
                ExperimentConfig::new(mode, ModelDescriptor::chain(model, n))
            }
        };
        self.apply(&mut cfg);
        Ok(cfg)
    }
}

fn read(path: &Path) -> Result<String, RunError> {
    std::fs::read_to_string(path).map_err(|e| RunError::Config(format!("reading {}: {e}", path.display())))
}

/// Run every config of a sweep on the rayon pool. Outputs must be distinct.
pub fn run_sweep(configs: &[ExperimentConfig]) -> Result<Vec<Result<RunReport, RunError>>, RunError> {
    let mut outs: Vec<_> = configs.iter().map(|c| c.output_path()).collect();
    outs.sort();
    if outs.windows(2).any(|w| w[0] == w[1]) {
        return Err(RunError::Config("sweep entries must write to distinct outputs".into()));
    }
    for c in configs {
        c.validate()?;
    }
    Ok(configs.par_iter().map(run).collect())
}

/// Parse arguments, run, print a one-line summary and return the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    if let Some(path) = &cli.sweep {
        return match sweep_from_file(&cli, path) {
            Ok(code) => code,
            Err(e) => {
                eprintln!("{e}");
                e.exit_code()
            }
        };
    }
    match cli.to_config().and_then(|cfg| run(&cfg)) {
        Ok(report) => {
            summarize(&report);
            report.exit_code()
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn sweep_from_file(cli: &Cli, path: &Path) -> Result<i32, RunError> {
    let mut configs: Vec<ExperimentConfig> =
        serde_json::from_str(&read(path)?).map_err(|e| RunError::Config(format!("bad sweep: {e}")))?;
    for c in &mut configs {
        let out = c.out.clone();
        cli.apply(c);
        c.out = out;
    }
    let mut code = 0;
    for r in run_sweep(&configs)? {
        match r {
            Ok(report) => {
                summarize(&report);
                code = code.max(report.exit_code());
            }
            Err(e) => {
                eprintln!("{e}");
                code = code.max(e.exit_code());
            }
        }
    }
    Ok(code)
}

fn summarize(report: &RunReport) {
    let mut line = format!("wrote {} (peak {} strings)", report.output.display(), report.peak_terms);
    if report.aborted {
        line.push_str(", aborted at the memory limit");
    }
    if let Some(v) = &report.verify {
        line.push_str(&format!(
            ", verify {} (max error {:e}, tolerance {:e})",
            if v.passed { "passed" } else { "FAILED" },
            v.max_error,
            v.tolerance
        ));
    }
    println!("{line}");
}
