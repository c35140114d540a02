//! Batch driver for the quantum-neural market simulator.
//!
//! Three modes, selected with `--mode`:
//!
//! * `simulate` — one market run; writes `<out>.csv` (round, return,
//!   log_price) and `<out>.json` (series summary plus the configuration).
//! * `probmap` — iterates the classical sixteen-variable probability map for
//!   one component next to its quantum trajectory; writes the map variables
//!   per round to `<out>.csv` and the maximum deviation from the quantum
//!   probabilities to `<out>.json`.
//! * `sweep` — a grid of simulations over `--sweep name=v1,v2,...` axes;
//!   writes one summary row per cell to `<out>.csv` or `<out>.json`
//!   depending on `--format`.

pub mod output;

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use rayon::prelude::*;

use qna_core::market::{self, MarketConfig};
use qna_core::network::{l_net, phi_from_sin2phi, step};
use qna_core::probmap::{self, SignedMapState};
use qna_core::quantum::DIM;
use qna_core::stats;

use output::{ProbMapReport, RunSummary, SweepCell};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Simulate,
    Probmap,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Command-line surface. Defaults reproduce the reference single-run setup:
/// 20 components, sin²φ = 0.6, v0 = 0.7, λ = 1000, 2100 rounds with the
/// first 100 dropped.
#[derive(Debug, Parser)]
#[command(name = "qna", version, about = "Quantum-neural market model simulator")]
pub struct Cli {
    /// What to run: a market simulation, a probability-map run or a sweep.
    #[arg(long, value_enum, default_value_t = Mode::Simulate)]
    pub mode: Mode,

    /// Total lattice components (volatility components plus one
    /// polarization component).
    #[arg(long, default_value_t = 20)]
    pub components: usize,

    /// Low-volatility eigenvalue in (0, 1]; the high one is 2 - v0.
    #[arg(long, default_value_t = 0.7)]
    pub v0: f64,

    /// sin²φ of the deterministic rotation angle, in [0, 1].
    #[arg(long, default_value_t = 0.6)]
    pub sin2phi: f64,

    /// Market depth (liquidity) dividing the order unbalance.
    #[arg(long, default_value_t = 1000.0)]
    pub lambda: f64,

    /// Trading rounds to simulate.
    #[arg(long, default_value_t = 2100)]
    pub steps: u64,

    /// Leading rounds dropped from every recorded series.
    #[arg(long, default_value_t = 100)]
    pub transient: u64,

    /// Master seed for all random streams.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Enable stochastic gates with this noise gain β ≥ 0.
    #[arg(long)]
    pub beta: Option<f64>,

    /// Sweep axis `name=v1,v2,...`; repeatable. Valid names: v0, sin2phi,
    /// n_components, noise_beta.
    #[arg(long = "sweep")]
    pub sweep: Vec<String>,

    /// Output base path; writers append .csv / .json.
    #[arg(long)]
    pub out: PathBuf,

    /// Sweep summary format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// Whether a failure is the caller's fault (usage) or the environment's
/// (runtime); the process exit code is derived from this.
#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Runtime(String),
}

impl RunError {
    pub fn is_usage(&self) -> bool {
        matches!(self, RunError::Usage(_))
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Usage(msg) => write!(f, "usage error: {msg}"),
            RunError::Runtime(msg) => write!(f, "runtime error: {msg}"),
        }
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Runtime(e.to_string())
    }
}

/// A validated run request.
#[derive(Debug, Clone)]
pub struct RunSpec {
    pub mode: Mode,
    pub market: MarketConfig,
    pub sweep_axes: Vec<SweepAxis>,
    pub out: PathBuf,
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    V0,
    Sin2Phi,
    NComponents,
    NoiseBeta,
}

impl SweepParam {
    fn parse(name: &str) -> Result<Self, RunError> {
        match name {
            "v0" => Ok(Self::V0),
            "sin2phi" => Ok(Self::Sin2Phi),
            "n_components" => Ok(Self::NComponents),
            "noise_beta" => Ok(Self::NoiseBeta),
            other => Err(RunError::Usage(format!(
                "unknown sweep parameter '{other}' (expected v0, sin2phi, n_components or noise_beta)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

fn parse_sweep_axis(text: &str) -> Result<SweepAxis, RunError> {
    let (name, values) = text
        .split_once('=')
        .ok_or_else(|| RunError::Usage(format!("sweep axis '{text}' is not of the form name=v1,v2")))?;
    let param = SweepParam::parse(name.trim())?;
    let values: Vec<f64> = values
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| RunError::Usage(format!("sweep value '{v}' is not a number")))
        })
        .collect::<Result<_, _>>()?;
    if values.is_empty() {
        return Err(RunError::Usage(format!("sweep axis '{name}' has no values")));
    }
    Ok(SweepAxis { param, values })
}

impl RunSpec {
    pub fn from_cli(cli: &Cli) -> Result<Self, RunError> {
        let market = MarketConfig {
            n_components: cli.components,
            sin2phi: cli.sin2phi,
            v0: cli.v0,
            lambda: cli.lambda,
            steps: cli.steps,
            transient: cli.transient,
            seed: cli.seed,
            noise_beta: cli.beta,
        };
        market
            .validate()
            .map_err(|e| RunError::Usage(e.to_string()))?;

        let sweep_axes: Vec<SweepAxis> = cli
            .sweep
            .iter()
            .map(|s| parse_sweep_axis(s))
            .collect::<Result<_, _>>()?;
        match cli.mode {
            Mode::Sweep if sweep_axes.is_empty() => {
                return Err(RunError::Usage(
                    "sweep mode requires at least one --sweep axis".into(),
                ));
            }
            Mode::Simulate | Mode::Probmap if !sweep_axes.is_empty() => {
                return Err(RunError::Usage(format!(
                    "--sweep is only valid in sweep mode, not {:?}",
                    cli.mode
                )));
            }
            _ => {}
        }

        Ok(Self {
            mode: cli.mode,
            market,
            sweep_axes,
            out: cli.out.clone(),
            format: cli.format,
        })
    }

    fn csv_path(&self) -> PathBuf {
        with_extension(&self.out, "csv")
    }

    fn json_path(&self) -> PathBuf {
        with_extension(&self.out, "json")
    }
}

fn with_extension(base: &Path, ext: &str) -> PathBuf {
    let mut name = base.file_name().unwrap_or_default().to_os_string();
    name.push(".");
    name.push(ext);
    base.with_file_name(name)
}

/// Expands the sweep grid in row-major order of the listed axes.
fn expand_grid(base: &MarketConfig, axes: &[SweepAxis]) -> Result<Vec<MarketConfig>, RunError> {
    let mut cells = vec![base.clone()];
    for axis in axes {
        let mut next = Vec::with_capacity(cells.len() * axis.values.len());
        for cell in &cells {
            for &value in &axis.values {
                let mut cfg = cell.clone();
                match axis.param {
                    SweepParam::V0 => cfg.v0 = value,
                    SweepParam::Sin2Phi => cfg.sin2phi = value,
                    SweepParam::NComponents => {
                        if value.fract() != 0.0 || value < 1.0 {
                            return Err(RunError::Usage(format!(
                                "n_components sweep value {value} is not a positive integer"
                            )));
                        }
                        cfg.n_components = value as usize;
                    }
                    SweepParam::NoiseBeta => cfg.noise_beta = Some(value),
                }
                next.push(cfg);
            }
        }
        cells = next;
    }
    for cfg in &cells {
        cfg.validate().map_err(|e| RunError::Usage(e.to_string()))?;
    }
    Ok(cells)
}

fn run_simulate(spec: &RunSpec) -> Result<(), RunError> {
    let series = market::simulate(&spec.market).map_err(|e| RunError::Runtime(e.to_string()))?;
    let summary =
        stats::summarize(&series.returns).map_err(|e| RunError::Runtime(e.to_string()))?;
    output::write_returns_csv(&spec.csv_path(), &series, spec.market.transient + 1)?;
    output::write_json(
        &spec.json_path(),
        &RunSummary {
            summary,
            config: spec.market.clone(),
        },
    )?;
    Ok(())
}

/// Iterates the literal probability map for one component alongside the
/// exact quantum trajectory and the sign-carrying map, recording how far the
/// literal probabilities drift from the quantum ones.
pub fn run_probmap_trajectory(
    cfg: &MarketConfig,
) -> Result<(Vec<(u64, qna_core::ProbMapState)>, ProbMapReport), RunError> {
    cfg.validate().map_err(|e| RunError::Usage(e.to_string()))?;
    let initial = market::init_market(&MarketConfig {
        n_components: 1,
        ..cfg.clone()
    })
    .components
    .remove(0);

    let mut quantum = initial;
    let mut literal = probmap::from_quantum(&quantum);
    let mut signed = SignedMapState::from(&quantum);
    let fixed_phi = phi_from_sin2phi(cfg.sin2phi);
    let fixed_op = l_net(fixed_phi);

    let mut rows = Vec::with_capacity((cfg.steps - cfg.transient) as usize);
    let mut max_dev_literal: f64 = 0.0;
    let mut max_dev_signed: f64 = 0.0;
    for round in 0..cfg.steps {
        match cfg.noise_beta {
            Some(beta) => {
                let z = market::noise_draw(cfg.seed, 0, round);
                let phi = market::sample_phi(beta, z);
                quantum =
                    step(&quantum, &l_net(phi)).map_err(|e| RunError::Runtime(e.to_string()))?;
                literal = probmap::step_map_noisy(&literal, beta, z)
                    .map_err(|e| RunError::Runtime(e.to_string()))?;
                signed = probmap::step_signed(&signed, phi);
            }
            None => {
                quantum =
                    step(&quantum, &fixed_op).map_err(|e| RunError::Runtime(e.to_string()))?;
                literal = probmap::step_map(&literal, fixed_phi)
                    .map_err(|e| RunError::Runtime(e.to_string()))?;
                signed = probmap::step_signed(&signed, fixed_phi);
            }
        }
        if round >= cfg.transient {
            let reference = probmap::from_quantum(&quantum);
            let signed_view = signed.to_prob_map();
            for s in 0..DIM {
                let q = probmap::probability(&reference, s);
                max_dev_literal =
                    max_dev_literal.max((probmap::probability(&literal, s) - q).abs());
                max_dev_signed =
                    max_dev_signed.max((probmap::probability(&signed_view, s) - q).abs());
            }
            rows.push((round + 1, literal));
        }
    }
    let report = ProbMapReport {
        max_abs_dev_literal: max_dev_literal,
        max_abs_dev_signed: max_dev_signed,
        config: cfg.clone(),
    };
    Ok((rows, report))
}

fn run_probmap(spec: &RunSpec) -> Result<(), RunError> {
    let (rows, report) = run_probmap_trajectory(&spec.market)?;
    output::write_probmap_csv(&spec.csv_path(), &rows)?;
    output::write_json(&spec.json_path(), &report)?;
    Ok(())
}

/// Runs every sweep cell and returns them in grid order. Cells are
/// independent simulations with seed-derived streams, so parallel and serial
/// execution produce identical results.
pub fn run_sweep_cells(
    base: &MarketConfig,
    axes: &[SweepAxis],
    parallel: bool,
) -> Result<Vec<SweepCell>, RunError> {
    let cells = expand_grid(base, axes)?;
    let evaluate = |cfg: &MarketConfig| -> Result<SweepCell, RunError> {
        let series = market::simulate(cfg).map_err(|e| RunError::Runtime(e.to_string()))?;
        let summary =
            stats::summarize(&series.returns).map_err(|e| RunError::Runtime(e.to_string()))?;
        Ok(SweepCell {
            config: cfg.clone(),
            summary,
        })
    };
    if parallel {
        cells.par_iter().map(evaluate).collect()
    } else {
        cells.iter().map(evaluate).collect()
    }
}

fn run_sweep(spec: &RunSpec) -> Result<(), RunError> {
    let results = run_sweep_cells(&spec.market, &spec.sweep_axes, true)?;
    match spec.format {
        Format::Csv => output::write_sweep_csv(&spec.csv_path(), &results)?,
        Format::Json => output::write_json(&spec.json_path(), &results)?,
    }
    Ok(())
}

/// Executes a validated run spec.
pub fn run(spec: &RunSpec) -> Result<(), RunError> {
    match spec.mode {
        Mode::Simulate => run_simulate(spec),
        Mode::Probmap => run_probmap(spec),
        Mode::Sweep => run_sweep(spec),
    }
}

/// Parses, validates and executes command-line arguments.
pub fn execute(cli: &Cli) -> Result<(), RunError> {
    run(&RunSpec::from_cli(cli)?)
}
