//! CSV and JSON writers.
//!
//! Floats are written with 17 significant digits so every value round-trips
//! bit-exactly through the text files, and repeated runs with the same seed
//! produce byte-identical output.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use qna_core::market::{MarketConfig, ReturnsSeries};
use qna_core::probmap::ProbMapState;
use qna_core::quantum::DIM;
use qna_core::stats::SeriesSummary;

/// Full-precision float formatting shared by every writer.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Summary of a single run: the series statistics plus the configuration
/// that produced them.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    #[serde(flatten)]
    pub summary: SeriesSummary,
    pub config: MarketConfig,
}

/// One cell of a parameter sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepCell {
    pub config: MarketConfig,
    pub summary: SeriesSummary,
}

/// Diagnostics of a probability-map run.
#[derive(Debug, Clone, Serialize)]
pub struct ProbMapReport {
    /// Largest probability gap between the literal map and the quantum
    /// trajectory over the recorded rounds.
    pub max_abs_dev_literal: f64,
    /// Same gap for the sign-carrying map; stays at rounding level.
    pub max_abs_dev_signed: f64,
    pub config: MarketConfig,
}

pub fn write_returns_csv(path: &Path, series: &ReturnsSeries, first_round: u64) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "round,return,log_price")?;
    for (i, (ret, log_price)) in series.returns.iter().zip(&series.log_prices).enumerate() {
        writeln!(
            w,
            "{},{},{}",
            first_round + i as u64,
            fmt_f64(*ret),
            fmt_f64(*log_price)
        )?;
    }
    w.flush()
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    let text = serde_json::to_string_pretty(value).expect("serializable report");
    w.write_all(text.as_bytes())?;
    writeln!(w)?;
    w.flush()
}

pub fn write_probmap_csv(
    path: &Path,
    rows: &[(u64, ProbMapState)],
) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    let mut header = String::from("round");
    for s in 0..DIM {
        header.push_str(&format!(",a{s:03b}"));
    }
    for s in 0..DIM {
        header.push_str(&format!(",b{s:03b}"));
    }
    writeln!(w, "{header}")?;
    for (round, state) in rows {
        let mut line = round.to_string();
        for s in 0..DIM {
            line.push(',');
            line.push_str(&fmt_f64(state.a(s)));
        }
        for s in 0..DIM {
            line.push(',');
            line.push_str(&fmt_f64(state.b(s)));
        }
        writeln!(w, "{line}")?;
    }
    w.flush()
}

fn optional(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn write_sweep_csv(path: &Path, cells: &[SweepCell]) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(
        w,
        "v0,sin2phi,n_components,noise_beta,n,mean,variance,skewness,fisher_kurtosis,jb_statistic,jb_p_value"
    )?;
    for cell in cells {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            fmt_f64(cell.config.v0),
            fmt_f64(cell.config.sin2phi),
            cell.config.n_components,
            optional(cell.config.noise_beta),
            cell.summary.n,
            fmt_f64(cell.summary.mean),
            fmt_f64(cell.summary.variance),
            fmt_f64(cell.summary.skewness),
            fmt_f64(cell.summary.fisher_kurtosis),
            fmt_f64(cell.summary.jb_statistic),
            fmt_f64(cell.summary.jb_p_value),
        )?;
    }
    w.flush()
}
