//! Distributional diagnostics for simulated return series: central moments,
//! Fisher (excess) kurtosis and the Jarque–Bera normality test.
//!
//! All moments are uncorrected population moments; kurtosis is always excess
//! kurtosis, so a Gaussian series scores 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Summary record of one return series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesSummary {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub fisher_kurtosis: f64,
    pub jb_statistic: f64,
    pub jb_p_value: f64,
}

/// p-values smaller than this are reported as exact zero.
const P_VALUE_FLOOR: f64 = 1e-300;

fn central_moments(x: &[f64]) -> Result<(f64, f64, f64, f64)> {
    if x.len() < 4 {
        return Err(Error::InsufficientData {
            n: x.len(),
            required: 4,
        });
    }
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &v in x {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if m2 <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((mean, m2, m3, m4))
}

/// Excess kurtosis `m4/m2² - 3`.
pub fn fisher_kurtosis(x: &[f64]) -> Result<f64> {
    let (_, m2, _, m4) = central_moments(x)?;
    Ok(m4 / (m2 * m2) - 3.0)
}

/// The Jarque–Bera statistic `(n/6)·(S² + K²/4)` and its p-value under the
/// two-degree chi-squared null, `p = exp(-JB/2)`.
pub fn jarque_bera(x: &[f64]) -> Result<(f64, f64)> {
    let (_, m2, m3, m4) = central_moments(x)?;
    let skewness = m3 / m2.powf(1.5);
    let kurtosis = m4 / (m2 * m2) - 3.0;
    let statistic = x.len() as f64 / 6.0 * (skewness * skewness + kurtosis * kurtosis / 4.0);
    Ok((statistic, jb_p_value(statistic)))
}

/// Survival function of the chi-squared distribution with two degrees of
/// freedom at `statistic`: the Jarque–Bera p-value `exp(-JB/2)`.
pub fn jb_p_value(statistic: f64) -> f64 {
    let p = (-statistic / 2.0).exp();
    if p < P_VALUE_FLOOR {
        0.0
    } else {
        p
    }
}

/// Computes every summary field in one pass over the series.
pub fn summarize(x: &[f64]) -> Result<SeriesSummary> {
    let (mean, m2, m3, m4) = central_moments(x)?;
    let skewness = m3 / m2.powf(1.5);
    let fisher_kurtosis = m4 / (m2 * m2) - 3.0;
    let jb_statistic =
        x.len() as f64 / 6.0 * (skewness * skewness + fisher_kurtosis * fisher_kurtosis / 4.0);
    Ok(SeriesSummary {
        n: x.len(),
        mean,
        variance: m2,
        skewness,
        fisher_kurtosis,
        jb_statistic,
        jb_p_value: jb_p_value(jb_statistic),
    })
}
