//! Descriptive statistics per panel variable.

use serde::Serialize;

use super::jarque_bera::skew_kurtosis;
use crate::error::{data_err, num_err, Result};
use crate::panel::PanelSeries;

/// Sample moments and quartiles of one variable.
#[derive(Debug, Clone, Serialize)]
pub struct DescriptiveStats {
    pub name: String,
    pub mean: f64,
    pub median: f64,
    /// Sample standard deviation (denominator T-1).
    pub sd: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    pub q1: f64,
    pub q3: f64,
}

/// Linear-interpolation quantile on a sorted copy of the data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    let pos = q * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let frac = pos - lo as f64;
    if lo + 1 < n {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    } else {
        sorted[n - 1]
    }
}

/// Computes mean, median, sd, skewness, excess kurtosis and quartiles for
/// every variable in the panel. Requires at least 4 observations and
/// nonzero variance in every column.
pub fn describe(panel: &PanelSeries) -> Result<Vec<DescriptiveStats>> {
    panel.require_complete()?;
    let t = panel.len();
    if t < 4 {
        return Err(data_err(format!("describe: need at least 4 observations, got {t}")));
    }
    let mut out = Vec::with_capacity(panel.width());
    for (c, name) in panel.names().iter().enumerate() {
        let x = panel.column(c);
        let mean = x.iter().sum::<f64>() / t as f64;
        let var = x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (t - 1) as f64;
        if var <= 0.0 {
            return Err(num_err(format!("zero variance in column {name:?}")));
        }
        let (skewness, excess_kurtosis) =
            skew_kurtosis(&x).map_err(|_| num_err(format!("zero variance in column {name:?}")))?;
        let mut sorted = x.clone();
        sorted.sort_by(|a, b| a.total_cmp(b));
        out.push(DescriptiveStats {
            name: name.clone(),
            mean,
            median: quantile(&sorted, 0.5),
            sd: var.sqrt(),
            skewness,
            excess_kurtosis,
            q1: quantile(&sorted, 0.25),
            q3: quantile(&sorted, 0.75),
        });
    }
    Ok(out)
}
