//! Structural-stability (Chow-type) tests for VAR models, calibrated by a
//! residual bootstrap under the null of constant parameters.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::TestResult;
use crate::error::{data_err, num_err, Result};
use crate::panel::PanelSeries;
use crate::var::fit_var_values;

/// Which stability statistic to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChowVariant {
    /// Coefficients and residual covariance may both change at the break.
    BreakPoint,
    /// Coefficients may change; the covariance is held common.
    SampleSplit,
}

impl ChowVariant {
    fn test_name(self) -> &'static str {
        match self {
            ChowVariant::BreakPoint => "chow-break-point",
            ChowVariant::SampleSplit => "chow-sample-split",
        }
    }
}

/// Result of a bootstrap-calibrated stability test.
#[derive(Debug, Clone, Serialize)]
pub struct ChowResult {
    #[serde(flatten)]
    pub result: TestResult,
    pub variant: ChowVariant,
    /// Bootstrap critical value at the stated level.
    pub critical_value: f64,
    pub break_index: usize,
    pub bootstrap_reps: usize,
}

/// Likelihood-ratio-type stability test of a VAR(p) against a single
/// candidate break date, with p-value and critical value from a residual
/// bootstrap under the null (iid resampling of centered full-sample
/// residuals, `bootstrap_reps` replications, deterministic in `seed`).
pub fn chow_test(
    panel: &PanelSeries,
    lag: usize,
    break_index: usize,
    variant: ChowVariant,
    bootstrap_reps: usize,
    seed: u64,
    level: f64,
) -> Result<ChowResult> {
    panel.require_complete()?;
    if bootstrap_reps < 99 {
        return Err(data_err(format!(
            "chow: at least 99 bootstrap replications required, got {bootstrap_reps}"
        )));
    }
    let values = panel.values();
    let t = values.nrows();
    let n = values.ncols();
    if break_index == 0 || break_index >= t {
        return Err(data_err(format!("chow: break index {break_index} outside sample")));
    }
    let min_len = lag + n * lag + 2;
    if break_index <= min_len || t - break_index <= min_len {
        return Err(data_err(format!(
            "chow: sub-sample too short for VAR({lag}) with N={n} (need more than {min_len} rows on each side)"
        )));
    }

    let observed = chow_statistic(values, lag, break_index, variant)?;

    // Null model for the bootstrap: full-sample fit and centered residuals.
    let null_model = fit_var_values(values, panel.names().to_vec(), lag, true)?;
    let resid = null_model.residuals().clone();
    let resid_rows = resid.nrows();
    let mut centered = resid;
    for c in 0..n {
        let mean: f64 = centered.column(c).iter().sum::<f64>() / resid_rows as f64;
        for r in 0..resid_rows {
            centered[(r, c)] -= mean;
        }
    }
    let intercept = null_model.intercept().clone();
    let coeffs = null_model.coeffs().to_vec();

    let stats: Vec<f64> = (0..bootstrap_reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(rep as u64 + 1);
            let mut sim = DMatrix::zeros(t, n);
            for r in 0..lag {
                for c in 0..n {
                    sim[(r, c)] = values[(r, c)];
                }
            }
            for r in lag..t {
                let draw = rng.gen_range(0..resid_rows);
                for i in 0..n {
                    let mut v = intercept[i] + centered[(draw, i)];
                    for (j, phi) in coeffs.iter().enumerate() {
                        for k in 0..n {
                            v += phi[(i, k)] * sim[(r - 1 - j, k)];
                        }
                    }
                    sim[(r, i)] = v;
                }
            }
            chow_statistic(&sim, lag, break_index, variant)
        })
        .collect::<Result<Vec<f64>>>()?;

    let exceed = stats.iter().filter(|&&s| s >= observed).count();
    let p_value = (1.0 + exceed as f64) / (bootstrap_reps as f64 + 1.0);
    let mut sorted = stats;
    sorted.sort_by(|a, b| a.total_cmp(b));
    let critical_value = empirical_quantile(&sorted, 1.0 - level);

    Ok(ChowResult {
        result: TestResult::new(variant.test_name(), observed, p_value, Some(lag), level),
        variant,
        critical_value,
        break_index,
        bootstrap_reps,
    })
}

fn empirical_quantile(sorted: &[f64], q: f64) -> f64 {
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

/// LR-type statistic comparing the full-sample fit against separate fits
/// before and after the break. Sub-sample residual moments are compared
/// with the full-sample residual covariance evaluated over the same time
/// points.
fn chow_statistic(
    values: &DMatrix<f64>,
    lag: usize,
    break_index: usize,
    variant: ChowVariant,
) -> Result<f64> {
    let t = values.nrows();
    let n = values.ncols();
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();

    let full = fit_var_values(values, names.clone(), lag, true)?;
    let sub1 = values.rows(0, break_index).into_owned();
    let sub2 = values.rows(break_index, t - break_index).into_owned();
    let fit1 = fit_var_values(&sub1, names.clone(), lag, true)?;
    let fit2 = fit_var_values(&sub2, names, lag, true)?;
    let n1 = fit1.residuals().nrows();
    let n2 = fit2.residuals().nrows();

    // Full-sample residual rows matching the sub-sample estimation points:
    // residual row r corresponds to observation index r + lag.
    let resid = full.residuals();
    let mut cross = DMatrix::zeros(n, n);
    let mut count = 0usize;
    for r in 0..resid.nrows() {
        let tix = r + lag;
        let in_sub1 = tix < break_index;
        let in_sub2 = tix >= break_index + lag;
        if in_sub1 || in_sub2 {
            for i in 0..n {
                for j in 0..n {
                    cross[(i, j)] += resid[(r, i)] * resid[(r, j)];
                }
            }
            count += 1;
        }
    }
    debug_assert_eq!(count, n1 + n2);
    let sigma_full = cross / count as f64;

    let ln_det = |m: &DMatrix<f64>| -> Result<f64> {
        m.clone()
            .cholesky()
            .map(|c| 2.0 * c.l().diagonal().iter().map(|v| v.ln()).sum::<f64>())
            .ok_or_else(|| num_err("chow: singular residual covariance"))
    };

    let ld_full = ln_det(&sigma_full)?;
    let total = (n1 + n2) as f64;
    match variant {
        ChowVariant::BreakPoint => {
            let ld1 = ln_det(fit1.sigma())?;
            let ld2 = ln_det(fit2.sigma())?;
            Ok(total * ld_full - n1 as f64 * ld1 - n2 as f64 * ld2)
        }
        ChowVariant::SampleSplit => {
            let pooled =
                (fit1.sigma() * n1 as f64 + fit2.sigma() * n2 as f64) / total;
            let ld_pooled = ln_det(&pooled)?;
            Ok(total * (ld_full - ld_pooled))
        }
    }
}
