//! Two-step residual-based cointegration test.

use nalgebra::{DMatrix, DVector};

use super::adf::{adf_statistic, finish, Deterministic};
use super::linreg::ols;
use super::mackinnon;
use super::TestResult;
use crate::error::{data_err, num_err, Result};

/// Engle-Granger cointegration test: OLS of `x` on `y` (plus the chosen
/// deterministic terms), then a Dickey-Fuller regression on the
/// residuals. The statistic is the residual t-ratio; the p-value uses the
/// two-series cointegration response surface.
///
/// Null hypothesis: no cointegration; rejection indicates a stationary
/// linear combination.
pub fn engle_granger(
    x: &[f64],
    y: &[f64],
    deterministic: Deterministic,
    max_lags: Option<usize>,
    level: f64,
) -> Result<TestResult> {
    if x.len() != y.len() {
        return Err(data_err(format!(
            "engle-granger: series lengths differ ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    let t = x.len();
    if t < 30 {
        return Err(data_err(format!(
            "engle-granger: need at least 30 observations, got {t}"
        )));
    }
    let max_lags = max_lags.unwrap_or_else(|| super::adf::schwert_max_lags(t));

    // Step 1: cointegrating regression.
    let n_det = match deterministic {
        Deterministic::None => 0,
        Deterministic::Constant => 1,
        Deterministic::ConstantTrend => 2,
    };
    let mut xm = DMatrix::zeros(t, 1 + n_det);
    for r in 0..t {
        xm[(r, 0)] = y[r];
        if n_det >= 1 {
            xm[(r, 1)] = 1.0;
        }
        if n_det >= 2 {
            xm[(r, 2)] = (r + 1) as f64;
        }
    }
    let yv = DVector::from_column_slice(x);
    let fit = ols(&yv, &xm)?;
    let residuals: Vec<f64> = fit.residuals.iter().copied().collect();
    let resid_var = fit.ssr / t as f64;
    if resid_var < 1e-14 {
        return Err(num_err("engle-granger: zero residual variance"));
    }

    // Step 2: Dickey-Fuller regression on the residuals without
    // deterministic terms; the p-value accounts for the first stage.
    let (stat, used_lag) = adf_statistic(&residuals, max_lags, Deterministic::None)?;
    let surface = mackinnon::p_value(stat, deterministic, 2);
    Ok(finish("engle-granger", stat, surface, used_lag, level))
}
