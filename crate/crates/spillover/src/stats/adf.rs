//! Augmented Dickey-Fuller unit-root test with information-criterion lag
//! selection and response-surface p-values.

use nalgebra::{DMatrix, DVector};

use super::linreg::ols;
use super::mackinnon::{self, SurfaceP};
use super::{PValueBound, TestResult};
use crate::error::{data_err, Result};

/// Deterministic terms included in a test regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Deterministic {
    None,
    Constant,
    ConstantTrend,
}

impl Deterministic {
    fn n_terms(self) -> usize {
        match self {
            Deterministic::None => 0,
            Deterministic::Constant => 1,
            Deterministic::ConstantTrend => 2,
        }
    }
}

/// Schwert rule for the largest lag order: floor(12 (T/100)^(1/4)).
pub(crate) fn schwert_max_lags(t: usize) -> usize {
    (12.0 * (t as f64 / 100.0).powf(0.25)).floor() as usize
}

/// Augmented Dickey-Fuller test. The lag order is chosen by AIC over
/// 0..=max_lags on the common sample, then the test regression is refit
/// at the chosen lag on all available observations. `max_lags = None`
/// applies the Schwert rule.
///
/// Null hypothesis: unit root; rejection indicates stationarity.
pub fn adf_test(
    x: &[f64],
    max_lags: Option<usize>,
    deterministic: Deterministic,
    level: f64,
) -> Result<TestResult> {
    let t = x.len();
    let max_lags = max_lags.unwrap_or_else(|| schwert_max_lags(t));
    if t < max_lags + 10 {
        return Err(data_err(format!(
            "adf: need at least max_lags + 10 = {} observations, got {t}",
            max_lags + 10
        )));
    }
    let (stat, used_lag) = adf_statistic(x, max_lags, deterministic)?;
    let surface = mackinnon::p_value(stat, deterministic, 1);
    Ok(finish("adf", stat, surface, used_lag, level))
}

pub(crate) fn finish(
    test: &str,
    stat: f64,
    surface: SurfaceP,
    used_lag: usize,
    level: f64,
) -> TestResult {
    let mut result = TestResult::new(test, stat, surface.value(), Some(used_lag), level);
    result.p_bound = match surface {
        SurfaceP::Exact(_) => None,
        SurfaceP::BelowRange(_) => Some(PValueBound::Upper),
        SurfaceP::AboveRange(_) => Some(PValueBound::Lower),
    };
    result
}

/// The Dickey-Fuller regression t-statistic on the lagged level, with an
/// AIC-selected number of difference lags. Shared with the cointegration
/// residual test.
pub(crate) fn adf_statistic(
    x: &[f64],
    max_lags: usize,
    deterministic: Deterministic,
) -> Result<(f64, usize)> {
    let t = x.len();
    if t < max_lags + deterministic.n_terms() + 4 {
        return Err(data_err(format!(
            "adf: {t} observations too few for {max_lags} lags"
        )));
    }
    let diff: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();

    // Lag search on the common sample implied by max_lags.
    let mut best_lag = 0usize;
    let mut best_aic = f64::INFINITY;
    for lag in 0..=max_lags {
        let fit = df_regression(x, &diff, max_lags, lag, deterministic)?;
        let aic = fit.aic();
        if aic < best_aic {
            best_aic = aic;
            best_lag = lag;
        }
    }

    // Refit at the chosen lag using every available observation.
    let fit = df_regression(x, &diff, best_lag, best_lag, deterministic)?;
    Ok((fit.t_stat(0), best_lag))
}

/// Regression of diff[t] on [x[t-1], diff lags, deterministic terms] over
/// rows start_lag..len(diff). The level coefficient is column 0.
fn df_regression(
    x: &[f64],
    diff: &[f64],
    start_lag: usize,
    lag: usize,
    deterministic: Deterministic,
) -> Result<super::linreg::OlsFit> {
    let n = diff.len() - start_lag;
    if n <= lag + deterministic.n_terms() + 1 {
        return Err(data_err("adf: insufficient observations after lagging"));
    }
    let k = 1 + lag + deterministic.n_terms();
    let mut xm = DMatrix::zeros(n, k);
    let y = DVector::from_fn(n, |r, _| diff[start_lag + r]);
    for r in 0..n {
        let tix = start_lag + r; // diff index being explained
        xm[(r, 0)] = x[tix]; // level x_{t-1}
        for j in 1..=lag {
            xm[(r, j)] = diff[tix - j];
        }
        match deterministic {
            Deterministic::None => {}
            Deterministic::Constant => xm[(r, 1 + lag)] = 1.0,
            Deterministic::ConstantTrend => {
                xm[(r, 1 + lag)] = 1.0;
                xm[(r, 2 + lag)] = (r + 1) as f64;
            }
        }
    }
    ols(&y, &xm)
}
