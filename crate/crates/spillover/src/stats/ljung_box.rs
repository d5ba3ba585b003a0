//! Ljung-Box portmanteau test on squared series, the heteroskedasticity
//! diagnostic behind a Q^2(m) column.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::TestResult;
use crate::error::{data_err, num_err, Result};

/// Ljung-Box Q statistic of a series: n(n+2) sum_k rho_k^2 / (n-k).
pub(crate) fn ljung_box_statistic(z: &[f64], lags: usize) -> Result<f64> {
    let n = z.len();
    let nf = n as f64;
    let mean = z.iter().sum::<f64>() / nf;
    let denom: f64 = z.iter().map(|v| (v - mean) * (v - mean)).sum();
    if denom <= 0.0 {
        return Err(num_err("ljung-box: constant series"));
    }
    let mut q = 0.0;
    for k in 1..=lags {
        let mut acov = 0.0;
        for t in k..n {
            acov += (z[t] - mean) * (z[t - k] - mean);
        }
        let rho = acov / denom;
        q += rho * rho / (nf - k as f64);
    }
    Ok(nf * (nf + 2.0) * q)
}

/// Ljung-Box test applied to the squared, mean-removed series; p-value
/// from chi-square(lags).
///
/// Null hypothesis: no autocorrelation in the squared series up to the
/// given order (no ARCH-type time-varying variance).
pub fn ljung_box_squared(x: &[f64], lags: usize, level: f64) -> Result<TestResult> {
    let n = x.len();
    if lags == 0 {
        return Err(data_err("ljung-box: lags must be at least 1"));
    }
    if n <= lags {
        return Err(data_err(format!(
            "ljung-box: need more than {lags} observations, got {n}"
        )));
    }
    let mean = x.iter().sum::<f64>() / n as f64;
    let z: Vec<f64> = x.iter().map(|v| (v - mean) * (v - mean)).collect();
    let stat = ljung_box_statistic(&z, lags)?;
    let chi2 = ChiSquared::new(lags as f64).expect("chi2");
    let p = 1.0 - chi2.cdf(stat);
    Ok(TestResult::new("ljung-box-squared", stat, p, Some(lags), level))
}
