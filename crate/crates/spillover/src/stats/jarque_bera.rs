//! Jarque-Bera normality test.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::TestResult;
use crate::error::{data_err, num_err, Result};

/// Population central moments m2..m4 around the mean.
pub(crate) fn central_moments(x: &[f64]) -> (f64, f64, f64, f64) {
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
    (mean, m2 / n, m3 / n, m4 / n)
}

/// Sample skewness and excess kurtosis (standardized third and fourth
/// central moments; a normal sample has both near 0).
pub(crate) fn skew_kurtosis(x: &[f64]) -> Result<(f64, f64)> {
    let (_, m2, m3, m4) = central_moments(x);
    if m2 <= 0.0 {
        return Err(num_err("zero variance"));
    }
    let skew = m3 / m2.powf(1.5);
    let ex_kurt = m4 / (m2 * m2) - 3.0;
    Ok((skew, ex_kurt))
}

/// Jarque-Bera test: statistic T/6 (S^2 + K^2/4) with S the sample
/// skewness and K the excess kurtosis; p-value from chi-square(2).
///
/// Null hypothesis: normal skewness and kurtosis.
pub fn jarque_bera(x: &[f64], level: f64) -> Result<TestResult> {
    let t = x.len();
    if t < 8 {
        return Err(data_err(format!("jarque-bera: need at least 8 observations, got {t}")));
    }
    let (skew, ex_kurt) = skew_kurtosis(x)?;
    let stat = t as f64 / 6.0 * (skew * skew + ex_kurt * ex_kurt / 4.0);
    let chi2 = ChiSquared::new(2.0).expect("chi2(2)");
    let p = 1.0 - chi2.cdf(stat);
    Ok(TestResult::new("jarque-bera", stat, p, None, level))
}
