//! Seeded synthetic-data generators used by the examples and test
//! suites: Gaussian panels, VAR processes, random walks, GARCH series.
//!
//! All generators are deterministic in the seed and produce the same
//! stream on every platform.

use chrono::NaiveDate;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::panel::PanelSeries;

/// Seeded RNG shared by the generators in this module.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` standard normal draws.
pub fn normal_series(seed: u64, n: usize) -> Vec<f64> {
    let mut r = rng(seed);
    (0..n).map(|_| r.sample(StandardNormal)).collect()
}

/// T x N matrix of standard normal draws.
pub fn normal_matrix(seed: u64, t: usize, n: usize) -> DMatrix<f64> {
    let mut r = rng(seed);
    DMatrix::from_fn(t, n, |_, _| r.sample(StandardNormal))
}

/// Random walk: cumulative sum of standard normal steps.
pub fn random_walk(seed: u64, n: usize) -> Vec<f64> {
    let mut r = rng(seed);
    let mut x = Vec::with_capacity(n);
    let mut level = 0.0;
    for _ in 0..n {
        level += r.sample::<f64, _>(StandardNormal);
        x.push(level);
    }
    x
}

/// GARCH(1,1) series: sigma2_t = omega + alpha e_{t-1}^2 + beta sigma2_{t-1}.
pub fn garch_series(seed: u64, n: usize, omega: f64, alpha: f64, beta: f64) -> Vec<f64> {
    let mut r = rng(seed);
    let mut sigma2 = omega / (1.0 - alpha - beta).max(1e-6);
    let mut prev = 0.0;
    let mut x = Vec::with_capacity(n);
    for _ in 0..n {
        sigma2 = omega + alpha * prev * prev + beta * sigma2;
        let e: f64 = r.sample(StandardNormal);
        prev = e * sigma2.sqrt();
        x.push(prev);
    }
    x
}

/// Simulates a VAR(p) in matrix form. `coeffs[j]` multiplies the j+1-th
/// lag; shocks are N(0, sigma) via the Cholesky factor of `sigma`.
/// Initial rows are zero; no burn-in is discarded.
pub fn var_values(
    seed: u64,
    t: usize,
    intercept: &DVector<f64>,
    coeffs: &[DMatrix<f64>],
    sigma: &DMatrix<f64>,
) -> DMatrix<f64> {
    let n = intercept.len();
    let chol = sigma
        .clone()
        .cholesky()
        .expect("shock covariance must be positive definite")
        .l();
    let mut r = rng(seed);
    let mut x = DMatrix::zeros(t, n);
    let mut shock = DVector::zeros(n);
    for row in 0..t {
        for k in 0..n {
            shock[k] = r.sample(StandardNormal);
        }
        let e = &chol * &shock;
        for i in 0..n {
            let mut v = intercept[i] + e[i];
            for (j, phi) in coeffs.iter().enumerate() {
                if row > j {
                    for k in 0..n {
                        v += phi[(i, k)] * x[(row - 1 - j, k)];
                    }
                }
            }
            x[(row, i)] = v;
        }
    }
    x
}

/// Like [`var_values`] but switches the coefficient matrices at
/// `break_row` (exclusive for the pre-break regime).
pub fn var_values_with_break(
    seed: u64,
    t: usize,
    break_row: usize,
    intercept: &DVector<f64>,
    coeffs_pre: &[DMatrix<f64>],
    coeffs_post: &[DMatrix<f64>],
    sigma: &DMatrix<f64>,
) -> DMatrix<f64> {
    let n = intercept.len();
    let chol = sigma
        .clone()
        .cholesky()
        .expect("shock covariance must be positive definite")
        .l();
    let mut r = rng(seed);
    let mut x = DMatrix::zeros(t, n);
    let mut shock = DVector::zeros(n);
    for row in 0..t {
        for k in 0..n {
            shock[k] = r.sample(StandardNormal);
        }
        let e = &chol * &shock;
        let coeffs = if row < break_row { coeffs_pre } else { coeffs_post };
        for i in 0..n {
            let mut v = intercept[i] + e[i];
            for (j, phi) in coeffs.iter().enumerate() {
                if row > j {
                    for k in 0..n {
                        v += phi[(i, k)] * x[(row - 1 - j, k)];
                    }
                }
            }
            x[(row, i)] = v;
        }
    }
    x
}

/// Wraps a value matrix into a panel with synthetic week-day dates.
pub fn panel_from_values(names: &[&str], values: DMatrix<f64>) -> Result<PanelSeries> {
    let dates = business_dates(values.nrows());
    PanelSeries::new(names.iter().map(|s| s.to_string()).collect(), dates, values)
}

/// Monday-to-Friday calendar starting 2022-01-03.
pub fn business_dates(n: usize) -> Vec<NaiveDate> {
    use chrono::Datelike;
    let mut dates = Vec::with_capacity(n);
    let mut d = NaiveDate::from_ymd_opt(2022, 1, 3).expect("valid date");
    while dates.len() < n {
        if !matches!(d.weekday(), chrono::Weekday::Sat | chrono::Weekday::Sun) {
            dates.push(d);
        }
        d = d.succ_opt().expect("date overflow");
    }
    dates
}
