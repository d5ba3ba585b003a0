//! Internal univariate OLS used by the regression-based tests.

use nalgebra::{DMatrix, DVector};

use crate::error::{num_err, Result};

pub(crate) struct OlsFit {
    pub coef: DVector<f64>,
    pub residuals: DVector<f64>,
    pub ssr: f64,
    /// Standard errors of the coefficients (denominator n - k).
    pub stderr: DVector<f64>,
    pub nobs: usize,
    pub nparams: usize,
}

impl OlsFit {
    pub fn t_stat(&self, i: usize) -> f64 {
        self.coef[i] / self.stderr[i]
    }

    /// Gaussian-likelihood AIC up to an additive constant in n:
    /// n ln(SSR/n) + 2k. Candidates on a common sample rank identically
    /// to the exact AIC.
    pub fn aic(&self) -> f64 {
        let n = self.nobs as f64;
        n * (self.ssr / n).ln() + 2.0 * self.nparams as f64
    }
}

/// Ordinary least squares of `y` on the columns of `x` via the normal
/// equations. Fails on rank-deficient regressors.
pub(crate) fn ols(y: &DVector<f64>, x: &DMatrix<f64>) -> Result<OlsFit> {
    let n = x.nrows();
    let k = x.ncols();
    if n <= k {
        return Err(num_err(format!("ols: {n} observations for {k} parameters")));
    }
    let xtx = x.transpose() * x;
    let xty = x.transpose() * y;
    let chol = xtx
        .clone()
        .cholesky()
        .ok_or_else(|| num_err("ols: rank-deficient regressor matrix"))?;
    let coef = chol.solve(&xty);
    let residuals = y - x * &coef;
    let ssr = residuals.dot(&residuals);
    let sigma2 = ssr / (n - k) as f64;
    let xtx_inv = chol.inverse();
    let stderr = DVector::from_fn(k, |i, _| (sigma2 * xtx_inv[(i, i)]).sqrt());
    Ok(OlsFit {
        coef,
        residuals,
        ssr,
        stderr,
        nobs: n,
        nparams: k,
    })
}
