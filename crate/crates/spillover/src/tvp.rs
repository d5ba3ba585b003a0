//! Time-varying parameter VAR estimated by a forgetting-factor Kalman
//! filter, plus a plain rolling-window re-estimation mode.
//!
//! The coefficient state follows a random walk whose prediction
//! covariance is inflated by 1/kappa1 each step; the measurement
//! covariance is an exponentially weighted moving average of one-step
//! prediction errors with decay kappa2. With kappa1 = kappa2 = 1 the
//! filter reduces to recursive least squares and converges to the
//! full-sample fit.

use chrono::NaiveDate;
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{data_err, num_err, Result};
use crate::panel::PanelSeries;
use crate::var::{fit_var_values, gfevd, FevdTable, VarModel};

/// Filter configuration.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct TvpConfig {
    /// Lag order of the measurement equation.
    pub lag: usize,
    /// Forgetting factor for the coefficient-state covariance, in (0.9, 1].
    pub kappa1: f64,
    /// Decay factor for the EWMA measurement covariance, in (0.9, 1].
    pub kappa2: f64,
    /// Scale on the initial coefficient-state covariance. At 1 the
    /// training-sample information enters at face value.
    pub prior_scale: f64,
    /// Observations used to train the prior and excluded from reporting;
    /// `None` applies max(30, 4N).
    pub burn_in: Option<usize>,
}

impl TvpConfig {
    pub fn new(lag: usize) -> Self {
        Self {
            lag,
            kappa1: 0.99,
            kappa2: 0.99,
            prior_scale: 0.1,
            burn_in: None,
        }
    }

    fn resolved_burn_in(&self, n: usize) -> usize {
        self.burn_in.unwrap_or_else(|| 30.max(4 * n))
    }

    fn validate(&self, t: usize, n: usize) -> Result<usize> {
        if self.lag == 0 {
            return Err(data_err("tvp: lag order must be positive"));
        }
        for (name, v) in [("kappa1", self.kappa1), ("kappa2", self.kappa2)] {
            if !(v > 0.9 && v <= 1.0) {
                return Err(data_err(format!("tvp: {name} = {v} outside (0.9, 1]")));
            }
        }
        if self.prior_scale < 0.0 {
            return Err(data_err("tvp: prior_scale must be nonnegative"));
        }
        let burn_in = self.resolved_burn_in(n);
        if burn_in <= self.lag || burn_in - self.lag <= n * self.lag + 1 {
            return Err(data_err(format!(
                "tvp: burn-in of {burn_in} too short to fit the training VAR({})",
                self.lag
            )));
        }
        if t - self.lag <= burn_in {
            return Err(data_err(format!(
                "tvp: {t} observations do not extend past the burn-in of {burn_in}"
            )));
        }
        Ok(burn_in)
    }
}

/// Per-date filtered coefficients and measurement covariances.
#[derive(Debug, Clone)]
pub struct TvpTrajectory {
    names: Vec<String>,
    lag: usize,
    dates: Vec<NaiveDate>,
    /// Stacked (Np+1) x N coefficient matrices, column = equation, row
    /// order [intercept, lag-1 block, ..., lag-p block].
    coeffs: Vec<DMatrix<f64>>,
    /// Per-date measurement covariance, symmetric positive definite.
    covariances: Vec<DMatrix<f64>>,
    config: TvpConfig,
}

impl TvpTrajectory {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lag(&self) -> usize {
        self.lag
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }

    pub fn config(&self) -> &TvpConfig {
        &self.config
    }

    /// Stacked coefficient matrix at date index `t`.
    pub fn coeff_matrix(&self, t: usize) -> &DMatrix<f64> {
        &self.coeffs[t]
    }

    pub fn covariance(&self, t: usize) -> &DMatrix<f64> {
        &self.covariances[t]
    }

    /// The filtered parameters at date index `t` as a static model.
    pub fn model_at(&self, t: usize) -> Result<VarModel> {
        let n = self.names.len();
        let b = &self.coeffs[t];
        let intercept = DVector::from_fn(n, |i, _| b[(0, i)]);
        let mut phis = Vec::with_capacity(self.lag);
        for j in 0..self.lag {
            phis.push(DMatrix::from_fn(n, n, |i, k| b[(1 + j * n + k, i)]));
        }
        VarModel::from_parts(
            self.names.clone(),
            intercept,
            phis,
            self.covariances[t].clone(),
        )
    }

    /// Long-form CSV: date, equation, regressor, coefficient.
    pub fn to_long_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["date", "equation", "regressor", "coefficient"])?;
        let n = self.names.len();
        for (t, date) in self.dates.iter().enumerate() {
            let b = &self.coeffs[t];
            for eq in 0..n {
                for row in 0..b.nrows() {
                    let regressor = if row == 0 {
                        "const".to_string()
                    } else {
                        let j = (row - 1) / n + 1;
                        let k = (row - 1) % n;
                        format!("{}.l{}", self.names[k], j)
                    };
                    wtr.write_record([
                        date.format("%Y-%m-%d").to_string(),
                        self.names[eq].clone(),
                        regressor,
                        format!("{}", b[(row, eq)]),
                    ])?;
                }
            }
        }
        wtr.flush()?;
        Ok(())
    }

    /// Writes one JSON record per date into `dir` (files named by date).
    pub fn write_json_dir<P: AsRef<std::path::Path>>(&self, dir: P) -> Result<()> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir)?;
        let n = self.names.len();
        for (t, date) in self.dates.iter().enumerate() {
            let b = &self.coeffs[t];
            let s = &self.covariances[t];
            let coeff_rows: Vec<Vec<f64>> =
                (0..b.nrows()).map(|r| b.row(r).iter().copied().collect()).collect();
            let cov_rows: Vec<Vec<f64>> =
                (0..n).map(|r| s.row(r).iter().copied().collect()).collect();
            let record = serde_json::json!({
                "date": date.format("%Y-%m-%d").to_string(),
                "names": self.names,
                "lag": self.lag,
                "coefficients": coeff_rows,
                "covariance": cov_rows,
            });
            let path = dir.join(format!("{}.json", date.format("%Y-%m-%d")));
            std::fs::write(path, serde_json::to_string_pretty(&record)?)?;
        }
        Ok(())
    }
}

/// Runs the forgetting-factor Kalman filter over the panel.
///
/// The prior is trained on the first `burn_in` observations: coefficient
/// mean from their least-squares fit, coefficient covariance
/// `prior_scale * Sigma_0 (x) (Z0'Z0)^-1`, measurement covariance
/// `Sigma_0`. Filtering then proceeds over the remaining dates, emitting
/// one (coefficients, covariance) pair per date.
pub fn tvp_filter(panel: &PanelSeries, config: &TvpConfig) -> Result<TvpTrajectory> {
    panel.require_complete()?;
    let values = panel.values();
    let t_total = values.nrows();
    let n = values.ncols();
    let burn_in = config.validate(t_total, n)?;
    let p = config.lag;
    let m = n * p + 1;

    // Training fit on the burn-in sample.
    let train = values.rows(0, burn_in).into_owned();
    let prior = fit_var_values(&train, panel.names().to_vec(), p, true)?;
    let mut b = stacked_coefficients(&prior, n, p);
    let mut s = prior.sigma().clone();

    // Z0'Z0 from the training regressors.
    let rows0 = burn_in - p;
    let mut z0 = DMatrix::zeros(rows0, m);
    for r in 0..rows0 {
        let tix = r + p;
        z0[(r, 0)] = 1.0;
        for j in 1..=p {
            for k in 0..n {
                z0[(r, 1 + (j - 1) * n + k)] = train[(tix - j, k)];
            }
        }
    }
    let z0tz0_inv = (z0.transpose() * &z0)
        .cholesky()
        .ok_or_else(|| num_err("tvp: rank-deficient training regressors"))?
        .inverse();

    // State covariance, equation-major: block (i, j) = Sigma_ij * Ptilde.
    let dim = n * m;
    let mut p_cov = DMatrix::zeros(dim, dim);
    for i in 0..n {
        for j in 0..n {
            let scale = config.prior_scale * s[(i, j)];
            for a in 0..m {
                for c in 0..m {
                    p_cov[(i * m + a, j * m + c)] = scale * z0tz0_inv[(a, c)];
                }
            }
        }
    }

    let n_out = t_total - burn_in;
    let mut coeffs = Vec::with_capacity(n_out);
    let mut covariances = Vec::with_capacity(n_out);
    let mut z = DVector::zeros(m);
    for t in burn_in..t_total {
        z[0] = 1.0;
        for j in 1..=p {
            for k in 0..n {
                z[1 + (j - 1) * n + k] = values[(t - j, k)];
            }
        }

        // Prediction step: random-walk state, covariance inflated by 1/kappa1.
        if config.kappa1 < 1.0 {
            p_cov /= config.kappa1;
        }

        // One-step prediction error.
        let mut e = DVector::zeros(n);
        for i in 0..n {
            let mut fitted = 0.0;
            for a in 0..m {
                fitted += b[(a, i)] * z[a];
            }
            e[i] = values[(t, i)] - fitted;
        }

        // EWMA measurement covariance.
        if config.kappa2 < 1.0 {
            s = &s * config.kappa2 + &e * e.transpose() * (1.0 - config.kappa2);
        }
        ensure_spd(&mut s).map_err(|_| {
            num_err(format!(
                "tvp: measurement covariance lost positive definiteness at {}",
                panel.dates()[t]
            ))
        })?;

        // Gain: K = P Z' F^-1 with Z = I (x) z'.
        let mut pzt = DMatrix::zeros(dim, n);
        for jeq in 0..n {
            for row in 0..dim {
                let mut acc = 0.0;
                for a in 0..m {
                    acc += p_cov[(row, jeq * m + a)] * z[a];
                }
                pzt[(row, jeq)] = acc;
            }
        }
        let mut f = DMatrix::zeros(n, n);
        for i in 0..n {
            for jeq in 0..n {
                let mut acc = 0.0;
                for a in 0..m {
                    acc += z[a] * pzt[(i * m + a, jeq)];
                }
                f[(i, jeq)] = acc + s[(i, jeq)];
            }
        }
        let f_chol = f.cholesky().ok_or_else(|| {
            num_err(format!(
                "tvp: prediction covariance lost positive definiteness at {}",
                panel.dates()[t]
            ))
        })?;
        let k_gain = f_chol.solve(&pzt.transpose()).transpose(); // dim x n

        // Update.
        let delta = &k_gain * &e;
        for i in 0..n {
            for a in 0..m {
                b[(a, i)] += delta[i * m + a];
            }
        }
        p_cov -= &k_gain * pzt.transpose();
        // Keep the state covariance symmetric against rounding drift.
        for r in 0..dim {
            for c in (r + 1)..dim {
                let v = 0.5 * (p_cov[(r, c)] + p_cov[(c, r)]);
                p_cov[(r, c)] = v;
                p_cov[(c, r)] = v;
            }
        }

        coeffs.push(b.clone());
        covariances.push(s.clone());
    }

    Ok(TvpTrajectory {
        names: panel.names().to_vec(),
        lag: p,
        dates: panel.dates()[burn_in..].to_vec(),
        coeffs,
        covariances,
        config: config.clone(),
    })
}

fn stacked_coefficients(model: &VarModel, n: usize, p: usize) -> DMatrix<f64> {
    let m = n * p + 1;
    let mut b = DMatrix::zeros(m, n);
    for i in 0..n {
        b[(0, i)] = model.intercept()[i];
        for (j, phi) in model.coeffs().iter().enumerate() {
            for k in 0..n {
                b[(1 + j * n + k, i)] = phi[(i, k)];
            }
        }
    }
    b
}

/// Symmetrizes in place and floors eigenvalues at 1e-10 if a Cholesky
/// factorization fails; errors when the matrix cannot be repaired.
fn ensure_spd(s: &mut DMatrix<f64>) -> Result<()> {
    let n = s.nrows();
    for r in 0..n {
        for c in (r + 1)..n {
            let v = 0.5 * (s[(r, c)] + s[(c, r)]);
            s[(r, c)] = v;
            s[(c, r)] = v;
        }
    }
    if s.clone().cholesky().is_some() {
        return Ok(());
    }
    let eig = s.clone().symmetric_eigen();
    let mut floored = DMatrix::zeros(n, n);
    for (idx, ev) in eig.eigenvalues.iter().enumerate() {
        let lambda = ev.max(1e-10);
        let v = eig.eigenvectors.column(idx);
        floored += lambda * &v * v.transpose();
    }
    if floored.clone().cholesky().is_none() {
        return Err(num_err("covariance not repairable"));
    }
    *s = floored;
    Ok(())
}

/// Forecast-error variance decomposition at every trajectory date.
pub fn trajectory_fevd(traj: &TvpTrajectory, h: usize) -> Result<Vec<(NaiveDate, FevdTable)>> {
    if traj.is_empty() {
        return Err(data_err("trajectory fevd: empty trajectory"));
    }
    (0..traj.len())
        .into_par_iter()
        .map(|t| {
            let model = traj.model_at(t)?;
            let fevd = gfevd(&model, h)
                .map_err(|e| num_err(format!("trajectory fevd at {}: {e}", traj.dates()[t])))?;
            Ok((traj.dates()[t], fevd))
        })
        .collect()
}

/// Re-estimates a static VAR over a moving window, decomposing each fit;
/// tables are dated at the window's last observation.
pub fn rolling_var_fevd(
    panel: &PanelSeries,
    window: usize,
    p: usize,
    h: usize,
) -> Result<Vec<(NaiveDate, FevdTable)>> {
    panel.require_complete()?;
    let t = panel.len();
    let n = panel.width();
    let min_window = n * (p + 1) + 10;
    if window < min_window {
        return Err(data_err(format!(
            "rolling fevd: window {window} too small for N={n}, p={p} (need at least {min_window})"
        )));
    }
    if window > t {
        return Err(data_err(format!(
            "rolling fevd: window {window} exceeds {t} observations"
        )));
    }
    let values = panel.values();
    let names = panel.names().to_vec();
    (0..=(t - window))
        .into_par_iter()
        .map(|start| {
            let end = start + window;
            let slice = values.rows(start, window).into_owned();
            let model = fit_var_values(&slice, names.clone(), p, true)?;
            let fevd = gfevd(&model, h)?;
            Ok((panel.dates()[end - 1], fevd))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim;
    use crate::var::fit_var;
    use nalgebra::{DMatrix, DVector};

    fn const_var1_panel(seed: u64, t: usize) -> PanelSeries {
        let phi = DMatrix::from_row_slice(2, 2, &[0.5, 0.2, -0.1, 0.3]);
        let sigma = DMatrix::from_row_slice(2, 2, &[1.0, 0.3, 0.3, 1.0]);
        let values = sim::var_values(seed, t, &DVector::from_vec(vec![0.1, -0.2]), &[phi], &sigma);
        sim::panel_from_values(&["a", "b"], values).unwrap()
    }

    #[test]
    fn filter_tracks_constant_parameters() {
        let panel = const_var1_panel(5, 1000);
        let config = TvpConfig::new(1);
        let traj = tvp_filter(&panel, &config).unwrap();
        let last = traj.model_at(traj.len() - 1).unwrap();
        let truth = DMatrix::from_row_slice(2, 2, &[0.5, 0.2, -0.1, 0.3]);
        let max_err = (&truth - &last.coeffs()[0])
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max);
        assert!(max_err < 0.1, "max coefficient error {max_err}");
    }

    #[test]
    fn unit_kappas_reproduce_full_sample_ols() {
        let panel = const_var1_panel(6, 200);
        let mut config = TvpConfig::new(1);
        config.kappa1 = 1.0;
        config.kappa2 = 1.0;
        config.prior_scale = 1.0;
        let traj = tvp_filter(&panel, &config).unwrap();
        let last = traj.model_at(traj.len() - 1).unwrap();
        let ols = fit_var(&panel, 1, true).unwrap();
        let dphi = (&ols.coeffs()[0] - &last.coeffs()[0])
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max);
        let dint = (ols.intercept() - last.intercept())
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max);
        assert!(dphi < 1e-6, "coefficient gap {dphi}");
        assert!(dint < 1e-6, "intercept gap {dint}");
    }

    #[test]
    fn unit_kappas_with_default_prior_converge_to_ols() {
        // Recursive-least-squares equivalence: with both factors at 1 the
        // prior shrinkage is the only gap to the full-sample fit, and it
        // washes out over a long sample.
        let panel = const_var1_panel(7, 5000);
        let mut config = TvpConfig::new(1);
        config.kappa1 = 1.0;
        config.kappa2 = 1.0;
        let traj = tvp_filter(&panel, &config).unwrap();
        let last = traj.model_at(traj.len() - 1).unwrap();
        let ols = fit_var(&panel, 1, true).unwrap();
        let dphi = (&ols.coeffs()[0] - &last.coeffs()[0])
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max);
        assert!(dphi < 0.05, "coefficient gap {dphi}");
    }

    #[test]
    fn filter_adapts_to_coefficient_break() {
        // Scalar coefficient jumps 0.2 -> 0.8 at t = 500.
        let pre = DMatrix::from_element(1, 1, 0.2);
        let post = DMatrix::from_element(1, 1, 0.8);
        let values = sim::var_values_with_break(
            17,
            1000,
            500,
            &DVector::zeros(1),
            std::slice::from_ref(&pre),
            std::slice::from_ref(&post),
            &DMatrix::identity(1, 1),
        );
        let panel = sim::panel_from_values(&["x"], values).unwrap();
        let mut config = TvpConfig::new(1);
        config.kappa1 = 0.96;
        let traj = tvp_filter(&panel, &config).unwrap();
        let burn_in = 30;
        let break_pos = 500 - burn_in;
        let crossing = (break_pos..traj.len())
            .find(|&t| traj.coeff_matrix(t)[(1, 0)] > 0.5)
            .expect("coefficient never crossed the midpoint");
        let lag = crossing - break_pos;
        assert!(lag <= 60, "crossed midpoint only after {lag} observations");
    }

    #[test]
    fn covariances_stay_positive_definite() {
        let panel = const_var1_panel(9, 400);
        let traj = tvp_filter(&panel, &TvpConfig::new(1)).unwrap();
        for t in 0..traj.len() {
            assert!(traj.covariance(t).clone().cholesky().is_some(), "date index {t}");
        }
    }

    #[test]
    fn deterministic_in_inputs() {
        let panel = const_var1_panel(11, 300);
        let a = tvp_filter(&panel, &TvpConfig::new(1)).unwrap();
        let b = tvp_filter(&panel, &TvpConfig::new(1)).unwrap();
        assert_eq!(a.coeffs, b.coeffs);
        assert_eq!(a.covariances, b.covariances);
    }

    #[test]
    fn config_validation() {
        let panel = const_var1_panel(3, 100);
        let mut config = TvpConfig::new(1);
        config.kappa1 = 0.5;
        assert!(tvp_filter(&panel, &config).is_err());
        let mut config = TvpConfig::new(1);
        config.burn_in = Some(99);
        assert!(tvp_filter(&panel, &config).is_err());
    }

    #[test]
    fn trajectory_fevd_identity_for_static_noise() {
        // Zero coefficients and identity covariance at a single date.
        let traj = TvpTrajectory {
            names: vec!["a".into(), "b".into()],
            lag: 1,
            dates: vec![chrono::NaiveDate::from_ymd_opt(2022, 1, 3).unwrap()],
            coeffs: vec![DMatrix::zeros(3, 2)],
            covariances: vec![DMatrix::identity(2, 2)],
            config: TvpConfig::new(1),
        };
        let tables = trajectory_fevd(&traj, 10).unwrap();
        assert_eq!(tables.len(), 1);
        let f = &tables[0].1;
        assert!((f.share(0, 0) - 1.0).abs() < 1e-14);
        assert!(f.share(0, 1).abs() < 1e-14);
    }

    #[test]
    fn trajectory_fevd_matches_static_gfevd() {
        let panel = const_var1_panel(13, 300);
        let ols = fit_var(&panel, 1, true).unwrap();
        let traj = TvpTrajectory {
            names: ols.names().to_vec(),
            lag: 1,
            dates: vec![chrono::NaiveDate::from_ymd_opt(2022, 1, 3).unwrap()],
            coeffs: vec![super::stacked_coefficients(&ols, 2, 1)],
            covariances: vec![ols.sigma().clone()],
            config: TvpConfig::new(1),
        };
        let from_traj = &trajectory_fevd(&traj, 10).unwrap()[0].1;
        let direct = gfevd(&ols, 10).unwrap();
        let diff = (from_traj.standardized() - direct.standardized())
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max);
        assert!(diff < 1e-12, "{diff}");
    }

    #[test]
    fn trajectory_fevd_converges_for_constant_dgp() {
        let panel = const_var1_panel(15, 3000);
        let traj = tvp_filter(&panel, &TvpConfig::new(1)).unwrap();
        let tables = trajectory_fevd(&traj, 10).unwrap();
        let last = tables[tables.len() - 1].1.standardized().clone();
        let prev = tables[tables.len() - 2].1.standardized().clone();
        let diff = (&last - &prev).iter().map(|v| v.abs()).fold(0.0, f64::max);
        assert!(diff < 1e-3, "last-step change {diff}");
    }

    #[test]
    fn trajectory_row_sums_are_one() {
        let panel = const_var1_panel(19, 200);
        let traj = tvp_filter(&panel, &TvpConfig::new(1)).unwrap();
        for (_, f) in trajectory_fevd(&traj, 10).unwrap() {
            for i in 0..2 {
                let sum: f64 = f.standardized().row(i).iter().sum();
                assert!((sum - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rolling_full_window_equals_static() {
        let panel = const_var1_panel(21, 120);
        let tables = rolling_var_fevd(&panel, 120, 1, 10).unwrap();
        assert_eq!(tables.len(), 1);
        let direct = gfevd(&fit_var(&panel, 1, true).unwrap(), 10).unwrap();
        let diff = (tables[0].1.standardized() - direct.standardized())
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max);
        assert!(diff < 1e-14);
        assert_eq!(tables[0].0, *panel.dates().last().unwrap());
    }

    #[test]
    fn rolling_windows_fluctuate_around_static_table() {
        let panel = const_var1_panel(23, 1000);
        let tables = rolling_var_fevd(&panel, 250, 1, 10).unwrap();
        let full = gfevd(&fit_var(&panel, 1, true).unwrap(), 10).unwrap();
        let mut dev_sum = 0.0;
        for (_, f) in &tables {
            dev_sum += (f.standardized() - full.standardized())
                .iter()
                .map(|v| v.abs())
                .sum::<f64>()
                / 4.0;
        }
        let mean_abs_dev = dev_sum / tables.len() as f64;
        assert!(mean_abs_dev < 0.1, "mean abs deviation {mean_abs_dev}");
    }

    #[test]
    fn rolling_window_thirty_with_eleven_variables_errors() {
        let values = sim::normal_matrix(25, 300, 11);
        let names: Vec<String> = (0..11).map(|i| format!("v{i}")).collect();
        let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let panel = sim::panel_from_values(&name_refs, values).unwrap();
        let err = rolling_var_fevd(&panel, 30, 1, 10).unwrap_err();
        assert!(err.to_string().contains("too small"), "{err}");
    }

    #[test]
    fn trajectory_serialization_roundtrips() {
        let panel = const_var1_panel(29, 100);
        let mut config = TvpConfig::new(1);
        config.burn_in = Some(40);
        let traj = tvp_filter(&panel, &config).unwrap();

        let mut csv_buf = Vec::new();
        traj.to_long_csv(&mut csv_buf).unwrap();
        let text = String::from_utf8(csv_buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), "date,equation,regressor,coefficient");
        // One row per (date, equation, regressor).
        assert_eq!(text.lines().count(), 1 + traj.len() * 2 * 3);
        assert!(text.contains("a.l1") && text.contains("const"));

        let dir = tempfile::tempdir().unwrap();
        traj.write_json_dir(dir.path()).unwrap();
        let first = dir
            .path()
            .join(format!("{}.json", traj.dates()[0].format("%Y-%m-%d")));
        let record: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(first).unwrap()).unwrap();
        assert_eq!(record["lag"], 1);
        let c00 = record["coefficients"][0][0].as_f64().unwrap();
        assert!((c00 - traj.coeff_matrix(0)[(0, 0)]).abs() < 1e-15);
    }

    #[test]
    fn empty_trajectory_fevd_errors() {
        let traj = TvpTrajectory {
            names: vec!["a".into()],
            lag: 1,
            dates: vec![],
            coeffs: vec![],
            covariances: vec![],
            config: TvpConfig::new(1),
        };
        assert!(trajectory_fevd(&traj, 10).is_err());
    }

    #[test]
    fn rolling_parallel_deterministic() {
        let panel = const_var1_panel(27, 400);
        let a = rolling_var_fevd(&panel, 200, 1, 10).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| rolling_var_fevd(&panel, 200, 1, 10).unwrap());
        assert_eq!(a.len(), b.len());
        for ((da, fa), (db, fb)) in a.iter().zip(&b) {
            assert_eq!(da, db);
            assert_eq!(fa.standardized(), fb.standardized());
        }
    }
}
