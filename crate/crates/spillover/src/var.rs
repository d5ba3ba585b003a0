//! Static vector autoregression: least-squares estimation, lag selection,
//! the moving-average representation, and h-step forecast-error variance
//! decompositions.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{data_err, num_err, Result};
use crate::panel::PanelSeries;

/// Information criterion for lag selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LagCriterion {
    Bic,
    Aic,
}

/// Fitted VAR(p): x_t = d + sum_j Phi_j x_{t-j} + w_t.
#[derive(Debug, Clone)]
pub struct VarModel {
    names: Vec<String>,
    lag: usize,
    intercept: DVector<f64>,
    coeffs: Vec<DMatrix<f64>>,
    sigma: DMatrix<f64>,
    residuals: DMatrix<f64>,
}

impl VarModel {
    /// Assembles a model from known parameters (e.g. one date of a
    /// time-varying trajectory). `sigma` must be symmetric positive
    /// definite; `residuals` may be empty.
    pub fn from_parts(
        names: Vec<String>,
        intercept: DVector<f64>,
        coeffs: Vec<DMatrix<f64>>,
        sigma: DMatrix<f64>,
    ) -> Result<Self> {
        let n = names.len();
        if intercept.len() != n || sigma.nrows() != n || sigma.ncols() != n {
            return Err(data_err("var: parameter shapes do not match names"));
        }
        if coeffs.is_empty() {
            return Err(data_err("var: at least one lag matrix required"));
        }
        for c in &coeffs {
            if c.nrows() != n || c.ncols() != n {
                return Err(data_err("var: coefficient matrix shape mismatch"));
            }
        }
        Ok(Self {
            names,
            lag: coeffs.len(),
            intercept,
            coeffs,
            sigma,
            residuals: DMatrix::zeros(0, n),
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lag(&self) -> usize {
        self.lag
    }

    pub fn width(&self) -> usize {
        self.names.len()
    }

    pub fn intercept(&self) -> &DVector<f64> {
        &self.intercept
    }

    /// Lag coefficient matrices Phi_1..Phi_p.
    pub fn coeffs(&self) -> &[DMatrix<f64>] {
        &self.coeffs
    }

    /// Residual covariance (maximum-likelihood denominator T - p).
    pub fn sigma(&self) -> &DMatrix<f64> {
        &self.sigma
    }

    /// Residual matrix, one row per estimation-sample observation.
    pub fn residuals(&self) -> &DMatrix<f64> {
        &self.residuals
    }

    /// Spectral radius of the companion matrix; < 1 for a stable VAR.
    pub fn companion_spectral_radius(&self) -> f64 {
        let n = self.width();
        let p = self.lag;
        let mut companion = DMatrix::zeros(n * p, n * p);
        for (j, phi) in self.coeffs.iter().enumerate() {
            companion.view_mut((0, j * n), (n, n)).copy_from(phi);
        }
        for j in 1..p {
            for i in 0..n {
                companion[(j * n + i, (j - 1) * n + i)] = 1.0;
            }
        }
        companion
            .complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_stable(&self) -> bool {
        self.companion_spectral_radius() < 1.0
    }
}

/// Equation-by-equation least squares fit of a VAR(p).
pub fn fit_var(panel: &PanelSeries, p: usize, intercept: bool) -> Result<VarModel> {
    panel.require_complete()?;
    fit_var_values(panel.values(), panel.names().to_vec(), p, intercept)
}

/// [`fit_var`] on a raw T x N value matrix.
pub(crate) fn fit_var_values(
    values: &DMatrix<f64>,
    names: Vec<String>,
    p: usize,
    intercept: bool,
) -> Result<VarModel> {
    let t = values.nrows();
    let n = values.ncols();
    if p == 0 {
        return Err(data_err("var: lag order must be positive"));
    }
    if t <= p || t - p <= n * p + 1 {
        return Err(data_err(format!(
            "var: {t} observations insufficient for N={n}, p={p}"
        )));
    }
    let rows = t - p;
    let m = n * p + usize::from(intercept);
    let mut z = DMatrix::zeros(rows, m);
    let mut y = DMatrix::zeros(rows, n);
    for r in 0..rows {
        let tix = r + p;
        let mut col = 0;
        if intercept {
            z[(r, 0)] = 1.0;
            col = 1;
        }
        for j in 1..=p {
            for k in 0..n {
                z[(r, col)] = values[(tix - j, k)];
                col += 1;
            }
        }
        for k in 0..n {
            y[(r, k)] = values[(tix, k)];
        }
    }
    let ztz = z.transpose() * &z;
    let chol = ztz
        .cholesky()
        .ok_or_else(|| num_err("var: rank-deficient regressor matrix"))?;
    let b = chol.solve(&(z.transpose() * &y)); // m x n, column = equation
    let residuals = &y - &z * &b;
    let sigma = residuals.transpose() * &residuals / rows as f64;

    let offset = usize::from(intercept);
    let d = if intercept {
        DVector::from_fn(n, |i, _| b[(0, i)])
    } else {
        DVector::zeros(n)
    };
    let mut coeffs = Vec::with_capacity(p);
    for j in 0..p {
        coeffs.push(DMatrix::from_fn(n, n, |i, k| b[(offset + j * n + k, i)]));
    }
    Ok(VarModel {
        names,
        lag: p,
        intercept: d,
        coeffs,
        sigma,
        residuals,
    })
}

/// Lag order minimizing the chosen criterion over 1..=p_max, all
/// candidates evaluated on the sample truncated at p_max lags.
pub fn select_lag(panel: &PanelSeries, p_max: usize, criterion: LagCriterion) -> Result<usize> {
    panel.require_complete()?;
    let values = panel.values();
    let t = values.nrows();
    let n = values.ncols();
    if p_max == 0 {
        return Err(data_err("var: p_max must be at least 1"));
    }
    if t <= p_max || t - p_max <= n * p_max + 1 {
        return Err(data_err(format!(
            "var: {t} observations insufficient for lag search up to {p_max}"
        )));
    }
    let rows = t - p_max;
    let nf = rows as f64;
    let mut best = 1usize;
    let mut best_ic = f64::INFINITY;
    for p in 1..=p_max {
        let m = n * p + 1;
        let mut z = DMatrix::zeros(rows, m);
        let mut y = DMatrix::zeros(rows, n);
        for r in 0..rows {
            let tix = r + p_max;
            z[(r, 0)] = 1.0;
            let mut col = 1;
            for j in 1..=p {
                for k in 0..n {
                    z[(r, col)] = values[(tix - j, k)];
                    col += 1;
                }
            }
            for k in 0..n {
                y[(r, k)] = values[(tix, k)];
            }
        }
        let chol = (z.transpose() * &z)
            .cholesky()
            .ok_or_else(|| num_err("var: rank-deficient regressor matrix"))?;
        let b = chol.solve(&(z.transpose() * &y));
        let resid = &y - &z * &b;
        let sigma = resid.transpose() * &resid / nf;
        let det = sigma
            .clone()
            .cholesky()
            .map(|c| {
                // det(Sigma) from the Cholesky factor diagonal.
                2.0 * c.l().diagonal().iter().map(|v| v.ln()).sum::<f64>()
            })
            .ok_or_else(|| num_err("var: singular residual covariance in lag search"))?;
        let k_params = (p * n * n + n) as f64;
        let penalty = match criterion {
            LagCriterion::Bic => nf.ln(),
            LagCriterion::Aic => 2.0,
        };
        let ic = det + penalty * k_params / nf;
        if ic < best_ic {
            best_ic = ic;
            best = p;
        }
    }
    Ok(best)
}

/// Wold moving-average matrices A_0..A_{n_terms-1}:
/// A_0 = I, A_s = sum_{j=1..min(s,p)} Phi_j A_{s-j}.
pub fn ma_coefficients(model: &VarModel, n_terms: usize) -> Vec<DMatrix<f64>> {
    let n = model.width();
    let p = model.lag();
    let mut out: Vec<DMatrix<f64>> = Vec::with_capacity(n_terms);
    for s in 0..n_terms {
        if s == 0 {
            out.push(DMatrix::identity(n, n));
            continue;
        }
        let mut a = DMatrix::zeros(n, n);
        for j in 1..=p.min(s) {
            a += &model.coeffs()[j - 1] * &out[s - j];
        }
        out.push(a);
    }
    out
}

/// The h-step forecast-error variance decomposition table: raw shares
/// d_ij and the row-standardized l_ij with unit row sums.
#[derive(Debug, Clone)]
pub struct FevdTable {
    names: Vec<String>,
    horizon: usize,
    raw: DMatrix<f64>,
    standardized: DMatrix<f64>,
}

impl FevdTable {
    /// Builds a table from an already row-stochastic share matrix
    /// (entries >= 0, each row summing to 1 within 1e-8).
    pub fn from_shares(names: Vec<String>, shares: DMatrix<f64>, horizon: usize) -> Result<Self> {
        validate_square(&names, &shares)?;
        for i in 0..shares.nrows() {
            let mut sum = 0.0;
            for j in 0..shares.ncols() {
                let v = shares[(i, j)];
                if v < 0.0 {
                    return Err(data_err(format!("fevd: negative share at ({i}, {j})")));
                }
                sum += v;
            }
            if (sum - 1.0).abs() > 1e-8 {
                return Err(data_err(format!("fevd: row {i} sums to {sum}, expected 1")));
            }
        }
        Ok(Self {
            names,
            horizon,
            raw: shares.clone(),
            standardized: shares,
        })
    }

    /// Builds a table from percent cells (as printed in rounded
    /// connectedness tables; rows summing to 100 within 2, leaving room
    /// for rounding and the occasional typesetting slip). The cells are
    /// kept as given, divided by 100, without re-standardization.
    pub fn from_percent_cells(names: Vec<String>, cells: DMatrix<f64>, horizon: usize) -> Result<Self> {
        validate_square(&names, &cells)?;
        for i in 0..cells.nrows() {
            let sum: f64 = cells.row(i).iter().sum();
            if (sum - 100.0).abs() > 2.0 {
                return Err(data_err(format!("fevd: row {i} sums to {sum}, expected 100")));
            }
        }
        let standardized = cells.map(|v| v / 100.0);
        Ok(Self {
            names,
            horizon,
            raw: cells,
            standardized,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Row-standardized share of variable `i`'s forecast-error variance
    /// attributable to shocks in `j`.
    pub fn share(&self, i: usize, j: usize) -> f64 {
        self.standardized[(i, j)]
    }

    pub fn standardized(&self) -> &DMatrix<f64> {
        &self.standardized
    }

    /// Unstandardized decomposition values.
    pub fn raw(&self) -> &DMatrix<f64> {
        &self.raw
    }

    pub fn width(&self) -> usize {
        self.names.len()
    }

    /// JSON object {names, horizon, shares} at full precision.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<f64>> = (0..self.width())
            .map(|i| self.standardized.row(i).iter().copied().collect())
            .collect();
        serde_json::json!({
            "names": self.names,
            "horizon": self.horizon,
            "shares": rows,
        })
    }

    /// CSV with a header row of names; percent cells rendered at two
    /// decimals (full precision is preserved in the table itself).
    pub fn to_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        let mut header = vec![String::new()];
        header.extend(self.names.iter().cloned());
        wtr.write_record(&header)?;
        for i in 0..self.width() {
            let mut rec = vec![self.names[i].clone()];
            for j in 0..self.width() {
                rec.push(format!("{:.2}", 100.0 * self.standardized[(i, j)]));
            }
            wtr.write_record(&rec)?;
        }
        wtr.flush()?;
        Ok(())
    }
}

fn validate_square(names: &[String], m: &DMatrix<f64>) -> Result<()> {
    if m.nrows() != m.ncols() || m.nrows() != names.len() {
        return Err(data_err(format!(
            "fevd: {}x{} matrix for {} names",
            m.nrows(),
            m.ncols(),
            names.len()
        )));
    }
    Ok(())
}

/// Generalized (order-invariant) h-step forecast-error variance
/// decomposition:
/// d_ij = sigma_jj^-1 sum_s (e_i' A_s Sigma e_j)^2
///        / sum_s e_i' A_s Sigma A_s' e_i,
/// then rows standardized to sum to one.
pub fn gfevd(model: &VarModel, h: usize) -> Result<FevdTable> {
    if h == 0 {
        return Err(data_err("fevd: horizon must be at least 1"));
    }
    let sigma = model.sigma();
    if sigma.clone().cholesky().is_none() {
        return Err(num_err("fevd: residual covariance not positive definite"));
    }
    let n = model.width();
    let ma = ma_coefficients(model, h);
    let mut raw = DMatrix::zeros(n, n);
    let mut denom = vec![0.0; n];
    for a in &ma {
        let a_sigma = a * sigma;
        let a_sigma_at = &a_sigma * a.transpose();
        for i in 0..n {
            denom[i] += a_sigma_at[(i, i)];
            for j in 0..n {
                raw[(i, j)] += a_sigma[(i, j)] * a_sigma[(i, j)] / sigma[(j, j)];
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            raw[(i, j)] /= denom[i];
        }
    }
    standardize(model.names().to_vec(), raw, h)
}

/// Orthogonalized (Cholesky-ordered) h-step decomposition. `order` lists
/// variable indices from first to last in the recursive ordering.
pub fn fevd_cholesky(model: &VarModel, h: usize, order: &[usize]) -> Result<FevdTable> {
    if h == 0 {
        return Err(data_err("fevd: horizon must be at least 1"));
    }
    let n = model.width();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
        return Err(data_err("fevd: order must be a permutation of the variable indices"));
    }
    // Permute sigma into the requested ordering, factor, and map back.
    let sigma = model.sigma();
    let perm_sigma = DMatrix::from_fn(n, n, |a, b| sigma[(order[a], order[b])]);
    let l = perm_sigma
        .cholesky()
        .ok_or_else(|| num_err("fevd: residual covariance not positive definite"))?
        .l();
    // p_matrix[(original i, shock column)] in the permuted shock basis.
    let mut p_matrix = DMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            p_matrix[(order[a], b)] = l[(a, b)];
        }
    }
    let ma = ma_coefficients(model, h);
    let mut raw = DMatrix::zeros(n, n);
    let mut denom = vec![0.0; n];
    for a in &ma {
        let theta = a * &p_matrix;
        for i in 0..n {
            for b in 0..n {
                let v = theta[(i, b)];
                raw[(i, order[b])] += v * v;
                denom[i] += v * v;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            raw[(i, j)] /= denom[i];
        }
    }
    standardize(model.names().to_vec(), raw, h)
}

fn standardize(names: Vec<String>, raw: DMatrix<f64>, horizon: usize) -> Result<FevdTable> {
    let n = raw.nrows();
    let mut standardized = raw.clone();
    for i in 0..n {
        let sum: f64 = raw.row(i).iter().sum();
        if !(sum.is_finite() && sum > 0.0) {
            return Err(num_err(format!("fevd: degenerate variance row {i}")));
        }
        for j in 0..n {
            standardized[(i, j)] = raw[(i, j)] / sum;
        }
    }
    Ok(FevdTable {
        names,
        horizon,
        raw,
        standardized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim;

    /// Fitted-parameter reference: seeded VAR(1) panel, T = 60, N = 3.
    const PANEL: [f64; 180] = [
        0.0000000000, 0.0000000000, 0.0000000000, 0.2003690460, -0.0103763387, -0.0322413566,
        0.0319693375, -0.2459624085, -0.2403536045, 0.2094315087, 0.1802051302, -0.1906064636,
        0.1365937974, 0.0628928614, 0.1017666679, 0.3062104595, -0.3399192214, 0.0955905001,
        0.5277042660, -0.5861220306, -0.0184274823, -0.1651268920, -0.6663834276, -0.4571210777,
        -0.0197291281, -0.7715731882, -0.0679818126, 0.1600034431, -0.4011476024, -0.7341935511,
        0.0782790926, -0.3817332746, -0.1936843803, -0.2580745108, -0.3965828412, -0.3132015663,
        -0.2113467114, 0.0366544214, -0.3433484802, 0.0882355750, 0.1076435906, -0.2835541930,
        0.2213715617, -0.0912785185, -0.0354635874, -0.0659588189, -0.1116342039, 0.4655987477,
        -0.3082862333, 0.2174442948, 0.2654498249, -0.1248398054, 0.6184482173, 0.3540292203,
        -0.1603617516, 0.1786951779, 0.3521345827, 0.0810540044, 0.2289085501, 0.1548624619,
        0.4635921254, 0.4312018349, -0.0826482901, 0.5358578293, -0.1261613805, 0.1014804199,
        0.0991544183, -0.2913428091, 0.0853191590, 0.4900720898, 0.1732275913, -0.3030152323,
        0.2239660943, 0.0854362577, -0.6199248192, 0.1815757134, -0.2275401642, 0.2015311749,
        0.4748550105, -0.2261198403, 0.0381972731, 0.3397569010, 0.2968623226, -0.0156430725,
        0.3084605663, 0.0917068025, 0.0414873276, 0.3042156950, -0.3984106367, 0.0939845472,
        0.1791924169, 0.1491120513, 0.3139419392, 0.2972643297, 0.2080363102, 0.0915351519,
        0.6850737034, -0.0209019448, 0.2913552000, 0.1531786836, 0.0560044712, -0.2714117849,
        -0.3284088945, -0.2288240789, -0.3132251279, 0.0621289835, 0.4421347387, -0.3576478950,
        0.0880948897, 0.0227320264, 0.0610577278, 0.1933988277, -0.1427479456, 0.2939714666,
        0.4383969104, -0.3941328400, 0.1631740738, 0.3903712258, -0.5019504238, 0.2370610508,
        0.0876036274, 0.0884470954, 0.2416853167, 0.2794384690, -0.2024373139, 0.1198515422,
        -0.2798483848, -0.4761831269, 0.2347364035, -0.6261126176, 0.0580748991, -0.4079192197,
        0.1197727319, -0.4178104841, 0.0579183757, 0.2573906798, -0.6748099522, 0.4598892483,
        0.6937264913, -0.2302066078, 0.1775198857, 0.4758824951, -0.4261037020, 0.5199566313,
        0.2324632978, -0.1391969082, 0.0675819811, 0.1144900282, -0.5115602217, 0.4773999163,
        0.1598627200, 0.1317884024, 0.2564063484, 0.0847891419, -0.1071877876, 0.0004794962,
        0.2340635219, -0.2446404889, -0.0313058021, -0.1210046932, -0.4217070854, 0.5571012960,
        -0.1040430200, -0.4313200027, 0.3619379489, 0.5270281496, -0.5932157018, 0.1218143231,
        0.2145767384, -0.7819076882, 0.3719065570, 0.2220644248, -0.2387584418, -0.0054731451,
        0.4235916171, -0.3345113664, 0.0271462219, 0.0458664343, -0.5597549936, 0.5038772071,
    ];

    fn fixture_panel() -> PanelSeries {
        let values = DMatrix::from_fn(60, 3, |r, c| PANEL[r * 3 + c]);
        sim::panel_from_values(&["a", "b", "c"], values).unwrap()
    }

    #[test]
    fn fit_matches_reference_parameters() {
        let m = fit_var(&fixture_panel(), 1, true).unwrap();
        let d = m.intercept();
        assert!((d[0] - 0.11227731381150009).abs() < 1e-10);
        assert!((d[1] - (-0.051684965137524956)).abs() < 1e-10);
        assert!((d[2] - 0.03895258253839442).abs() < 1e-10);
        let phi = &m.coeffs()[0];
        let expect = [
            [0.3489735004892684, 0.08336736218405558, 0.08764511776313899],
            [-0.30096506479765855, 0.47336863537280244, 0.23185709895967543],
            [0.1306692130848433, 0.16563013281112246, 0.39669942560135696],
        ];
        for i in 0..3 {
            for k in 0..3 {
                assert!(
                    (phi[(i, k)] - expect[i][k]).abs() < 1e-10,
                    "phi[{i}][{k}] = {}",
                    phi[(i, k)]
                );
            }
        }
        let sig = m.sigma();
        assert!((sig[(0, 0)] - 0.05698966218627097).abs() < 1e-12);
        assert!((sig[(1, 2)] - (-0.023359081891624518)).abs() < 1e-12);
        assert_eq!(m.residuals().nrows(), 59);
    }

    #[test]
    fn recovers_scalar_ar_coefficient() {
        let phi = DMatrix::from_element(1, 1, 0.5);
        let values = sim::var_values(11, 10_000, &DVector::zeros(1), &[phi], &DMatrix::identity(1, 1));
        let panel = sim::panel_from_values(&["x"], values).unwrap();
        let m = fit_var(&panel, 1, true).unwrap();
        assert!((m.coeffs()[0][(0, 0)] - 0.5).abs() < 0.02, "{}", m.coeffs()[0][(0, 0)]);
    }

    #[test]
    fn white_noise_coefficients_small() {
        let t = 2000;
        let values = sim::normal_matrix(5, t, 3);
        let panel = sim::panel_from_values(&["a", "b", "c"], values).unwrap();
        let m = fit_var(&panel, 1, true).unwrap();
        let bound = 3.0 / (t as f64).sqrt();
        for v in m.coeffs()[0].iter() {
            assert!(v.abs() < bound, "coefficient {v} above {bound}");
        }
    }

    #[test]
    fn insufficient_sample_errors() {
        let values = sim::normal_matrix(1, 8, 3);
        let panel = sim::panel_from_values(&["a", "b", "c"], values).unwrap();
        assert!(fit_var(&panel, 2, true).is_err());
    }

    #[test]
    fn duplicated_column_is_rank_deficient() {
        let base = sim::normal_matrix(2, 100, 1);
        let values = DMatrix::from_fn(100, 2, |r, _| base[(r, 0)]);
        let panel = sim::panel_from_values(&["a", "b"], values).unwrap();
        let err = fit_var(&panel, 1, true).unwrap_err();
        assert!(err.to_string().contains("rank-deficient"), "{err}");
    }

    #[test]
    fn residuals_orthogonal_to_regressors() {
        let m = fit_var(&fixture_panel(), 2, true).unwrap();
        let panel = fixture_panel();
        let values = panel.values();
        let p = 2;
        let rows = values.nrows() - p;
        for eq in 0..3 {
            let mut dot_const = 0.0;
            let mut dot_lag = 0.0;
            for r in 0..rows {
                dot_const += m.residuals()[(r, eq)];
                dot_lag += m.residuals()[(r, eq)] * values[(r + p - 1, 0)];
            }
            assert!(dot_const.abs() < 1e-8, "{dot_const}");
            assert!(dot_lag.abs() < 1e-8, "{dot_lag}");
        }
    }

    #[test]
    fn select_lag_trivial_pmax() {
        assert_eq!(select_lag(&fixture_panel(), 1, LagCriterion::Bic).unwrap(), 1);
    }

    #[test]
    fn select_lag_recovers_var2() {
        let phi1 = DMatrix::from_row_slice(2, 2, &[0.4, 0.1, -0.1, 0.3]);
        let phi2 = DMatrix::from_row_slice(2, 2, &[0.35, -0.2, 0.15, 0.3]);
        let mut hits = 0;
        for seed in 0..100u64 {
            let values = sim::var_values(
                1000 + seed,
                2000,
                &DVector::zeros(2),
                &[phi1.clone(), phi2.clone()],
                &DMatrix::identity(2, 2),
            );
            let panel = sim::panel_from_values(&["a", "b"], values).unwrap();
            if select_lag(&panel, 5, LagCriterion::Bic).unwrap() == 2 {
                hits += 1;
            }
        }
        assert!(hits >= 90, "selected lag 2 in only {hits}/100 runs");
    }

    #[test]
    fn select_lag_aic_agrees_on_clear_dynamics() {
        let phi1 = DMatrix::from_row_slice(2, 2, &[0.4, 0.1, -0.1, 0.3]);
        let phi2 = DMatrix::from_row_slice(2, 2, &[0.35, -0.2, 0.15, 0.3]);
        let values = sim::var_values(
            9,
            2000,
            &DVector::zeros(2),
            &[phi1, phi2],
            &DMatrix::identity(2, 2),
        );
        let panel = sim::panel_from_values(&["a", "b"], values).unwrap();
        assert_eq!(select_lag(&panel, 5, LagCriterion::Aic).unwrap(), 2);
    }

    #[test]
    fn select_lag_white_noise_prefers_one() {
        let mut hits = 0;
        for seed in 0..40u64 {
            let values = sim::normal_matrix(3000 + seed, 500, 2);
            let panel = sim::panel_from_values(&["a", "b"], values).unwrap();
            if select_lag(&panel, 4, LagCriterion::Bic).unwrap() == 1 {
                hits += 1;
            }
        }
        assert!(hits >= 30, "selected 1 in only {hits}/40 runs");
    }

    #[test]
    fn ma_zero_coefficients() {
        let m = VarModel::from_parts(
            vec!["a".into(), "b".into()],
            DVector::zeros(2),
            vec![DMatrix::zeros(2, 2)],
            DMatrix::identity(2, 2),
        )
        .unwrap();
        let ma = ma_coefficients(&m, 5);
        assert_eq!(ma[0], DMatrix::identity(2, 2));
        for a in &ma[1..] {
            assert!(a.iter().all(|v| *v == 0.0));
        }
    }

    #[test]
    fn ma_scalar_geometric() {
        let m = VarModel::from_parts(
            vec!["x".into()],
            DVector::zeros(1),
            vec![DMatrix::from_element(1, 1, 0.5)],
            DMatrix::identity(1, 1),
        )
        .unwrap();
        let ma = ma_coefficients(&m, 10);
        for (s, a) in ma.iter().enumerate() {
            assert!((a[(0, 0)] - 0.5f64.powi(s as i32)).abs() < 1e-15);
        }
    }

    #[test]
    fn ma_decay_follows_spectral_radius() {
        let phi = DMatrix::from_row_slice(2, 2, &[0.6, 0.2, -0.1, 0.4]);
        let m = VarModel::from_parts(
            vec!["a".into(), "b".into()],
            DVector::zeros(2),
            vec![phi],
            DMatrix::identity(2, 2),
        )
        .unwrap();
        let rho = m.companion_spectral_radius();
        assert!(rho < 1.0);
        let ma = ma_coefficients(&m, 41);
        let norm = |a: &DMatrix<f64>| a.iter().map(|v| v * v).sum::<f64>().sqrt();
        let ratio = (norm(&ma[40]) / norm(&ma[30])).powf(0.1);
        assert!((ratio - rho).abs() < 0.05, "ratio {ratio} vs rho {rho}");
    }

    #[test]
    fn gfevd_identity_when_no_dynamics() {
        let m = VarModel::from_parts(
            vec!["a".into(), "b".into(), "c".into()],
            DVector::zeros(3),
            vec![DMatrix::zeros(3, 3)],
            DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0, 0.5])),
        )
        .unwrap();
        let f = gfevd(&m, 10).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((f.share(i, j) - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn gfevd_matches_closed_form_reference() {
        // Phi = [[0.5, 0.3], [0, 0.5]], Sigma = I, h = 10.
        let m = VarModel::from_parts(
            vec!["a".into(), "b".into()],
            DVector::zeros(2),
            vec![DMatrix::from_row_slice(2, 2, &[0.5, 0.3, 0.0, 0.5])],
            DMatrix::identity(2, 2),
        )
        .unwrap();
        let f = gfevd(&m, 10).unwrap();
        assert!((f.share(0, 0) - 0.833358765448818).abs() < 1e-12);
        assert!((f.share(0, 1) - 0.166641234551182).abs() < 1e-12);
        assert!(f.share(1, 0).abs() < 1e-15);
        assert!((f.share(1, 1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gfevd_rows_sum_to_one() {
        let m = fit_var(&fixture_panel(), 1, true).unwrap();
        let f = gfevd(&m, 10).unwrap();
        for i in 0..3 {
            let sum: f64 = f.standardized().row(i).iter().sum();
            assert!((sum - 1.0).abs() < 1e-10);
            for j in 0..3 {
                let v = f.share(i, j);
                assert!((0.0..=1.0).contains(&v));
            }
        }
    }

    #[test]
    fn gfevd_h1_diagonal_sigma_is_identity() {
        let phi = DMatrix::from_row_slice(2, 2, &[0.5, 0.3, -0.2, 0.4]);
        let m = VarModel::from_parts(
            vec!["a".into(), "b".into()],
            DVector::zeros(2),
            vec![phi],
            DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 3.0])),
        )
        .unwrap();
        let f = gfevd(&m, 1).unwrap();
        assert!((f.share(0, 0) - 1.0).abs() < 1e-14);
        assert!(f.share(0, 1).abs() < 1e-14);
    }

    #[test]
    fn gfevd_permutation_invariant() {
        let panel = fixture_panel();
        let m = fit_var(&panel, 1, true).unwrap();
        let f = gfevd(&m, 10).unwrap();
        // Permute columns (c, a, b), refit, decompose, and map back.
        let perm = [2usize, 0, 1];
        let values = panel.values();
        let permuted = DMatrix::from_fn(values.nrows(), 3, |r, c| values[(r, perm[c])]);
        let names: Vec<&str> = perm.iter().map(|&i| ["a", "b", "c"][i]).collect();
        let ppanel = sim::panel_from_values(&names, permuted).unwrap();
        let pf = gfevd(&fit_var(&ppanel, 1, true).unwrap(), 10).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let (pi, pj) = (
                    perm.iter().position(|&k| k == i).unwrap(),
                    perm.iter().position(|&k| k == j).unwrap(),
                );
                assert!(
                    (f.share(i, j) - pf.share(pi, pj)).abs() < 1e-12,
                    "mismatch at ({i}, {j})"
                );
            }
        }
    }

    #[test]
    fn gfevd_converges_in_horizon() {
        for seed in 0..5u64 {
            let mut phi = sim::normal_matrix(40 + seed, 2, 2) * 0.3;
            // Shrink until safely stable.
            loop {
                let m = VarModel::from_parts(
                    vec!["a".into(), "b".into()],
                    DVector::zeros(2),
                    vec![phi.clone()],
                    DMatrix::identity(2, 2),
                )
                .unwrap();
                if m.companion_spectral_radius() < 0.9 {
                    break;
                }
                phi *= 0.8;
            }
            let m = VarModel::from_parts(
                vec!["a".into(), "b".into()],
                DVector::zeros(2),
                vec![phi.clone()],
                DMatrix::identity(2, 2),
            )
            .unwrap();
            let f50 = gfevd(&m, 50).unwrap();
            let f60 = gfevd(&m, 60).unwrap();
            let max_change = (f60.standardized() - f50.standardized())
                .iter()
                .map(|v| v.abs())
                .fold(0.0, f64::max);
            assert!(max_change < 1e-6, "seed {seed}: change {max_change}");
        }
    }

    #[test]
    fn cholesky_fevd_rejects_invalid_ordering() {
        let m = fit_var(&fixture_panel(), 1, true).unwrap();
        assert!(fevd_cholesky(&m, 10, &[0, 1]).is_err());
        assert!(fevd_cholesky(&m, 10, &[0, 1, 1]).is_err());
        assert!(fevd_cholesky(&m, 10, &[0, 1, 5]).is_err());
    }

    #[test]
    fn cholesky_fevd_rows_sum_to_one_and_order_matters() {
        let m = fit_var(&fixture_panel(), 1, true).unwrap();
        let f = fevd_cholesky(&m, 10, &[0, 1, 2]).unwrap();
        for i in 0..3 {
            let sum: f64 = f.standardized().row(i).iter().sum();
            assert!((sum - 1.0).abs() < 1e-10);
        }
        let g = fevd_cholesky(&m, 10, &[2, 1, 0]).unwrap();
        let diff = (f.standardized() - g.standardized())
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max);
        assert!(diff > 1e-6, "orderings produced identical tables");
    }

    #[test]
    fn table_serializes_with_full_precision() {
        let m = fit_var(&fixture_panel(), 1, true).unwrap();
        let f = gfevd(&m, 10).unwrap();
        let v = f.to_json();
        assert_eq!(v["horizon"], 10);
        let first = v["shares"][0][0].as_f64().unwrap();
        assert!((first - f.share(0, 0)).abs() < 1e-15);
    }

    #[test]
    fn from_shares_validates() {
        let names = vec!["a".to_string(), "b".to_string()];
        let good = DMatrix::from_row_slice(2, 2, &[0.7, 0.3, 0.4, 0.6]);
        assert!(FevdTable::from_shares(names.clone(), good, 10).is_ok());
        let bad = DMatrix::from_row_slice(2, 2, &[0.7, 0.4, 0.4, 0.6]);
        assert!(FevdTable::from_shares(names.clone(), bad, 10).is_err());
        let neg = DMatrix::from_row_slice(2, 2, &[1.1, -0.1, 0.4, 0.6]);
        assert!(FevdTable::from_shares(names, neg, 10).is_err());
    }
}
