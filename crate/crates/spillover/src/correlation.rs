//! Static rank/linear correlation and VAR-residual conditional and
//! partial correlation matrices.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{data_err, num_err, Result};
use crate::panel::PanelSeries;
use crate::var::VarModel;

/// Correlation estimator family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorrelationKind {
    Pearson,
    Spearman,
    Kendall,
    VarConditional,
    VarPartial,
}

/// Symmetric correlation matrix with unit diagonal.
#[derive(Debug, Clone)]
pub struct CorrelationMatrix {
    names: Vec<String>,
    values: DMatrix<f64>,
    kind: CorrelationKind,
}

impl CorrelationMatrix {
    fn new(names: Vec<String>, values: DMatrix<f64>, kind: CorrelationKind) -> Self {
        Self { names, values, kind }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn kind(&self) -> CorrelationKind {
        self.kind
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[(i, j)]
    }

    /// CSV with a name header row and column; `upper_triangle_only`
    /// blanks the lower triangle to match the usual table style.
    pub fn to_csv<W: std::io::Write>(&self, w: W, upper_triangle_only: bool) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        let n = self.names.len();
        let mut header = vec![String::new()];
        header.extend(self.names.iter().cloned());
        wtr.write_record(&header)?;
        for i in 0..n {
            let mut rec = vec![self.names[i].clone()];
            for j in 0..n {
                if upper_triangle_only && j < i {
                    rec.push(String::new());
                } else {
                    rec.push(format!("{:.4}", self.values[(i, j)]));
                }
            }
            wtr.write_record(&rec)?;
        }
        wtr.flush()?;
        Ok(())
    }

    /// JSON object {kind, names, values} with full precision.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<f64>> = (0..self.names.len())
            .map(|i| self.values.row(i).iter().copied().collect())
            .collect();
        serde_json::json!({
            "kind": self.kind,
            "names": self.names,
            "values": rows,
        })
    }
}

/// Sample correlation of the requested kind. Rank-based kinds use
/// average ranks (Spearman) and the tie-corrected tau-b (Kendall).
pub fn static_correlation(panel: &PanelSeries, kind: CorrelationKind) -> Result<CorrelationMatrix> {
    panel.require_complete()?;
    let t = panel.len();
    if t < 3 {
        return Err(data_err(format!("correlation: need at least 3 observations, got {t}")));
    }
    let n = panel.width();
    let columns: Vec<Vec<f64>> = (0..n).map(|c| panel.column(c)).collect();
    for (c, col) in columns.iter().enumerate() {
        if is_constant(col) {
            return Err(num_err(format!(
                "correlation: zero variance in column {:?}",
                panel.names()[c]
            )));
        }
    }

    let prepared: Vec<Vec<f64>> = match kind {
        CorrelationKind::Pearson | CorrelationKind::Kendall => columns,
        CorrelationKind::Spearman => columns.iter().map(|c| average_ranks(c)).collect(),
        CorrelationKind::VarConditional | CorrelationKind::VarPartial => {
            return Err(data_err(
                "correlation: VAR-based kinds require a fitted model; use var_conditional_correlation / var_partial_correlation",
            ))
        }
    };

    let mut values = DMatrix::identity(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let r = match kind {
                CorrelationKind::Kendall => kendall_tau_b(&prepared[i], &prepared[j]),
                _ => pearson(&prepared[i], &prepared[j]),
            };
            values[(i, j)] = r;
            values[(j, i)] = r;
        }
    }
    Ok(CorrelationMatrix::new(panel.names().to_vec(), values, kind))
}

/// Correlation of the VAR innovations: the residual covariance normalized
/// to unit diagonal. Captures contemporaneous co-movement conditional on
/// the joint lag structure.
pub fn var_conditional_correlation(model: &VarModel) -> Result<CorrelationMatrix> {
    let sigma = model.sigma();
    if sigma.clone().cholesky().is_none() {
        return Err(num_err("conditional correlation: covariance not positive definite"));
    }
    let n = model.width();
    let values = DMatrix::from_fn(n, n, |i, j| {
        sigma[(i, j)] / (sigma[(i, i)] * sigma[(j, j)]).sqrt()
    });
    Ok(CorrelationMatrix::new(
        model.names().to_vec(),
        values,
        CorrelationKind::VarConditional,
    ))
}

/// Partial correlation of the VAR innovations from the precision matrix:
/// -P_ij / sqrt(P_ii P_jj) with unit diagonal.
pub fn var_partial_correlation(model: &VarModel) -> Result<CorrelationMatrix> {
    let sigma = model.sigma();
    let chol = sigma
        .clone()
        .cholesky()
        .ok_or_else(|| num_err("partial correlation: singular covariance"))?;
    let precision = chol.inverse();
    let n = model.width();
    let values = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            1.0
        } else {
            -precision[(i, j)] / (precision[(i, i)] * precision[(j, j)]).sqrt()
        }
    });
    Ok(CorrelationMatrix::new(
        model.names().to_vec(),
        values,
        CorrelationKind::VarPartial,
    ))
}

fn is_constant(x: &[f64]) -> bool {
    x.windows(2).all(|w| w[0] == w[1])
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let dx = a - mx;
        let dy = b - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    sxy / (sxx * syy).sqrt()
}

/// Average ranks (ties share the mean of their rank range).
fn average_ranks(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && x[order[j + 1]] == x[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Tie-corrected Kendall tau-b.
fn kendall_tau_b(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let mut concordant = 0i64;
    let mut discordant = 0i64;
    let mut ties_x = 0i64;
    let mut ties_y = 0i64;
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = x[i] - x[j];
            let dy = y[i] - y[j];
            if dx == 0.0 && dy == 0.0 {
                ties_x += 1;
                ties_y += 1;
            } else if dx == 0.0 {
                ties_x += 1;
            } else if dy == 0.0 {
                ties_y += 1;
            } else if dx * dy > 0.0 {
                concordant += 1;
            } else {
                discordant += 1;
            }
        }
    }
    let n0 = (n * (n - 1) / 2) as f64;
    let denom = ((n0 - ties_x as f64) * (n0 - ties_y as f64)).sqrt();
    (concordant - discordant) as f64 / denom
}
