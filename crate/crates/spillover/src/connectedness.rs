//! Directional spillover measures built from forecast-error variance
//! decompositions: receiver/giver shares, total connectedness, net
//! positions, pairwise dominance indices, and network export.

use chrono::NaiveDate;
use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{data_err, Error, Result};
use crate::var::FevdTable;

/// Sign convention for net pairwise directional connectedness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NpdcConvention {
    /// npdc(i, j) = 100 (l_ji - l_ij): positive when i transmits more to
    /// j than it receives, so a positive value means i dominates j.
    TransmitterPositive,
    /// npdc(i, j) = 100 (l_ij - l_ji): positive when i receives more
    /// from j (the literal row-normalized definition).
    ReceiverPositive,
}

impl Default for NpdcConvention {
    fn default() -> Self {
        NpdcConvention::TransmitterPositive
    }
}

/// Connectedness measures for one decomposition table. Percent scale for
/// receiver/giver/net/inc_own/tci and the npdc matrix; pci in [0, 1) and
/// pii in [-1, 1].
#[derive(Debug, Clone, Serialize)]
pub struct ConnectednessReport {
    pub names: Vec<String>,
    pub receiver: Vec<f64>,
    pub giver: Vec<f64>,
    pub inc_own: Vec<f64>,
    pub net: Vec<f64>,
    /// Count of counterparties each variable dominates (positive npdc).
    pub npt: Vec<usize>,
    pub tci: f64,
    pub npdc_convention: NpdcConvention,
    /// Decomposition shares in percent (l * 100), row = receiver.
    pub pairwise_percent: Vec<Vec<f64>>,
    /// Net pairwise directional connectedness, antisymmetric, percent.
    pub npdc: Vec<Vec<f64>>,
    /// Pairwise connectedness index, symmetric, zero diagonal.
    pub pci: Vec<Vec<f64>>,
    /// Pairwise influence index, antisymmetric; zero for unlinked pairs.
    pub pii: Vec<Vec<f64>>,
}

/// Sums values in ascending order so the result does not depend on the
/// original labeling of the variables.
fn sorted_sum(mut values: Vec<f64>) -> f64 {
    values.sort_by(|a, b| a.total_cmp(b));
    values.iter().sum()
}

/// Net pairwise directional connectedness between variables i and j in
/// percent, under the given sign convention.
pub fn npdc_with(fevd: &FevdTable, i: usize, j: usize, convention: NpdcConvention) -> Result<f64> {
    check_pair(fevd, i, j)?;
    let to_j = fevd.share(j, i); // share of j's variance from shocks in i
    let from_j = fevd.share(i, j);
    Ok(match convention {
        NpdcConvention::TransmitterPositive => 100.0 * (to_j - from_j),
        NpdcConvention::ReceiverPositive => 100.0 * (from_j - to_j),
    })
}

/// [`npdc_with`] under the default transmitter-positive convention:
/// positive means i dominates j.
pub fn npdc(fevd: &FevdTable, i: usize, j: usize) -> Result<f64> {
    npdc_with(fevd, i, j, NpdcConvention::TransmitterPositive)
}

/// Pairwise connectedness index:
/// (l_ij + l_ji) / (l_ii + l_jj + l_ij + l_ji), symmetric, in [0, 1).
pub fn pci(fevd: &FevdTable, i: usize, j: usize) -> Result<f64> {
    check_pair(fevd, i, j)?;
    let cross = fevd.share(i, j) + fevd.share(j, i);
    let denom = fevd.share(i, i) + fevd.share(j, j) + cross;
    if denom <= 0.0 {
        return Err(data_err("pci: zero denominator"));
    }
    Ok(cross / denom)
}

/// Pairwise influence index: (l_ij - l_ji) / (l_ij + l_ji), antisymmetric
/// in [-1, 1]. Errors when the pair has no bilateral linkage.
pub fn pii(fevd: &FevdTable, i: usize, j: usize) -> Result<f64> {
    check_pair(fevd, i, j)?;
    let a = fevd.share(i, j);
    let b = fevd.share(j, i);
    if a + b <= 0.0 {
        return Err(data_err("pii: no pairwise linkage"));
    }
    Ok((a - b) / (a + b))
}

fn check_pair(fevd: &FevdTable, i: usize, j: usize) -> Result<()> {
    let n = fevd.width();
    if i >= n || j >= n {
        return Err(data_err(format!("pair ({i}, {j}) outside 0..{n}")));
    }
    if i == j {
        return Err(data_err("pairwise index needs two distinct variables"));
    }
    Ok(())
}

/// Computes every connectedness measure of a decomposition table under
/// the default npdc convention.
pub fn connectedness_report(fevd: &FevdTable) -> ConnectednessReport {
    connectedness_report_with(fevd, NpdcConvention::TransmitterPositive)
}

/// [`connectedness_report`] with an explicit npdc sign convention.
pub fn connectedness_report_with(fevd: &FevdTable, convention: NpdcConvention) -> ConnectednessReport {
    let n = fevd.width();
    let l = fevd.standardized();

    let receiver: Vec<f64> = (0..n)
        .map(|i| 100.0 * sorted_sum((0..n).filter(|&j| j != i).map(|j| l[(i, j)]).collect()))
        .collect();
    let giver: Vec<f64> = (0..n)
        .map(|i| 100.0 * sorted_sum((0..n).filter(|&j| j != i).map(|j| l[(j, i)]).collect()))
        .collect();
    let net: Vec<f64> = (0..n).map(|i| giver[i] - receiver[i]).collect();
    let inc_own: Vec<f64> = (0..n).map(|i| giver[i] + 100.0 * l[(i, i)]).collect();
    let tci = sorted_sum(receiver.clone()) / n as f64;

    let mut npdc_m = vec![vec![0.0; n]; n];
    let mut pci_m = vec![vec![0.0; n]; n];
    let mut pii_m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            npdc_m[i][j] = npdc_with(fevd, i, j, convention).expect("checked pair");
            pci_m[i][j] = pci(fevd, i, j).unwrap_or(0.0);
            // Unlinked pairs carry no influence asymmetry.
            pii_m[i][j] = pii(fevd, i, j).unwrap_or(0.0);
        }
    }
    let npt: Vec<usize> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && npdc_m[i][j] > 0.0).count())
        .collect();
    let pairwise_percent: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| 100.0 * l[(i, j)]).collect())
        .collect();

    ConnectednessReport {
        names: fevd.names().to_vec(),
        receiver,
        giver,
        inc_own,
        net,
        npt,
        tci,
        npdc_convention: convention,
        pairwise_percent,
        npdc: npdc_m,
        pci: pci_m,
        pii: pii_m,
    }
}

impl ConnectednessReport {
    pub fn width(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Table-style CSV: the pairwise percent block with a Receiver
    /// column, then Giver / Inc.Own / NET / NPT rows, the giver total in
    /// the Giver corner and the total connectedness index in the NET
    /// corner. Two-decimal rendering.
    pub fn to_table_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        let n = self.width();
        let mut header = vec![String::new()];
        header.extend(self.names.iter().cloned());
        header.push("Receiver".to_string());
        wtr.write_record(&header)?;
        for i in 0..n {
            let mut rec = vec![self.names[i].clone()];
            for j in 0..n {
                rec.push(format!("{:.2}", self.pairwise_percent[i][j]));
            }
            rec.push(format!("{:.2}", self.receiver[i]));
            wtr.write_record(&rec)?;
        }
        let mut giver_row = vec!["Giver".to_string()];
        for j in 0..n {
            giver_row.push(format!("{:.2}", self.giver[j]));
        }
        giver_row.push(format!("{:.2}", self.giver.iter().sum::<f64>()));
        wtr.write_record(&giver_row)?;
        let mut own_row = vec!["Inc.Own".to_string()];
        for j in 0..n {
            own_row.push(format!("{:.2}", self.inc_own[j]));
        }
        own_row.push("TCI".to_string());
        wtr.write_record(&own_row)?;
        let mut net_row = vec!["NET".to_string()];
        for j in 0..n {
            net_row.push(format!("{:.2}", self.net[j]));
        }
        net_row.push(format!("{:.2}", self.tci));
        wtr.write_record(&net_row)?;
        let mut npt_row = vec!["NPT".to_string()];
        for j in 0..n {
            npt_row.push(format!("{}", self.npt[j]));
        }
        npt_row.push(String::new());
        wtr.write_record(&npt_row)?;
        wtr.flush()?;
        Ok(())
    }
}

/// Date-indexed sequence of connectedness reports with series extraction.
#[derive(Debug, Clone, Serialize)]
pub struct DynamicConnectedness {
    pub dates: Vec<NaiveDate>,
    pub reports: Vec<ConnectednessReport>,
}

/// Per-date connectedness reports for a dated decomposition sequence.
pub fn dynamic_report(
    tables: &[(NaiveDate, FevdTable)],
    convention: NpdcConvention,
) -> Result<DynamicConnectedness> {
    if tables.is_empty() {
        return Err(data_err("dynamic report: empty input"));
    }
    for w in tables.windows(2) {
        if w[1].0 <= w[0].0 {
            return Err(data_err(format!(
                "dynamic report: dates not strictly increasing at {} -> {}",
                w[0].0, w[1].0
            )));
        }
    }
    let reports: Vec<ConnectednessReport> = tables
        .par_iter()
        .map(|(_, f)| connectedness_report_with(f, convention))
        .collect();
    Ok(DynamicConnectedness {
        dates: tables.iter().map(|(d, _)| *d).collect(),
        reports,
    })
}

/// One pairwise measure extracted over time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairMeasure {
    Npdc,
    Pci,
    Pii,
}

impl std::str::FromStr for PairMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "npdc" => Ok(PairMeasure::Npdc),
            "pci" => Ok(PairMeasure::Pci),
            "pii" => Ok(PairMeasure::Pii),
            other => Err(data_err(format!("unknown pairwise measure {other:?}"))),
        }
    }
}

impl DynamicConnectedness {
    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }

    fn index_of(&self, name: &str) -> Result<usize> {
        self.reports[0]
            .index_of(name)
            .ok_or_else(|| data_err(format!("unknown variable {name:?}")))
    }

    /// NET series of one variable.
    pub fn net_series(&self, name: &str) -> Result<Vec<(NaiveDate, f64)>> {
        let i = self.index_of(name)?;
        Ok(self
            .dates
            .iter()
            .zip(&self.reports)
            .map(|(d, r)| (*d, r.net[i]))
            .collect())
    }

    /// Total connectedness index series.
    pub fn tci_series(&self) -> Vec<(NaiveDate, f64)> {
        self.dates
            .iter()
            .zip(&self.reports)
            .map(|(d, r)| (*d, r.tci))
            .collect()
    }

    /// One pairwise measure for a named (i, j) pair over time.
    pub fn pairwise_series(
        &self,
        measure: PairMeasure,
        i_name: &str,
        j_name: &str,
    ) -> Result<Vec<(NaiveDate, f64)>> {
        let i = self.index_of(i_name)?;
        let j = self.index_of(j_name)?;
        if i == j {
            return Err(data_err("pairwise series needs two distinct variables"));
        }
        Ok(self
            .dates
            .iter()
            .zip(&self.reports)
            .map(|(d, r)| {
                let v = match measure {
                    PairMeasure::Npdc => r.npdc[i][j],
                    PairMeasure::Pci => r.pci[i][j],
                    PairMeasure::Pii => r.pii[i][j],
                };
                (*d, v)
            })
            .collect())
    }

    /// Long-form CSV (date, measure, i, j, value): per-variable receiver,
    /// giver, net and the tci per date, plus npdc/pci/pii for every
    /// unordered pair (listed once with i before j in panel order).
    pub fn to_long_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["date", "measure", "i", "j", "value"])?;
        for (d, r) in self.dates.iter().zip(&self.reports) {
            let date = d.format("%Y-%m-%d").to_string();
            wtr.write_record([date.as_str(), "tci", "", "", &format!("{}", r.tci)])?;
            for (i, name) in r.names.iter().enumerate() {
                for (measure, value) in [
                    ("receiver", r.receiver[i]),
                    ("giver", r.giver[i]),
                    ("net", r.net[i]),
                ] {
                    wtr.write_record([date.as_str(), measure, name, "", &format!("{value}")])?;
                }
            }
            for i in 0..r.names.len() {
                for j in (i + 1)..r.names.len() {
                    for (measure, value) in [
                        ("npdc", r.npdc[i][j]),
                        ("pci", r.pci[i][j]),
                        ("pii", r.pii[i][j]),
                    ] {
                        wtr.write_record([
                            date.as_str(),
                            measure,
                            r.names[i].as_str(),
                            r.names[j].as_str(),
                            &format!("{value}"),
                        ])?;
                    }
                }
            }
        }
        wtr.flush()?;
        Ok(())
    }
}

/// Renders the spillover network as a DOT digraph. Nodes carry a
/// giver/receiver class and |NET| weight; one edge per unordered pair
/// with |npdc| at or above `threshold`, directed from the dominating
/// variable, bold above the 90th percentile of the included |npdc|.
/// Pairs with npdc exactly zero are omitted.
pub fn export_network_dot(report: &ConnectednessReport, threshold: f64) -> Result<String> {
    if threshold < 0.0 {
        return Err(data_err("network export: threshold must be nonnegative"));
    }
    let n = report.width();
    struct Edge {
        from: usize,
        to: usize,
        weight: f64,
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = report.npdc[i][j];
            if v == 0.0 || v.abs() < threshold {
                continue;
            }
            // Positive npdc(i, j) means i dominates j under the
            // transmitter-positive convention, the reverse otherwise.
            let i_dominates = match report.npdc_convention {
                NpdcConvention::TransmitterPositive => v > 0.0,
                NpdcConvention::ReceiverPositive => v < 0.0,
            };
            let (from, to) = if i_dominates { (i, j) } else { (j, i) };
            edges.push(Edge { from, to, weight: v.abs() });
        }
    }
    let bold_cutoff = if edges.is_empty() {
        f64::INFINITY
    } else {
        let mut weights: Vec<f64> = edges.iter().map(|e| e.weight).collect();
        weights.sort_by(|a, b| a.total_cmp(b));
        percentile(&weights, 0.9)
    };

    let mut out = String::from("digraph connectedness {\n");
    for i in 0..n {
        let class = if report.net[i] > 0.0 { "giver" } else { "receiver" };
        out.push_str(&format!(
            "    \"{}\" [class=\"{}\", weight=\"{:.6}\"];\n",
            report.names[i],
            class,
            report.net[i].abs()
        ));
    }
    for e in &edges {
        let bold = if e.weight > bold_cutoff { ", style=bold" } else { "" };
        out.push_str(&format!(
            "    \"{}\" -> \"{}\" [weight=\"{:.6}\"{}];\n",
            report.names[e.from], report.names[e.to], e.weight, bold
        ));
    }
    out.push_str("}\n");
    Ok(out)
}

fn percentile(sorted: &[f64], q: f64) -> f64 {
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

/// Marginals recomputed from a raw percent table (as printed in rounded
/// connectedness tables): receiver as 100 minus the own share, giver from
/// the off-diagonal column cells, then net, inc_own, and the tci as the
/// mean receiver. The own-share route keeps the identities meaningful
/// even when a printed row carries a rounding or typesetting slip.
pub fn marginals_from_percent_cells(cells: &DMatrix<f64>) -> (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>, f64) {
    let n = cells.nrows();
    let receiver: Vec<f64> = (0..n).map(|i| 100.0 - cells[(i, i)]).collect();
    let giver: Vec<f64> = (0..n)
        .map(|i| sorted_sum((0..n).filter(|&j| j != i).map(|j| cells[(j, i)]).collect()))
        .collect();
    let net: Vec<f64> = (0..n).map(|i| giver[i] - receiver[i]).collect();
    let inc_own: Vec<f64> = (0..n).map(|i| giver[i] + cells[(i, i)]).collect();
    let tci = sorted_sum(receiver.clone()) / n as f64;
    (receiver, giver, net, inc_own, tci)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn identity_fevd(n: usize) -> FevdTable {
        let names = (0..n).map(|i| format!("v{i}")).collect();
        FevdTable::from_shares(names, DMatrix::identity(n, n), 10).unwrap()
    }

    fn table(names: &[&str], rows: &[&[f64]]) -> FevdTable {
        let n = names.len();
        let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
        FevdTable::from_shares(names.iter().map(|s| s.to_string()).collect(), m, 10).unwrap()
    }

    #[test]
    fn identity_table_has_no_connectedness() {
        let r = connectedness_report(&identity_fevd(4));
        assert!(r.receiver.iter().all(|v| *v == 0.0));
        assert!(r.giver.iter().all(|v| *v == 0.0));
        assert!(r.net.iter().all(|v| *v == 0.0));
        assert_eq!(r.tci, 0.0);
        assert!(r.npt.iter().all(|v| *v == 0));
    }

    #[test]
    fn reference_marginals_from_published_style_cells() {
        // A variable with own share 27.54% receives 72.46%; a giver of
        // 82.83% nets +10.37% and totals 110.37% including own variance.
        let own: f64 = 27.54;
        let giver: f64 = 82.83;
        let receiver: f64 = 100.0 - own;
        assert!((receiver - 72.46).abs() < 1e-12);
        assert!((giver - receiver - 10.37).abs() < 1e-12);
        assert!((giver + own - 110.37).abs() < 1e-12);
    }

    #[test]
    fn npdc_reference_arithmetic() {
        // l(j row, i col) = 6.17%, l(i row, j col) = 4.98% => i dominates
        // j by 1.19 points; pci and pii follow from the same four cells.
        let l = &[
            &[27.54 / 100.0, 4.98 / 100.0, 67.48 / 100.0][..],
            &[6.17 / 100.0, 34.78 / 100.0, 59.05 / 100.0][..],
            &[30.0 / 100.0, 30.0 / 100.0, 40.0 / 100.0][..],
        ];
        let f = table(&["i", "j", "rest"], l);
        let v = npdc(&f, 0, 1).unwrap();
        assert!((v - 1.19).abs() < 1e-10, "{v}");
        assert!((npdc(&f, 1, 0).unwrap() + v).abs() < 1e-15);
        let raw = npdc_with(&f, 0, 1, NpdcConvention::ReceiverPositive).unwrap();
        assert!((raw + 1.19).abs() < 1e-10);

        let p = pci(&f, 0, 1).unwrap();
        assert!((p - 11.15 / 73.47).abs() < 1e-10, "{p}");
        let q = pii(&f, 0, 1).unwrap();
        assert!((q - (4.98 - 6.17) / (4.98 + 6.17)).abs() < 1e-10, "{q}");
    }

    #[test]
    fn symmetric_table_gives_zero_npdc_and_pii() {
        let l = &[
            &[0.6, 0.2, 0.2][..],
            &[0.2, 0.6, 0.2][..],
            &[0.2, 0.2, 0.6][..],
        ];
        let f = table(&["a", "b", "c"], l);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(npdc(&f, i, j).unwrap(), 0.0);
                    assert_eq!(pii(&f, i, j).unwrap(), 0.0);
                }
            }
        }
    }

    #[test]
    fn pci_midpoint_case() {
        let l = &[
            &[0.25, 0.25, 0.5][..],
            &[0.25, 0.25, 0.5][..],
            &[0.3, 0.3, 0.4][..],
        ];
        let f = table(&["a", "b", "c"], l);
        assert!((pci(&f, 0, 1).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn pii_boundary_and_error_cases() {
        let l = &[
            &[0.8, 0.2, 0.0][..],
            &[0.0, 0.9, 0.1][..],
            &[0.0, 0.1, 0.9][..],
        ];
        let f = table(&["a", "b", "c"], l);
        // a receives 0.2 from b, b receives nothing from a.
        assert!((pii(&f, 0, 1).unwrap() - 1.0).abs() < 1e-15);
        // a and c are unlinked.
        assert!(pii(&f, 0, 2).is_err());
        assert!(pii(&f, 0, 0).is_err());
        assert!(npdc(&f, 1, 1).is_err());
    }

    #[test]
    fn report_invariants_hold() {
        let l = &[
            &[0.5, 0.3, 0.2][..],
            &[0.1, 0.7, 0.2][..],
            &[0.25, 0.25, 0.5][..],
        ];
        let f = table(&["a", "b", "c"], l);
        let r = connectedness_report(&f);
        for i in 0..3 {
            assert!((r.receiver[i] - 100.0 * (1.0 - l[i][i])).abs() < 1e-9);
            assert!((r.inc_own[i] - (r.giver[i] + 100.0 * l[i][i])).abs() < 1e-12);
        }
        let net_sum: f64 = r.net.iter().sum();
        assert!(net_sum.abs() < 1e-9);
        let mean_receiver: f64 = r.receiver.iter().sum::<f64>() / 3.0;
        assert!((r.tci - mean_receiver).abs() < 1e-9);
        let giver_sum: f64 = r.giver.iter().sum();
        let receiver_sum: f64 = r.receiver.iter().sum();
        assert!((giver_sum - receiver_sum).abs() < 1e-9);
    }

    #[test]
    fn npt_counts_dominated_counterparties() {
        let l = &[
            &[0.4, 0.3, 0.3][..],
            &[0.1, 0.8, 0.1][..],
            &[0.1, 0.2, 0.7][..],
        ];
        let f = table(&["a", "b", "c"], l);
        let r = connectedness_report(&f);
        for i in 0..3 {
            let count = (0..3)
                .filter(|&j| j != i && npdc(&f, i, j).unwrap() > 0.0)
                .count();
            assert_eq!(r.npt[i], count);
        }
        let total: usize = r.npt.iter().sum();
        assert!(total <= 3);
    }

    #[test]
    fn dynamic_report_single_date_matches_static() {
        let l = &[
            &[0.5, 0.3, 0.2][..],
            &[0.1, 0.7, 0.2][..],
            &[0.25, 0.25, 0.5][..],
        ];
        let f = table(&["a", "b", "c"], l);
        let date = NaiveDate::from_ymd_opt(2022, 5, 2).unwrap();
        let dyn_r = dynamic_report(
            &[(date, f.clone())],
            NpdcConvention::TransmitterPositive,
        )
        .unwrap();
        assert_eq!(dyn_r.len(), 1);
        let static_r = connectedness_report(&f);
        assert_eq!(dyn_r.reports[0].net, static_r.net);
        assert_eq!(dyn_r.tci_series()[0].1, static_r.tci);
    }

    #[test]
    fn dynamic_report_constant_tables_give_constant_series() {
        let l = &[
            &[0.5, 0.3, 0.2][..],
            &[0.1, 0.7, 0.2][..],
            &[0.25, 0.25, 0.5][..],
        ];
        let f = table(&["a", "b", "c"], l);
        let tables: Vec<(NaiveDate, FevdTable)> = (0..100)
            .map(|i| {
                (
                    NaiveDate::from_ymd_opt(2022, 1, 1).unwrap() + chrono::Days::new(i),
                    f.clone(),
                )
            })
            .collect();
        let d = dynamic_report(&tables, NpdcConvention::TransmitterPositive).unwrap();
        let net_a = d.net_series("a").unwrap();
        assert!(net_a.windows(2).all(|w| w[0].1 == w[1].1));
        let series = d.pairwise_series(PairMeasure::Pci, "a", "b").unwrap();
        assert!(series.windows(2).all(|w| w[0].1 == w[1].1));
    }

    #[test]
    fn dynamic_report_rejects_empty_and_unsorted() {
        assert!(dynamic_report(&[], NpdcConvention::TransmitterPositive).is_err());
        let f = identity_fevd(2);
        let d0 = NaiveDate::from_ymd_opt(2022, 1, 3).unwrap();
        let tables = vec![(d0, f.clone()), (d0, f)];
        assert!(dynamic_report(&tables, NpdcConvention::TransmitterPositive).is_err());
    }

    #[test]
    fn dot_identity_graph_has_no_edges() {
        let r = connectedness_report(&identity_fevd(3));
        let dot = export_network_dot(&r, 0.0).unwrap();
        assert_eq!(dot.matches("->").count(), 0);
        assert_eq!(dot.matches("\"v0\"").count(), 1);
    }

    #[test]
    fn dot_zero_threshold_gives_complete_tournament() {
        let l = &[
            &[0.4, 0.3, 0.3][..],
            &[0.1, 0.8, 0.1][..],
            &[0.1, 0.2, 0.7][..],
        ];
        let f = table(&["a", "b", "c"], l);
        let r = connectedness_report(&f);
        let dot = export_network_dot(&r, 0.0).unwrap();
        assert_eq!(dot.matches("->").count(), 3);
    }

    #[test]
    fn dot_threshold_above_max_gives_no_edges() {
        let l = &[
            &[0.4, 0.3, 0.3][..],
            &[0.1, 0.8, 0.1][..],
            &[0.1, 0.2, 0.7][..],
        ];
        let f = table(&["a", "b", "c"], l);
        let r = connectedness_report(&f);
        let max_npdc = r
            .npdc
            .iter()
            .flatten()
            .map(|v| v.abs())
            .fold(0.0, f64::max);
        let dot = export_network_dot(&r, max_npdc + 1.0).unwrap();
        assert_eq!(dot.matches("->").count(), 0);
    }

    #[test]
    fn dot_edges_point_from_dominator() {
        let l = &[
            &[0.4, 0.3, 0.3][..],
            &[0.1, 0.8, 0.1][..],
            &[0.1, 0.2, 0.7][..],
        ];
        let f = table(&["a", "b", "c"], l);
        let r = connectedness_report(&f);
        // npdc(b, a) = 100 (l_ab - l_ba) = 100 (0.3 - 0.1) > 0: b dominates a.
        let dot = export_network_dot(&r, 0.0).unwrap();
        assert!(dot.contains("\"b\" -> \"a\""), "{dot}");
        assert!(export_network_dot(&r, -1.0).is_err());
    }

    #[test]
    fn dot_bold_marks_top_decile_edges() {
        // Five variables with a spread of pairwise asymmetries: only the
        // strongest dominance link should render bold.
        let n = 5;
        let mut l = DMatrix::from_element(n, n, 0.0);
        for i in 0..n {
            l[(i, i)] = 0.6;
        }
        // Asymmetries of growing size on the first row/column pairs.
        let pairs = [(0usize, 1usize, 0.02), (0, 2, 0.04), (0, 3, 0.06), (0, 4, 0.16)];
        for &(i, j, gap) in &pairs {
            l[(i, j)] = 0.05;
            l[(j, i)] = 0.05 + gap;
        }
        // Fill the remaining mass evenly to make the rows stochastic.
        for i in 0..n {
            let sum: f64 = l.row(i).iter().sum();
            let spare = (1.0 - sum) / (n as f64 - 1.0 - pairs.iter().filter(|p| p.0 == i || p.1 == i).count() as f64).max(1.0);
            for j in 0..n {
                if i != j && l[(i, j)] == 0.0 {
                    l[(i, j)] = spare.max(0.0);
                }
            }
            let sum: f64 = l.row(i).iter().sum();
            for j in 0..n {
                l[(i, j)] /= sum;
            }
        }
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let f = FevdTable::from_shares(names, l, 10).unwrap();
        let r = connectedness_report(&f);
        let dot = export_network_dot(&r, 0.0).unwrap();
        let bold_edges = dot.lines().filter(|l| l.contains("style=bold")).count();
        assert!(bold_edges >= 1, "no bold edges:\n{dot}");
        // The strongest asymmetry (v0/v4) must be among the bold edges.
        let strongest = dot
            .lines()
            .find(|line| line.contains("\"v0\" -> \"v4\"") || line.contains("\"v4\" -> \"v0\""))
            .expect("edge for the strongest pair");
        assert!(strongest.contains("style=bold"), "{strongest}");
    }

    #[test]
    fn long_form_csv_shape() {
        let l = &[
            &[0.5, 0.3, 0.2][..],
            &[0.1, 0.7, 0.2][..],
            &[0.25, 0.25, 0.5][..],
        ];
        let f = table(&["a", "b", "c"], l);
        let dates: Vec<NaiveDate> = (0..3)
            .map(|i| NaiveDate::from_ymd_opt(2022, 1, 3).unwrap() + chrono::Days::new(i))
            .collect();
        let tables: Vec<(NaiveDate, FevdTable)> = dates.iter().map(|d| (*d, f.clone())).collect();
        let d = dynamic_report(&tables, NpdcConvention::TransmitterPositive).unwrap();
        let mut buf = Vec::new();
        d.to_long_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), "date,measure,i,j,value");
        // Per date: tci + 3 per-variable measures x 3 + 3 pair measures x 3 pairs.
        let rows_per_date = 1 + 3 * 3 + 3 * 3;
        assert_eq!(text.lines().count(), 1 + 3 * rows_per_date);
        assert!(text.contains("npdc,a,b"));
        assert!(text.contains("receiver,a,"));
    }

    #[test]
    fn report_permutation_equivariance_exact() {
        let l = &[
            &[0.5, 0.3, 0.2][..],
            &[0.1, 0.7, 0.2][..],
            &[0.25, 0.25, 0.5][..],
        ];
        let f = table(&["a", "b", "c"], l);
        let r = connectedness_report(&f);
        let perm = [2usize, 0, 1];
        let permuted = DMatrix::from_fn(3, 3, |i, j| l[perm[i]][perm[j]]);
        let names: Vec<String> = perm.iter().map(|&i| ["a", "b", "c"][i].to_string()).collect();
        let pf = FevdTable::from_shares(names, permuted, 10).unwrap();
        let pr = connectedness_report(&pf);
        for (new_pos, &old) in perm.iter().enumerate() {
            assert_eq!(r.receiver[old], pr.receiver[new_pos]);
            assert_eq!(r.giver[old], pr.giver[new_pos]);
            assert_eq!(r.net[old], pr.net[new_pos]);
            assert_eq!(r.npt[old], pr.npt[new_pos]);
        }
        assert_eq!(r.tci, pr.tci);
    }
}
