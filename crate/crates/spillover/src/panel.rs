//! Labeled, date-indexed multivariate series: CSV ingestion, panel
//! alignment on shared dates, and the return/difference transforms.
//!
//! A [`PanelSeries`] is the universal input container for every analysis
//! in this crate. Missing cells are carried as NaN until [`align`] drops
//! the affected dates; analysis routines require complete panels.

use std::collections::HashSet;
use std::path::Path;

use chrono::NaiveDate;
use nalgebra::DMatrix;

use crate::error::{data_err, Result};

/// A date-indexed T x N panel of real values with unique column labels.
#[derive(Debug, Clone, PartialEq)]
pub struct PanelSeries {
    names: Vec<String>,
    dates: Vec<NaiveDate>,
    values: DMatrix<f64>,
}

impl PanelSeries {
    /// Builds a panel, validating label uniqueness, shape agreement and
    /// strictly increasing dates. NaN cells are allowed (missing markers).
    pub fn new(names: Vec<String>, dates: Vec<NaiveDate>, values: DMatrix<f64>) -> Result<Self> {
        if names.len() != values.ncols() {
            return Err(data_err(format!(
                "{} names for {} columns",
                names.len(),
                values.ncols()
            )));
        }
        if dates.len() != values.nrows() {
            return Err(data_err(format!(
                "{} dates for {} rows",
                dates.len(),
                values.nrows()
            )));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(data_err(format!("duplicate variable name {n:?}")));
            }
        }
        for w in dates.windows(2) {
            if w[1] <= w[0] {
                return Err(data_err(format!(
                    "dates not strictly increasing at {} -> {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self { names, dates, values })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    /// Number of observations (rows).
    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }

    /// Number of variables (columns).
    pub fn width(&self) -> usize {
        self.names.len()
    }

    /// Column index of a variable label.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// One column as a plain vector.
    pub fn column(&self, index: usize) -> Vec<f64> {
        self.values.column(index).iter().copied().collect()
    }

    /// True when no cell carries the NaN missing marker.
    pub fn is_complete(&self) -> bool {
        self.values.iter().all(|v| !v.is_nan())
    }

    /// Errors unless the panel is complete (no missing cells).
    pub fn require_complete(&self) -> Result<()> {
        for (r, date) in self.dates.iter().enumerate() {
            for (c, name) in self.names.iter().enumerate() {
                if self.values[(r, c)].is_nan() {
                    return Err(data_err(format!("missing cell at {date} / {name}")));
                }
            }
        }
        Ok(())
    }

    /// Panel restricted to a subset of columns, in the given order.
    pub fn select(&self, names: &[String]) -> Result<PanelSeries> {
        let mut idx = Vec::with_capacity(names.len());
        for n in names {
            idx.push(
                self.index_of(n)
                    .ok_or_else(|| data_err(format!("unknown column {n:?}")))?,
            );
        }
        let values =
            DMatrix::from_fn(self.len(), idx.len(), |r, c| self.values[(r, idx[c])]);
        PanelSeries::new(names.to_vec(), self.dates.clone(), values)
    }

    /// Writes the panel as CSV: date column first, then one column per
    /// variable, full precision.
    pub fn to_csv<W: std::io::Write>(&self, w: W, date_header: &str) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        let mut header = vec![date_header.to_string()];
        header.extend(self.names.iter().cloned());
        wtr.write_record(&header)?;
        for (r, date) in self.dates.iter().enumerate() {
            let mut rec = vec![date.format("%Y-%m-%d").to_string()];
            for c in 0..self.width() {
                rec.push(format_cell(self.values[(r, c)]));
            }
            wtr.write_record(&rec)?;
        }
        wtr.flush()?;
        Ok(())
    }
}

fn format_cell(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        format!("{v}")
    }
}

/// Per-column transform kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformKind {
    /// v[t]/v[0] - 1 (requires strictly positive values).
    CumulativeReturn,
    /// v[t+1] - v[t] (drops the first row).
    FirstDifference,
    /// ln(v[t]) (requires strictly positive values).
    LogLevel,
    /// Pass-through.
    Identity,
}

/// Assignment of exactly one transform to every column of a panel.
#[derive(Debug, Clone)]
pub struct TransformSpec {
    kinds: Vec<(String, TransformKind)>,
}

impl TransformSpec {
    /// Builds a spec from (column, kind) pairs. `apply` later checks the
    /// assignment covers the panel exactly.
    pub fn new(kinds: Vec<(String, TransformKind)>) -> Self {
        Self { kinds }
    }

    /// Same kind for every column of `panel`.
    pub fn uniform(panel: &PanelSeries, kind: TransformKind) -> Self {
        Self {
            kinds: panel
                .names()
                .iter()
                .map(|n| (n.clone(), kind))
                .collect(),
        }
    }

    pub fn kind_for(&self, name: &str) -> Option<TransformKind> {
        self.kinds
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, k)| *k)
    }

    /// Applies the per-column transforms. Columns marked
    /// `FirstDifference` shorten the panel by one row; the remaining
    /// columns are then aligned to the later date of each pair.
    pub fn apply(&self, panel: &PanelSeries) -> Result<PanelSeries> {
        panel.require_complete()?;
        for (name, _) in &self.kinds {
            if panel.index_of(name).is_none() {
                return Err(data_err(format!("transform names unknown column {name:?}")));
            }
        }
        let mut kinds = Vec::with_capacity(panel.width());
        for name in panel.names() {
            match self.kind_for(name) {
                Some(k) => kinds.push(k),
                None => {
                    return Err(data_err(format!("no transform assigned to column {name:?}")))
                }
            }
        }

        // Level-stage transforms first (length preserving).
        let t = panel.len();
        let mut values = panel.values().clone();
        for (c, kind) in kinds.iter().enumerate() {
            match kind {
                TransformKind::CumulativeReturn => {
                    transform_cumret_column(&mut values, c, panel)?;
                }
                TransformKind::LogLevel => {
                    for r in 0..t {
                        let v = values[(r, c)];
                        if v <= 0.0 {
                            return Err(data_err(format!(
                                "nonpositive value {v} at {} / {} (log-level)",
                                panel.dates()[r],
                                panel.names()[c]
                            )));
                        }
                        values[(r, c)] = v.ln();
                    }
                }
                TransformKind::FirstDifference | TransformKind::Identity => {}
            }
        }

        let any_diff = kinds.contains(&TransformKind::FirstDifference);
        if !any_diff {
            return PanelSeries::new(panel.names().to_vec(), panel.dates().to_vec(), values);
        }
        if t < 2 {
            return Err(data_err("first-difference needs at least 2 observations"));
        }
        let out = DMatrix::from_fn(t - 1, panel.width(), |r, c| {
            if kinds[c] == TransformKind::FirstDifference {
                values[(r + 1, c)] - values[(r, c)]
            } else {
                values[(r + 1, c)]
            }
        });
        PanelSeries::new(
            panel.names().to_vec(),
            panel.dates()[1..].to_vec(),
            out,
        )
    }
}

fn transform_cumret_column(values: &mut DMatrix<f64>, c: usize, panel: &PanelSeries) -> Result<()> {
    let t = values.nrows();
    if t < 2 {
        return Err(data_err("cumulative return needs at least 2 observations"));
    }
    for r in 0..t {
        let v = values[(r, c)];
        if v <= 0.0 {
            return Err(data_err(format!(
                "nonpositive price {v} at {} / {}",
                panel.dates()[r],
                panel.names()[c]
            )));
        }
    }
    let base = values[(0, c)];
    for r in 0..t {
        values[(r, c)] = values[(r, c)] / base - 1.0;
    }
    Ok(())
}

/// Options for [`load_csv`].
#[derive(Debug, Clone)]
pub struct CsvOptions {
    /// Header name of the date column.
    pub date_column: String,
    /// Optional column subset; all other numeric columns are dropped.
    pub columns: Option<Vec<String>>,
    /// Field delimiter, comma by default.
    pub delimiter: u8,
    /// chrono format string; ISO-8601 (`%Y-%m-%d`) when `None`.
    pub date_format: Option<String>,
}

impl CsvOptions {
    pub fn new(date_column: impl Into<String>) -> Self {
        Self {
            date_column: date_column.into(),
            columns: None,
            delimiter: b',',
            date_format: None,
        }
    }

    pub fn with_columns(mut self, columns: Vec<String>) -> Self {
        self.columns = Some(columns);
        self
    }

    pub fn with_delimiter(mut self, delimiter: u8) -> Self {
        self.delimiter = delimiter;
        self
    }

    pub fn with_date_format(mut self, fmt: impl Into<String>) -> Self {
        self.date_format = Some(fmt.into());
        self
    }
}

/// Loads a panel from a CSV file with one date column and numeric value
/// columns. Rows are sorted by date; duplicate dates are an error; blank
/// numeric cells become missing markers.
pub fn load_csv<P: AsRef<Path>>(path: P, opts: &CsvOptions) -> Result<PanelSeries> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)
        .map_err(|e| data_err(format!("cannot open {}: {e}", path.display())))?;
    load_csv_reader(file, opts).map_err(|e| match e {
        crate::Error::Data(msg) => data_err(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Same as [`load_csv`] on an arbitrary reader.
pub fn load_csv_reader<R: std::io::Read>(reader: R, opts: &CsvOptions) -> Result<PanelSeries> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(opts.delimiter)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers: Vec<String> = rdr
        .headers()?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    let date_idx = headers
        .iter()
        .position(|h| h == &opts.date_column)
        .ok_or_else(|| data_err(format!("date column {:?} not in header", opts.date_column)))?;

    let keep: Vec<usize> = match &opts.columns {
        Some(cols) => {
            let mut idx = Vec::with_capacity(cols.len());
            for c in cols {
                let i = headers
                    .iter()
                    .position(|h| h == c)
                    .ok_or_else(|| data_err(format!("column {c:?} not in header")))?;
                if i == date_idx {
                    return Err(data_err(format!("column {c:?} is the date column")));
                }
                idx.push(i);
            }
            idx
        }
        None => (0..headers.len()).filter(|&i| i != date_idx).collect(),
    };
    let names: Vec<String> = keep.iter().map(|&i| headers[i].clone()).collect();

    let mut rows: Vec<(NaiveDate, Vec<f64>)> = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row_label = line + 2; // 1-based, after header
        let raw_date = rec
            .get(date_idx)
            .ok_or_else(|| data_err(format!("row {row_label}: short record")))?;
        let date = parse_date(raw_date, opts.date_format.as_deref())
            .map_err(|e| data_err(format!("row {row_label}: {e}")))?;
        let mut vals = Vec::with_capacity(keep.len());
        for (&i, name) in keep.iter().zip(&names) {
            let cell = rec
                .get(i)
                .ok_or_else(|| data_err(format!("row {row_label}: short record")))?;
            if cell.is_empty() {
                vals.push(f64::NAN);
            } else {
                let v: f64 = cell.parse().map_err(|_| {
                    data_err(format!(
                        "row {row_label}, column {name:?}: cannot parse {cell:?} as a number"
                    ))
                })?;
                vals.push(v);
            }
        }
        rows.push((date, vals));
    }
    if rows.is_empty() {
        return Err(data_err("no data rows"));
    }
    rows.sort_by_key(|(d, _)| *d);
    for w in rows.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(data_err(format!("duplicate date {}", w[0].0)));
        }
    }

    let dates: Vec<NaiveDate> = rows.iter().map(|(d, _)| *d).collect();
    let values = DMatrix::from_fn(rows.len(), names.len(), |r, c| rows[r].1[c]);
    PanelSeries::new(names, dates, values)
}

fn parse_date(raw: &str, format: Option<&str>) -> std::result::Result<NaiveDate, String> {
    let fmt = format.unwrap_or("%Y-%m-%d");
    NaiveDate::parse_from_str(raw, fmt)
        .map_err(|_| format!("cannot parse date {raw:?} with format {fmt:?}"))
}

/// Merges panels onto the intersection of their date sets, dropping any
/// date where some source is missing (absent or NaN). Variable names must
/// be unique across panels.
pub fn align(panels: &[PanelSeries]) -> Result<PanelSeries> {
    if panels.is_empty() {
        return Err(data_err("align: no panels given"));
    }
    let mut seen = HashSet::new();
    for p in panels {
        for n in p.names() {
            if !seen.insert(n.clone()) {
                return Err(data_err(format!("duplicate variable name {n:?} across panels")));
            }
        }
    }

    let mut common: Vec<NaiveDate> = panels[0].dates().to_vec();
    for p in &panels[1..] {
        let set: HashSet<&NaiveDate> = p.dates().iter().collect();
        common.retain(|d| set.contains(d));
    }
    if common.is_empty() {
        return Err(data_err("align: empty date intersection"));
    }

    let names: Vec<String> = panels.iter().flat_map(|p| p.names().iter().cloned()).collect();
    let width: usize = panels.iter().map(|p| p.width()).sum();

    // Row lookup per panel, then drop dates with any missing cell.
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(common.len());
    let mut kept_dates: Vec<NaiveDate> = Vec::with_capacity(common.len());
    let indices: Vec<std::collections::HashMap<NaiveDate, usize>> = panels
        .iter()
        .map(|p| {
            p.dates()
                .iter()
                .enumerate()
                .map(|(i, d)| (*d, i))
                .collect()
        })
        .collect();
    for date in common {
        let mut row = Vec::with_capacity(width);
        let mut ok = true;
        for (p, index) in panels.iter().zip(&indices) {
            let r = index[&date];
            for c in 0..p.width() {
                let v = p.values()[(r, c)];
                if v.is_nan() {
                    ok = false;
                    break;
                }
                row.push(v);
            }
            if !ok {
                break;
            }
        }
        if ok {
            rows.push(row);
            kept_dates.push(date);
        }
    }
    if rows.is_empty() {
        return Err(data_err("align: empty date intersection after dropping missing cells"));
    }
    let values = DMatrix::from_fn(rows.len(), width, |r, c| rows[r][c]);
    PanelSeries::new(names, kept_dates, values)
}

/// `prices[t][i]/prices[0][i] - 1` per column; requires strictly positive
/// prices and at least two observations.
pub fn cumulative_return(prices: &PanelSeries) -> Result<PanelSeries> {
    prices.require_complete()?;
    let spec = TransformSpec::uniform(prices, TransformKind::CumulativeReturn);
    spec.apply(prices)
}

/// Per-column first difference; the result has T-1 rows dated at the
/// later date of each pair.
pub fn first_difference(panel: &PanelSeries) -> Result<PanelSeries> {
    panel.require_complete()?;
    if panel.len() < 2 {
        return Err(data_err("first-difference needs at least 2 observations"));
    }
    let spec = TransformSpec::uniform(panel, TransformKind::FirstDifference);
    spec.apply(panel)
}
