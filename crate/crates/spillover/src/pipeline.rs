//! End-to-end analysis pipeline: ingest and transform panels, run the
//! test battery, correlations, cointegration and stability checks, then
//! static and dynamic connectedness with network export. Each stage
//! writes immutable artifacts into the output directory and the run ends
//! with a manifest keyed by the configuration hash.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::connectedness::{
    connectedness_report_with, dynamic_report, export_network_dot, NpdcConvention,
};
use crate::correlation::{
    static_correlation, var_conditional_correlation, var_partial_correlation, CorrelationKind,
};
use crate::error::{Error, Result};
use crate::panel::{align, first_difference, load_csv, CsvOptions, TransformKind, TransformSpec};
use crate::stats::{
    adf_test, chow_test, describe, engle_granger, jarque_bera, ljung_box_squared, stars,
    ChowVariant, Deterministic,
};
use crate::tvp::{rolling_var_fevd, trajectory_fevd, tvp_filter, TvpConfig};
use crate::var::{fit_var, gfevd, select_lag, LagCriterion};

/// One input CSV file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InputFile {
    pub path: PathBuf,
    pub date_column: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub date_format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delimiter: Option<char>,
}

/// Estimation parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisConfig {
    /// Fixed lag order; when absent the order is chosen by BIC up to
    /// `lag_max`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lag: Option<usize>,
    #[serde(default = "default_lag_max")]
    pub lag_max: usize,
    #[serde(default = "default_horizon")]
    pub horizon: usize,
    #[serde(default = "default_kappa")]
    pub kappa1: f64,
    #[serde(default = "default_kappa")]
    pub kappa2: f64,
    #[serde(default = "default_prior_scale")]
    pub prior_scale: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub burn_in: Option<usize>,
    /// When set, dynamic connectedness re-estimates over this rolling
    /// window instead of running the filter.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rolling_window: Option<usize>,
}

fn default_lag_max() -> usize {
    8
}

fn default_horizon() -> usize {
    10
}

fn default_kappa() -> f64 {
    0.99
}

fn default_prior_scale() -> f64 {
    0.1
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            lag: None,
            lag_max: default_lag_max(),
            horizon: default_horizon(),
            kappa1: default_kappa(),
            kappa2: default_kappa(),
            prior_scale: default_prior_scale(),
            burn_in: None,
            rolling_window: None,
        }
    }
}

/// Test-battery parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TestConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adf_max_lags: Option<usize>,
    /// Break date index into the differenced panel; midpoint when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chow_break_index: Option<usize>,
    #[serde(default = "default_bootstrap_reps")]
    pub bootstrap_reps: usize,
    #[serde(default = "default_level")]
    pub level: f64,
    /// Run both orderings of every cointegration pair.
    #[serde(default)]
    pub coint_bidirectional: bool,
    #[serde(default = "default_lb_lags")]
    pub ljung_box_lags: usize,
}

fn default_bootstrap_reps() -> usize {
    399
}

fn default_level() -> f64 {
    0.05
}

fn default_lb_lags() -> usize {
    20
}

impl Default for TestConfig {
    fn default() -> Self {
        Self {
            adf_max_lags: None,
            chow_break_index: None,
            bootstrap_reps: default_bootstrap_reps(),
            level: default_level(),
            coint_bidirectional: false,
            ljung_box_lags: default_lb_lags(),
        }
    }
}

/// Output options.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    #[serde(default)]
    pub dot_threshold: f64,
}

/// Full pipeline configuration, loadable from a TOML document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineConfig {
    #[serde(default)]
    pub seed: u64,
    pub input: InputSection,
    /// Per-column transform building the level panel. May be omitted
    /// entirely (identity for every column); when present it must assign
    /// a kind to every column.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transforms: Option<std::collections::BTreeMap<String, TransformKind>>,
    #[serde(default)]
    pub analysis: AnalysisConfig,
    #[serde(default)]
    pub tests: TestConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InputSection {
    pub files: Vec<InputFile>,
}

impl PipelineConfig {
    /// Parses a TOML configuration document.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: PipelineConfig =
            toml::from_str(text).map_err(|e| Error::Config(format!("config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    /// Loads and parses a configuration file; relative input paths are
    /// resolved against the file's directory.
    pub fn load<P: AsRef<Path>>(path: P) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut config = Self::from_toml_str(&text)?;
        if let Some(base) = path.parent() {
            for f in &mut config.input.files {
                if f.path.is_relative() {
                    f.path = base.join(&f.path);
                }
            }
        }
        for f in &config.input.files {
            if !f.path.exists() {
                return Err(Error::Data(format!(
                    "config: input file {} does not exist",
                    f.path.display()
                )));
            }
        }
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        if self.input.files.is_empty() {
            return Err(Error::Config("config: no input files".into()));
        }
        if self.analysis.horizon == 0 {
            return Err(Error::Config("config: horizon must be at least 1".into()));
        }
        if self.analysis.lag == Some(0) || self.analysis.lag_max == 0 {
            return Err(Error::Config("config: lag orders must be positive".into()));
        }
        if !(self.tests.level > 0.0 && self.tests.level < 1.0) {
            return Err(Error::Config("config: significance level outside (0, 1)".into()));
        }
        Ok(())
    }

    /// Hash over every analysis-relevant setting (output location
    /// excluded), stable across reruns of the same configuration.
    pub fn config_hash(&self) -> String {
        let mut hashed = self.clone();
        hashed.output.dir = None;
        let canon = serde_json::to_string(&hashed).expect("config serializes");
        let mut hasher = Sha256::new();
        hasher.update(canon.as_bytes());
        hex::encode(hasher.finalize())
    }
}

/// One stage entry of the run manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestStage {
    pub name: String,
    pub artifacts: Vec<String>,
    /// Whole elapsed seconds (floor), keeping reruns byte-identical.
    pub seconds: u64,
}

/// Manifest written at the end of a successful run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub config_hash: String,
    pub stages: Vec<ManifestStage>,
}

struct StageRecorder {
    out_dir: PathBuf,
    stages: Vec<ManifestStage>,
}

impl StageRecorder {
    fn run<F>(&mut self, name: &str, f: F) -> Result<()>
    where
        F: FnOnce(&Path) -> Result<Vec<String>>,
    {
        let started = Instant::now();
        let artifacts = f(&self.out_dir).map_err(|e| stage_error(name, e))?;
        self.stages.push(ManifestStage {
            name: name.to_string(),
            artifacts,
            seconds: started.elapsed().as_secs(),
        });
        Ok(())
    }
}

fn stage_error(stage: &str, e: Error) -> Error {
    match e {
        Error::Io(io) => Error::Data(format!("stage {stage}: io error: {io}")),
        Error::Data(msg) => Error::Data(format!("stage {stage}: {msg}")),
        Error::Numerical(msg) => Error::Numerical(format!("stage {stage}: {msg}")),
        Error::Config(msg) => Error::Config(format!("stage {stage}: {msg}")),
    }
}

fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> Result<String> {
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path)?;
    f.write_all(bytes)?;
    Ok(name.to_string())
}

/// Runs every stage, writing artifacts into `out_dir` (or the config's
/// output directory) and returning the manifest, which is also written
/// as `manifest.json`. Artifacts from completed stages are retained when
/// a later stage fails.
pub fn run_pipeline(config: &PipelineConfig, out_dir: Option<&Path>) -> Result<Manifest> {
    let out_dir: PathBuf = match (out_dir, &config.output.dir) {
        (Some(d), _) => d.to_path_buf(),
        (None, Some(d)) => d.clone(),
        (None, None) => return Err(Error::Config("config: no output directory".into())),
    };
    std::fs::create_dir_all(&out_dir)?;

    let mut rec = StageRecorder {
        out_dir: out_dir.clone(),
        stages: Vec::new(),
    };
    let level = config.tests.level;

    // Stage 1: ingest, align, transform.
    let mut panels = Vec::new();
    for f in &config.input.files {
        let mut opts = CsvOptions::new(&f.date_column);
        if let Some(cols) = &f.columns {
            opts = opts.with_columns(cols.clone());
        }
        if let Some(fmt) = &f.date_format {
            opts = opts.with_date_format(fmt.clone());
        }
        if let Some(d) = f.delimiter {
            opts = opts.with_delimiter(d as u8);
        }
        panels.push(load_csv(&f.path, &opts).map_err(|e| stage_error("ingest", e))?);
    }
    let merged = align(&panels).map_err(|e| stage_error("ingest", e))?;
    let levels = match &config.transforms {
        Some(map) => {
            let spec = TransformSpec::new(
                map.iter().map(|(k, v)| (k.clone(), *v)).collect(),
            );
            spec.apply(&merged).map_err(|e| stage_error("ingest", e))?
        }
        None => merged,
    };
    rec.run("ingest", |dir| {
        let mut buf = Vec::new();
        levels.to_csv(&mut buf, "date")?;
        Ok(vec![write_file(dir, "panel.csv", &buf)?])
    })?;

    let diff = first_difference(&levels).map_err(|e| stage_error("descriptive", e))?;

    // Stage 2: descriptive statistics with normality and squared-serial-
    // correlation diagnostics on the differenced panel.
    rec.run("descriptive", |dir| {
        let stats = describe(&diff)?;
        let mut buf = Vec::new();
        {
            let mut wtr = csv::Writer::from_writer(&mut buf);
            let lb_lags = config.tests.ljung_box_lags;
            wtr.write_record([
                "variable",
                "mean",
                "median",
                "sd",
                "skewness",
                "excess_kurtosis",
                "q1",
                "q3",
                "jarque_bera",
                "jb_signif",
                &format!("q2_{lb_lags}"),
                "q2_signif",
            ])
            .map_err(Error::from)?;
            for (c, s) in stats.iter().enumerate() {
                let x = diff.column(c);
                let jb = jarque_bera(&x, level)?;
                let lb = ljung_box_squared(&x, lb_lags, level)?;
                wtr.write_record([
                    s.name.clone(),
                    format!("{:.6}", s.mean),
                    format!("{:.6}", s.median),
                    format!("{:.6}", s.sd),
                    format!("{:.4}", s.skewness),
                    format!("{:.4}", s.excess_kurtosis),
                    format!("{:.6}", s.q1),
                    format!("{:.6}", s.q3),
                    format!("{:.3}", jb.statistic),
                    stars(jb.p_value).to_string(),
                    format!("{:.3}", lb.statistic),
                    stars(lb.p_value).to_string(),
                ])
                .map_err(Error::from)?;
            }
            wtr.flush()?;
        }
        Ok(vec![write_file(dir, "descriptives.csv", &buf)?])
    })?;

    // Stage 3: unit-root tests on levels and first differences.
    rec.run("unit-root", |dir| {
        let mut buf = Vec::new();
        {
            let mut wtr = csv::Writer::from_writer(&mut buf);
            wtr.write_record([
                "variable",
                "adf_level",
                "lag_level",
                "p_level",
                "signif_level",
                "adf_diff",
                "lag_diff",
                "p_diff",
                "signif_diff",
            ])
            .map_err(Error::from)?;
            for (c, name) in levels.names().iter().enumerate() {
                let lvl = adf_test(
                    &levels.column(c),
                    config.tests.adf_max_lags,
                    Deterministic::Constant,
                    level,
                )?;
                let dif = adf_test(
                    &diff.column(c),
                    config.tests.adf_max_lags,
                    Deterministic::Constant,
                    level,
                )?;
                wtr.write_record([
                    name.clone(),
                    format!("{:.4}", lvl.statistic),
                    format!("{}", lvl.lags.unwrap_or(0)),
                    format!("{:.4e}", lvl.p_value),
                    stars(lvl.p_value).to_string(),
                    format!("{:.4}", dif.statistic),
                    format!("{}", dif.lags.unwrap_or(0)),
                    format!("{:.4e}", dif.p_value),
                    stars(dif.p_value).to_string(),
                ])
                .map_err(Error::from)?;
            }
            wtr.flush()?;
        }
        Ok(vec![write_file(dir, "adf.csv", &buf)?])
    })?;

    // Shared lag order for every VAR-based stage.
    let lag = match config.analysis.lag {
        Some(p) => p,
        None => select_lag(&diff, config.analysis.lag_max, LagCriterion::Bic)
            .map_err(|e| stage_error("correlation", e))?,
    };
    let var_model = fit_var(&diff, lag, true).map_err(|e| stage_error("correlation", e))?;

    // Stage 4: static and VAR-based correlation matrices.
    rec.run("correlation", |dir| {
        let mut doc = serde_json::Map::new();
        for kind in [CorrelationKind::Pearson, CorrelationKind::Spearman, CorrelationKind::Kendall] {
            let m = static_correlation(&diff, kind)?;
            let key = match kind {
                CorrelationKind::Pearson => "pearson",
                CorrelationKind::Spearman => "spearman",
                CorrelationKind::Kendall => "kendall",
                _ => unreachable!(),
            };
            doc.insert(key.to_string(), m.to_json());
        }
        doc.insert(
            "var_conditional".to_string(),
            var_conditional_correlation(&var_model)?.to_json(),
        );
        doc.insert(
            "var_partial".to_string(),
            var_partial_correlation(&var_model)?.to_json(),
        );
        doc.insert("lag".to_string(), serde_json::json!(lag));
        let text = serde_json::to_string_pretty(&serde_json::Value::Object(doc))?;
        Ok(vec![write_file(dir, "correlations.json", text.as_bytes())?])
    })?;

    // Stage 5: pairwise cointegration on the level panel.
    rec.run("cointegration", |dir| {
        let names = levels.names();
        let n = names.len();
        let mut buf = Vec::new();
        {
            let mut wtr = csv::Writer::from_writer(&mut buf);
            let mut header = vec![String::new()];
            header.extend(names.iter().cloned());
            wtr.write_record(&header).map_err(Error::from)?;
            for i in 0..n {
                let mut row = vec![names[i].clone()];
                for j in 0..n {
                    if j <= i {
                        row.push(String::new());
                        continue;
                    }
                    let r = engle_granger(
                        &levels.column(i),
                        &levels.column(j),
                        Deterministic::Constant,
                        config.tests.adf_max_lags,
                        level,
                    )?;
                    let cell = if config.tests.coint_bidirectional {
                        let rev = engle_granger(
                            &levels.column(j),
                            &levels.column(i),
                            Deterministic::Constant,
                            config.tests.adf_max_lags,
                            level,
                        )?;
                        format!(
                            "{:.2}{} / {:.2}{}",
                            r.statistic,
                            stars(r.p_value),
                            rev.statistic,
                            stars(rev.p_value)
                        )
                    } else {
                        format!("{:.2}{}", r.statistic, stars(r.p_value))
                    };
                    row.push(cell);
                }
                wtr.write_record(&row).map_err(Error::from)?;
            }
            wtr.flush()?;
        }
        Ok(vec![write_file(dir, "cointegration.csv", &buf)?])
    })?;

    // Stage 6: structural stability of the differenced-panel VAR.
    rec.run("stability", |dir| {
        let break_index = config
            .tests
            .chow_break_index
            .unwrap_or_else(|| diff.len() / 2);
        let mut results = Vec::new();
        for variant in [ChowVariant::BreakPoint, ChowVariant::SampleSplit] {
            results.push(chow_test(
                &diff,
                lag,
                break_index,
                variant,
                config.tests.bootstrap_reps,
                config.seed,
                level,
            )?);
        }
        let text = serde_json::to_string_pretty(&results)?;
        Ok(vec![write_file(dir, "chow.json", text.as_bytes())?])
    })?;

    // Stage 7: full-sample connectedness table.
    let static_fevd = gfevd(&var_model, config.analysis.horizon)
        .map_err(|e| stage_error("static-connectedness", e))?;
    let static_report = connectedness_report_with(&static_fevd, NpdcConvention::TransmitterPositive);
    rec.run("static-connectedness", |dir| {
        if !var_model.is_stable() {
            eprintln!(
                "warning: estimated VAR is not stable (spectral radius {:.3})",
                var_model.companion_spectral_radius()
            );
        }
        let mut buf = Vec::new();
        static_report.to_table_csv(&mut buf)?;
        Ok(vec![write_file(dir, "static_connectedness.csv", &buf)?])
    })?;

    // Stage 8: dynamic connectedness from the filtered trajectory (or a
    // rolling re-estimation when configured).
    rec.run("dynamic-connectedness", |dir| {
        let tables = match config.analysis.rolling_window {
            Some(window) => rolling_var_fevd(&diff, window, lag, config.analysis.horizon)?,
            None => {
                let tvp_config = TvpConfig {
                    lag,
                    kappa1: config.analysis.kappa1,
                    kappa2: config.analysis.kappa2,
                    prior_scale: config.analysis.prior_scale,
                    burn_in: config.analysis.burn_in,
                };
                let traj = tvp_filter(&diff, &tvp_config)?;
                trajectory_fevd(&traj, config.analysis.horizon)?
            }
        };
        let dynamic = dynamic_report(&tables, NpdcConvention::TransmitterPositive)?;
        let mut buf = Vec::new();
        dynamic.to_long_csv(&mut buf)?;
        Ok(vec![write_file(dir, "dynamic_connectedness.csv", &buf)?])
    })?;

    // Stage 9: network export of the static table.
    rec.run("network", |dir| {
        let dot = export_network_dot(&static_report, config.output.dot_threshold)?;
        Ok(vec![write_file(dir, "network.dot", dot.as_bytes())?])
    })?;

    let manifest = Manifest {
        config_hash: config.config_hash(),
        stages: rec.stages,
    };
    let text = serde_json::to_string_pretty(&manifest)?;
    std::fs::write(out_dir.join("manifest.json"), text)?;
    Ok(manifest)
}
