//! Command-line front end: one thin subcommand per library operation.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use spillover::connectedness::{self, NpdcConvention, PairMeasure};
use spillover::correlation::{self, CorrelationKind};
use spillover::error::{Error, Result};
use spillover::panel::{load_csv, CsvOptions, PanelSeries};
use spillover::pipeline::{run_pipeline, PipelineConfig};
use spillover::stats::{self, ChowVariant, Deterministic};
use spillover::tvp::{rolling_var_fevd, trajectory_fevd, tvp_filter, TvpConfig};
use spillover::var::{fevd_cholesky, fit_var, gfevd, select_lag, LagCriterion, VarModel};

#[derive(Parser)]
#[command(
    name = "spillover",
    about = "Correlation, cointegration, and connectedness analysis for time-series panels",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Input CSV: one date column plus numeric variable columns.
    #[arg(long)]
    input: PathBuf,
    /// Header name of the date column.
    #[arg(long, default_value = "date")]
    date_column: String,
    /// Date format string (chrono syntax).
    #[arg(long)]
    date_format: Option<String>,
    /// Field delimiter.
    #[arg(long, default_value = ",")]
    delimiter: char,
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl InputArgs {
    fn load(&self) -> Result<PanelSeries> {
        let mut opts = CsvOptions::new(&self.date_column).with_delimiter(self.delimiter as u8);
        if let Some(fmt) = &self.date_format {
            opts = opts.with_date_format(fmt.clone());
        }
        let panel = load_csv(&self.input, &opts)?;
        panel.require_complete()?;
        Ok(panel)
    }

    fn write(&self, bytes: &[u8]) -> Result<()> {
        match &self.output {
            Some(path) => std::fs::write(path, bytes)?,
            None => std::io::stdout().write_all(bytes)?,
        }
        Ok(())
    }
}

#[derive(Args)]
struct VarArgs {
    /// VAR lag order; chosen by BIC up to --lag-max when omitted.
    #[arg(long)]
    lag: Option<usize>,
    #[arg(long, default_value_t = 8)]
    lag_max: usize,
    /// Decomposition horizon.
    #[arg(long, default_value_t = 10)]
    horizon: usize,
}

impl VarArgs {
    fn fit(&self, panel: &PanelSeries) -> Result<(VarModel, usize)> {
        let lag = match self.lag {
            Some(p) => p,
            None => select_lag(panel, self.lag_max, LagCriterion::Bic)?,
        };
        Ok((fit_var(panel, lag, true)?, lag))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline from a TOML configuration file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory (overrides the config).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Descriptive statistics with normality and squared-serial-correlation diagnostics.
    Describe {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 20)]
        lb_lags: usize,
        #[arg(long, default_value_t = 0.05)]
        level: f64,
    },
    /// Unit-root test per column.
    TestAdf {
        #[command(flatten)]
        input: InputArgs,
        /// Restrict to these columns (repeatable).
        #[arg(long = "column")]
        columns: Vec<String>,
        #[arg(long)]
        max_lags: Option<usize>,
        #[arg(long, value_enum, default_value_t = DetArg::Constant)]
        deterministic: DetArg,
        #[arg(long, default_value_t = 0.05)]
        level: f64,
        /// Test first differences instead of levels.
        #[arg(long)]
        diff: bool,
        /// Append the significance notation to each record.
        #[arg(long)]
        stars: bool,
    },
    /// Pairwise two-step cointegration tests.
    TestCoint {
        #[command(flatten)]
        input: InputArgs,
        /// Single pair "A,B" (regress A on B); all pairs when omitted.
        #[arg(long)]
        pair: Option<String>,
        /// Also run every reversed ordering.
        #[arg(long)]
        bidirectional: bool,
        #[arg(long)]
        max_lags: Option<usize>,
        #[arg(long, value_enum, default_value_t = DetArg::Constant)]
        deterministic: DetArg,
        #[arg(long, default_value_t = 0.05)]
        level: f64,
        #[arg(long)]
        stars: bool,
    },
    /// Bootstrap-calibrated structural-stability test.
    TestChow {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1)]
        lag: usize,
        /// Break index; sample midpoint when omitted.
        #[arg(long)]
        break_index: Option<usize>,
        #[arg(long, value_enum, default_value_t = VariantArg::BreakPoint)]
        variant: VariantArg,
        #[arg(long, default_value_t = 399)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.05)]
        level: f64,
        #[arg(long)]
        stars: bool,
    },
    /// Correlation matrix of one kind.
    Corr {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Lag for the VAR-based kinds; BIC selection when omitted.
        #[arg(long)]
        lag: Option<usize>,
        #[arg(long, default_value_t = 8)]
        lag_max: usize,
        /// Render the upper triangle only.
        #[arg(long)]
        upper: bool,
    },
    /// Full-sample connectedness table.
    StaticConn {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        var: VarArgs,
        /// Literal receiver-positive npdc sign convention.
        #[arg(long)]
        npdc_raw: bool,
        /// Orthogonalized decomposition with this comma-separated
        /// variable ordering instead of the generalized one.
        #[arg(long)]
        cholesky: Option<String>,
    },
    /// Per-date connectedness from the time-varying filter (or a rolling window).
    DynamicConn {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        var: VarArgs,
        #[arg(long, default_value_t = 0.99)]
        kappa1: f64,
        #[arg(long, default_value_t = 0.99)]
        kappa2: f64,
        #[arg(long, default_value_t = 0.1)]
        prior_scale: f64,
        #[arg(long)]
        burn_in: Option<usize>,
        /// Re-estimate over this rolling window instead of filtering.
        #[arg(long)]
        rolling_window: Option<usize>,
        /// Extract one pair "A,B" as a two-column date/value series.
        #[arg(long)]
        pair: Option<String>,
        /// Measure for --pair: npdc, pci, or pii.
        #[arg(long, default_value = "pci")]
        measure: String,
        #[arg(long)]
        npdc_raw: bool,
    },
    /// DOT network export of the full-sample connectedness.
    ExportNet {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        var: VarArgs,
        /// Minimum |npdc| for an edge.
        #[arg(long, default_value_t = 0.0)]
        threshold: f64,
        #[arg(long)]
        npdc_raw: bool,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum DetArg {
    None,
    Constant,
    ConstantTrend,
}

impl From<DetArg> for Deterministic {
    fn from(d: DetArg) -> Self {
        match d {
            DetArg::None => Deterministic::None,
            DetArg::Constant => Deterministic::Constant,
            DetArg::ConstantTrend => Deterministic::ConstantTrend,
        }
    }
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum VariantArg {
    BreakPoint,
    SampleSplit,
}

impl From<VariantArg> for ChowVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::BreakPoint => ChowVariant::BreakPoint,
            VariantArg::SampleSplit => ChowVariant::SampleSplit,
        }
    }
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum KindArg {
    Pearson,
    Spearman,
    Kendall,
    VarConditional,
    VarPartial,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version on stdout with success status.
            if e.use_stderr() {
                eprint!("{e}");
                std::process::exit(1);
            }
            print!("{e}");
            std::process::exit(0);
        }
    };
    if let Err(e) = dispatch(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn parse_pair(pair: &str) -> Result<(String, String)> {
    let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
    if parts.len() != 2 || parts[0].is_empty() || parts[1].is_empty() {
        return Err(Error::Config(format!("--pair expects \"A,B\", got {pair:?}")));
    }
    Ok((parts[0].to_string(), parts[1].to_string()))
}

fn with_stars(mut value: serde_json::Value, result_p: f64, stars: bool) -> serde_json::Value {
    if stars {
        if let Some(obj) = value.as_object_mut() {
            obj.insert(
                "signif".to_string(),
                serde_json::json!(stats::stars(result_p)),
            );
        }
    }
    value
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Run { config, out } => {
            let config = PipelineConfig::load(&config)?;
            let manifest = run_pipeline(&config, out.as_deref())?;
            println!("{}", serde_json::to_string_pretty(&manifest)?);
            Ok(())
        }
        Command::Describe { input, lb_lags, level } => {
            let panel = input.load()?;
            let stats_rows = stats::describe(&panel)?;
            let mut buf = Vec::new();
            {
                let mut wtr = csv::Writer::from_writer(&mut buf);
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
                    "jb_p",
                    &format!("q2_{lb_lags}"),
                    "q2_p",
                ])
                .map_err(Error::from)?;
                for (c, s) in stats_rows.iter().enumerate() {
                    let x = panel.column(c);
                    let jb = stats::jarque_bera(&x, level)?;
                    let lb = stats::ljung_box_squared(&x, lb_lags, level)?;
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
                        format!("{:.4e}", jb.p_value),
                        format!("{:.3}", lb.statistic),
                        format!("{:.4e}", lb.p_value),
                    ])
                    .map_err(Error::from)?;
                }
                wtr.flush()?;
            }
            input.write(&buf)
        }
        Command::TestAdf {
            input,
            columns,
            max_lags,
            deterministic,
            level,
            diff,
            stars,
        } => {
            let panel = input.load()?;
            let names: Vec<String> = if columns.is_empty() {
                panel.names().to_vec()
            } else {
                columns
            };
            let mut records = Vec::new();
            for name in &names {
                let c = panel
                    .index_of(name)
                    .ok_or_else(|| Error::Data(format!("unknown column {name:?}")))?;
                let mut x = panel.column(c);
                if diff {
                    x = x.windows(2).map(|w| w[1] - w[0]).collect();
                }
                let r = stats::adf_test(&x, max_lags, deterministic.into(), level)?;
                let p = r.p_value;
                records.push(serde_json::json!({
                    "variable": name,
                    "result": with_stars(serde_json::to_value(&r)?, p, stars),
                }));
            }
            let text = serde_json::to_string_pretty(&records)?;
            input.write(text.as_bytes())
        }
        Command::TestCoint {
            input,
            pair,
            bidirectional,
            max_lags,
            deterministic,
            level,
            stars,
        } => {
            let panel = input.load()?;
            let pairs: Vec<(usize, usize)> = match &pair {
                Some(p) => {
                    let (a, b) = parse_pair(p)?;
                    let i = panel
                        .index_of(&a)
                        .ok_or_else(|| Error::Data(format!("unknown column {a:?}")))?;
                    let j = panel
                        .index_of(&b)
                        .ok_or_else(|| Error::Data(format!("unknown column {b:?}")))?;
                    vec![(i, j)]
                }
                None => {
                    let n = panel.width();
                    (0..n)
                        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                        .collect()
                }
            };
            let mut records = Vec::new();
            for (i, j) in pairs {
                let mut orderings = vec![(i, j)];
                if bidirectional {
                    orderings.push((j, i));
                }
                for (a, b) in orderings {
                    let r = stats::engle_granger(
                        &panel.column(a),
                        &panel.column(b),
                        deterministic.into(),
                        max_lags,
                        level,
                    )?;
                    let p = r.p_value;
                    records.push(serde_json::json!({
                        "x": panel.names()[a],
                        "y": panel.names()[b],
                        "result": with_stars(serde_json::to_value(&r)?, p, stars),
                    }));
                }
            }
            let text = serde_json::to_string_pretty(&records)?;
            input.write(text.as_bytes())
        }
        Command::TestChow {
            input,
            lag,
            break_index,
            variant,
            reps,
            seed,
            level,
            stars,
        } => {
            let panel = input.load()?;
            let break_index = break_index.unwrap_or(panel.len() / 2);
            let r = stats::chow_test(&panel, lag, break_index, variant.into(), reps, seed, level)?;
            let p = r.result.p_value;
            let text = serde_json::to_string_pretty(&with_stars(
                serde_json::to_value(&r)?,
                p,
                stars,
            ))?;
            input.write(text.as_bytes())
        }
        Command::Corr {
            input,
            kind,
            lag,
            lag_max,
            upper,
        } => {
            let panel = input.load()?;
            let matrix = match kind {
                KindArg::Pearson => correlation::static_correlation(&panel, CorrelationKind::Pearson)?,
                KindArg::Spearman => {
                    correlation::static_correlation(&panel, CorrelationKind::Spearman)?
                }
                KindArg::Kendall => correlation::static_correlation(&panel, CorrelationKind::Kendall)?,
                KindArg::VarConditional | KindArg::VarPartial => {
                    let p = match lag {
                        Some(p) => p,
                        None => select_lag(&panel, lag_max, LagCriterion::Bic)?,
                    };
                    let model = fit_var(&panel, p, true)?;
                    match kind {
                        KindArg::VarConditional => correlation::var_conditional_correlation(&model)?,
                        _ => correlation::var_partial_correlation(&model)?,
                    }
                }
            };
            let mut buf = Vec::new();
            matrix.to_csv(&mut buf, upper)?;
            input.write(&buf)
        }
        Command::StaticConn {
            input,
            var,
            npdc_raw,
            cholesky,
        } => {
            let panel = input.load()?;
            let (model, _) = var.fit(&panel)?;
            warn_if_unstable(&model);
            let fevd = match &cholesky {
                Some(order_text) => {
                    let order = parse_order(order_text, &panel)?;
                    fevd_cholesky(&model, var.horizon, &order)?
                }
                None => gfevd(&model, var.horizon)?,
            };
            let report = connectedness::connectedness_report_with(&fevd, convention(npdc_raw));
            let mut buf = Vec::new();
            report.to_table_csv(&mut buf)?;
            input.write(&buf)
        }
        Command::DynamicConn {
            input,
            var,
            kappa1,
            kappa2,
            prior_scale,
            burn_in,
            rolling_window,
            pair,
            measure,
            npdc_raw,
        } => {
            let panel = input.load()?;
            let lag = match var.lag {
                Some(p) => p,
                None => select_lag(&panel, var.lag_max, LagCriterion::Bic)?,
            };
            let tables = match rolling_window {
                Some(window) => rolling_var_fevd(&panel, window, lag, var.horizon)?,
                None => {
                    let config = TvpConfig {
                        lag,
                        kappa1,
                        kappa2,
                        prior_scale,
                        burn_in,
                    };
                    let traj = tvp_filter(&panel, &config)?;
                    trajectory_fevd(&traj, var.horizon)?
                }
            };
            let dynamic = connectedness::dynamic_report(&tables, convention(npdc_raw))?;
            let mut buf = Vec::new();
            match &pair {
                Some(p) => {
                    let (a, b) = parse_pair(p)?;
                    let m: PairMeasure = measure.parse()?;
                    let series = dynamic.pairwise_series(m, &a, &b)?;
                    let mut wtr = csv::Writer::from_writer(&mut buf);
                    wtr.write_record(["date", "value"]).map_err(Error::from)?;
                    for (d, v) in series {
                        wtr.write_record([d.format("%Y-%m-%d").to_string(), format!("{v}")])
                            .map_err(Error::from)?;
                    }
                    wtr.flush()?;
                }
                None => dynamic.to_long_csv(&mut buf)?,
            }
            input.write(&buf)
        }
        Command::ExportNet {
            input,
            var,
            threshold,
            npdc_raw,
        } => {
            let panel = input.load()?;
            let (model, _) = var.fit(&panel)?;
            warn_if_unstable(&model);
            let fevd = gfevd(&model, var.horizon)?;
            let report = connectedness::connectedness_report_with(&fevd, convention(npdc_raw));
            let dot = connectedness::export_network_dot(&report, threshold)?;
            input.write(dot.as_bytes())
        }
    }
}

fn convention(npdc_raw: bool) -> NpdcConvention {
    if npdc_raw {
        NpdcConvention::ReceiverPositive
    } else {
        NpdcConvention::TransmitterPositive
    }
}

fn parse_order(text: &str, panel: &PanelSeries) -> Result<Vec<usize>> {
    let mut order = Vec::new();
    for name in text.split(',').map(str::trim) {
        order.push(
            panel
                .index_of(name)
                .ok_or_else(|| Error::Data(format!("unknown column {name:?} in ordering")))?,
        );
    }
    Ok(order)
}

fn warn_if_unstable(model: &VarModel) {
    if !model.is_stable() {
        eprintln!(
            "warning: estimated VAR is not stable (spectral radius {:.3})",
            model.companion_spectral_radius()
        );
    }
}
