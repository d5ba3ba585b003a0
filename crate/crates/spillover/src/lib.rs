//! Correlation, cointegration, and connectedness analysis for
//! multivariate financial time series.
//!
//! The crate ingests date-indexed panels, runs a stationarity and
//! stability test battery, estimates static and time-varying vector
//! autoregressions, and turns their forecast-error variance
//! decompositions into directional spillover measures (receiver/giver
//! shares, total connectedness, and pairwise dominance indices) with
//! network export.
//!
//! Start from the runnable programs in `examples/`; each one walks
//! through a single capability end to end.

pub mod connectedness;
pub mod correlation;
pub mod error;
pub mod panel;
pub mod pipeline;
pub mod sim;
pub mod stats;
pub mod tvp;
pub mod var;

pub use connectedness::{
    connectedness_report, dynamic_report, export_network_dot, npdc, pci, pii,
    ConnectednessReport, DynamicConnectedness, NpdcConvention,
};
pub use correlation::{
    static_correlation, var_conditional_correlation, var_partial_correlation, CorrelationKind,
    CorrelationMatrix,
};
pub use error::{Error, Result};
pub use panel::{
    align, cumulative_return, first_difference, load_csv, CsvOptions, PanelSeries, TransformKind,
    TransformSpec,
};
pub use pipeline::{run_pipeline, PipelineConfig};
pub use stats::{
    adf_test, chow_test, describe, engle_granger, jarque_bera, ljung_box_squared, ChowResult,
    ChowVariant, Decision, DescriptiveStats, Deterministic, TestResult,
};
pub use tvp::{rolling_var_fevd, trajectory_fevd, tvp_filter, TvpConfig, TvpTrajectory};
pub use var::{
    fit_var, fevd_cholesky, gfevd, ma_coefficients, select_lag, FevdTable, LagCriterion, VarModel,
};
