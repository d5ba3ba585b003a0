//! Statistical test battery: descriptive statistics, normality and
//! serial-correlation diagnostics, unit-root and cointegration tests,
//! and structural-stability testing.

mod adf;
mod chow;
mod describe;
mod engle_granger;
mod jarque_bera;
mod ljung_box;
pub(crate) mod linreg;
pub(crate) mod mackinnon;
#[cfg(test)]
pub(crate) mod test_fixtures;

pub use adf::{adf_test, Deterministic};
pub use chow::{chow_test, ChowResult, ChowVariant};
pub use describe::{describe, DescriptiveStats};
pub use engle_granger::engle_granger;
pub use jarque_bera::jarque_bera;
pub use ljung_box::ljung_box_squared;

use serde::Serialize;

/// Reject / fail-to-reject at the stated level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    Reject,
    FailToReject,
}

/// Marks a p-value that is a bound rather than an exact value because the
/// test statistic fell outside the tabulated response-surface range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PValueBound {
    /// True p-value is at most the reported value.
    Upper,
    /// True p-value is at least the reported value.
    Lower,
}

/// Outcome of a hypothesis test.
#[derive(Debug, Clone, Serialize)]
pub struct TestResult {
    /// Test identifier, e.g. `"adf"` or `"jarque-bera"`.
    pub test: String,
    pub statistic: f64,
    pub p_value: f64,
    /// Lag order used, where applicable.
    pub lags: Option<usize>,
    pub decision: Decision,
    /// Significance level the decision refers to.
    pub level: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_bound: Option<PValueBound>,
}

impl TestResult {
    pub(crate) fn new(test: &str, statistic: f64, p_value: f64, lags: Option<usize>, level: f64) -> Self {
        Self {
            test: test.to_string(),
            statistic,
            p_value,
            lags,
            decision: if p_value <= level {
                Decision::Reject
            } else {
                Decision::FailToReject
            },
            level,
            p_bound: None,
        }
    }

    /// Significance stars for the p-value: `***` at 0.005, `**` at 0.01,
    /// `*` at 0.05.
    pub fn stars(&self) -> &'static str {
        stars(self.p_value)
    }
}

/// Renders the conventional significance notation for a p-value.
pub fn stars(p_value: f64) -> &'static str {
    if p_value <= 0.005 {
        "***"
    } else if p_value <= 0.01 {
        "**"
    } else if p_value <= 0.05 {
        "*"
    } else {
        ""
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stars_thresholds() {
        assert_eq!(stars(0.004), "***");
        assert_eq!(stars(0.005), "***");
        assert_eq!(stars(0.0099), "**");
        assert_eq!(stars(0.03), "*");
        assert_eq!(stars(0.12), "");
    }

    #[test]
    fn decision_tracks_level() {
        let r = TestResult::new("t", 1.0, 0.04, None, 0.05);
        assert_eq!(r.decision, Decision::Reject);
        let r = TestResult::new("t", 1.0, 0.06, None, 0.05);
        assert_eq!(r.decision, Decision::FailToReject);
    }

    #[test]
    fn serializes_schema_fields() {
        let r = TestResult::new("adf", -2.5, 0.1, Some(3), 0.05);
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let obj = v.as_object().unwrap();
        for key in ["test", "statistic", "p_value", "lags", "decision", "level"] {
            assert!(obj.contains_key(key), "missing {key}");
        }
        assert!(!obj.contains_key("p_bound"));
    }
}
