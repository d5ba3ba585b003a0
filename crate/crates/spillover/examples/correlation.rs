//! Correlation stage: the three static estimators plus the VAR-residual
//! conditional and partial correlation matrices.
//!
//!     cargo run --example correlation

use spillover::correlation::{
    static_correlation, var_conditional_correlation, var_partial_correlation, CorrelationKind,
};
use spillover::panel::{first_difference, load_csv, CsvOptions, TransformKind, TransformSpec};
use spillover::var::fit_var;

fn main() -> spillover::Result<()> {
    let path = format!("{}/data/synthetic_prices.csv", env!("CARGO_MANIFEST_DIR"));
    let prices = load_csv(path, &CsvOptions::new("date"))?;
    let spec = TransformSpec::new(vec![
        ("BANK_A".into(), TransformKind::CumulativeReturn),
        ("BANK_B".into(), TransformKind::CumulativeReturn),
        ("IDX".into(), TransformKind::LogLevel),
    ]);
    let diff = first_difference(&spec.apply(&prices)?)?;

    for kind in [
        CorrelationKind::Pearson,
        CorrelationKind::Spearman,
        CorrelationKind::Kendall,
    ] {
        let m = static_correlation(&diff, kind)?;
        println!("{kind:?} (upper triangle):");
        let mut buf = Vec::new();
        m.to_csv(&mut buf, true)?;
        print!("{}", String::from_utf8_lossy(&buf));
        println!();
    }

    let model = fit_var(&diff, 1, true)?;
    for (label, m) in [
        ("conditional (normalized innovation covariance)", var_conditional_correlation(&model)?),
        ("partial (from the innovation precision matrix)", var_partial_correlation(&model)?),
    ] {
        println!("{label}:");
        let mut buf = Vec::new();
        m.to_csv(&mut buf, true)?;
        print!("{}", String::from_utf8_lossy(&buf));
        println!();
    }
    Ok(())
}
