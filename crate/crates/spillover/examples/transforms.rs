//! Panel ingestion and transforms: load the bundled prices, build the
//! level panel (cumulative returns + log level), and difference it.
//!
//!     cargo run --example transforms

use spillover::panel::{first_difference, load_csv, CsvOptions, TransformKind, TransformSpec};

fn data_path() -> String {
    format!("{}/data/synthetic_prices.csv", env!("CARGO_MANIFEST_DIR"))
}

fn main() -> spillover::Result<()> {
    let prices = load_csv(data_path(), &CsvOptions::new("date"))?;
    println!(
        "loaded {} rows x {} columns: {:?}",
        prices.len(),
        prices.width(),
        prices.names()
    );

    let spec = TransformSpec::new(vec![
        ("BANK_A".into(), TransformKind::CumulativeReturn),
        ("BANK_B".into(), TransformKind::CumulativeReturn),
        ("IDX".into(), TransformKind::LogLevel),
    ]);
    let levels = spec.apply(&prices)?;
    let diff = first_difference(&levels)?;
    println!(
        "level panel: {} rows; differenced panel: {} rows",
        levels.len(),
        diff.len()
    );

    println!("\nfirst rows of the differenced panel:");
    let mut out = Vec::new();
    diff.to_csv(&mut out, "date")?;
    for line in String::from_utf8_lossy(&out).lines().take(6) {
        println!("    {line}");
    }
    Ok(())
}
