//! DOT export of the spillover network: giver/receiver node classes,
//! edges directed from the dominating variable, bold edges for the
//! strongest decile.
//!
//!     cargo run --example network > network.dot

use spillover::connectedness::{connectedness_report, export_network_dot};
use spillover::panel::{first_difference, load_csv, CsvOptions, TransformKind, TransformSpec};
use spillover::var::{fit_var, gfevd};

fn main() -> spillover::Result<()> {
    let path = format!("{}/data/synthetic_prices.csv", env!("CARGO_MANIFEST_DIR"));
    let prices = load_csv(path, &CsvOptions::new("date"))?;
    let spec = TransformSpec::new(vec![
        ("BANK_A".into(), TransformKind::CumulativeReturn),
        ("BANK_B".into(), TransformKind::CumulativeReturn),
        ("IDX".into(), TransformKind::LogLevel),
    ]);
    let diff = first_difference(&spec.apply(&prices)?)?;

    let model = fit_var(&diff, 1, true)?;
    let report = connectedness_report(&gfevd(&model, 10)?);
    print!("{}", export_network_dot(&report, 0.25)?);
    Ok(())
}
