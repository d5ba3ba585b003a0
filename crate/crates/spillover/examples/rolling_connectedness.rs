//! Rolling-window re-estimation as an alternative to the filtered path:
//! one static fit and decomposition per window.
//!
//!     cargo run --example rolling_connectedness

use spillover::connectedness::{dynamic_report, NpdcConvention};
use spillover::panel::{first_difference, load_csv, CsvOptions, TransformKind, TransformSpec};
use spillover::tvp::rolling_var_fevd;

fn main() -> spillover::Result<()> {
    let path = format!("{}/data/synthetic_prices.csv", env!("CARGO_MANIFEST_DIR"));
    let prices = load_csv(path, &CsvOptions::new("date"))?;
    let spec = TransformSpec::new(vec![
        ("BANK_A".into(), TransformKind::CumulativeReturn),
        ("BANK_B".into(), TransformKind::CumulativeReturn),
        ("IDX".into(), TransformKind::LogLevel),
    ]);
    let diff = first_difference(&spec.apply(&prices)?)?;

    // Windows below N(p+1) + 10 observations cannot support the fit; the
    // precondition spells out the minimum.
    match rolling_var_fevd(&diff, 15, 1, 10) {
        Err(e) => println!("window of 15 rejected as expected: {e}"),
        Ok(_) => unreachable!("window below the minimum must fail"),
    }

    let window = 250;
    let tables = rolling_var_fevd(&diff, window, 1, 10)?;
    let dynamic = dynamic_report(&tables, NpdcConvention::TransmitterPositive)?;
    println!("\n{} windows of {} observations:", dynamic.len(), window);
    let tci = dynamic.tci_series();
    for t in (0..tci.len()).step_by(54) {
        println!("    {}  tci = {:>6.2}%", tci[t].0, tci[t].1);
    }
    Ok(())
}
