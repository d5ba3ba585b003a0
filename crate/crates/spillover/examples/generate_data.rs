//! Regenerates the bundled synthetic dataset at `data/synthetic_prices.csv`:
//! two bank-style price series driven by a correlated return VAR(1) and a
//! persistent sentiment-style index level. Pass a path to write elsewhere.
//!
//!     cargo run --example generate_data -- [OUTPUT.csv]

use nalgebra::{DMatrix, DVector};
use spillover::sim;

fn main() -> spillover::Result<()> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "data/synthetic_prices.csv".to_string());

    let t = 520;
    // Joint dynamics of (bank A return, bank B return, index log-change).
    let phi = DMatrix::from_row_slice(
        3,
        3,
        &[
            0.12, 0.05, -0.08, //
            0.07, 0.15, -0.05, //
            -0.04, -0.03, 0.30,
        ],
    );
    let sigma = DMatrix::from_row_slice(
        3,
        3,
        &[
            1.0, 0.5, -0.30, //
            0.5, 1.0, -0.25, //
            -0.30, -0.25, 1.0,
        ],
    );
    let shocks = sim::var_values(20220318, t, &DVector::zeros(3), &[phi], &sigma);

    let dates = sim::business_dates(t);
    let mut bank_a = 100.0_f64;
    let mut bank_b = 80.0_f64;
    let mut log_idx = 22.0_f64.ln();
    let mut rows = Vec::with_capacity(t);
    for r in 0..t {
        bank_a *= (0.018 * shocks[(r, 0)]).exp();
        bank_b *= (0.022 * shocks[(r, 1)]).exp();
        log_idx += 0.03 * shocks[(r, 2)];
        rows.push((dates[r], bank_a, bank_b, log_idx.exp()));
    }

    let mut wtr = csv::Writer::from_path(&out)
        .map_err(|e| spillover::Error::Data(format!("cannot write {out}: {e}")))?;
    wtr.write_record(["date", "BANK_A", "BANK_B", "IDX"])
        .map_err(|e| spillover::Error::Data(e.to_string()))?;
    for (date, a, b, idx) in rows {
        wtr.write_record([
            date.format("%Y-%m-%d").to_string(),
            format!("{a:.6}"),
            format!("{b:.6}"),
            format!("{idx:.6}"),
        ])
        .map_err(|e| spillover::Error::Data(e.to_string()))?;
    }
    wtr.flush()?;
    println!("wrote {t} rows to {out}");
    Ok(())
}
