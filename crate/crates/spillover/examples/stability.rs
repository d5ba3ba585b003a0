//! Structural-stability testing with the bootstrap-calibrated break-point
//! and sample-split statistics, on a stable panel and on one with a
//! planted coefficient break.
//!
//!     cargo run --example stability

use nalgebra::{DMatrix, DVector};
use spillover::sim;
use spillover::stats::{chow_test, ChowVariant};

fn main() -> spillover::Result<()> {
    let stable = {
        let phi = DMatrix::from_row_slice(2, 2, &[0.4, 0.1, 0.0, 0.3]);
        let values = sim::var_values(1, 400, &DVector::zeros(2), &[phi], &DMatrix::identity(2, 2));
        sim::panel_from_values(&["a", "b"], values)?
    };
    let broken = {
        let pre = DMatrix::from_diagonal(&DVector::from_element(2, 0.2));
        let post = DMatrix::from_diagonal(&DVector::from_element(2, 0.8));
        let values = sim::var_values_with_break(
            2,
            400,
            200,
            &DVector::zeros(2),
            std::slice::from_ref(&pre),
            std::slice::from_ref(&post),
            &DMatrix::identity(2, 2),
        );
        sim::panel_from_values(&["a", "b"], values)?
    };

    for (label, panel) in [("stable DGP", &stable), ("coefficient break at t=200", &broken)] {
        println!("{label}:");
        for variant in [ChowVariant::BreakPoint, ChowVariant::SampleSplit] {
            let r = chow_test(panel, 1, 200, variant, 399, 7, 0.05)?;
            println!(
                "    {:<18} statistic {:>8.2}  95% critical {:>8.2}  p = {:.3} -> {:?}",
                r.result.test, r.result.statistic, r.critical_value, r.result.p_value, r.result.decision
            );
        }
    }
    Ok(())
}
