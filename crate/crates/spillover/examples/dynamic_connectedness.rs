//! Dynamic connectedness from the time-varying filter: per-date spillover
//! reports, a NET series, and a pairwise index series.
//!
//!     cargo run --example dynamic_connectedness

use spillover::connectedness::{dynamic_report, NpdcConvention, PairMeasure};
use spillover::panel::{first_difference, load_csv, CsvOptions, TransformKind, TransformSpec};
use spillover::tvp::{trajectory_fevd, tvp_filter, TvpConfig};

fn main() -> spillover::Result<()> {
    let path = format!("{}/data/synthetic_prices.csv", env!("CARGO_MANIFEST_DIR"));
    let prices = load_csv(path, &CsvOptions::new("date"))?;
    let spec = TransformSpec::new(vec![
        ("BANK_A".into(), TransformKind::CumulativeReturn),
        ("BANK_B".into(), TransformKind::CumulativeReturn),
        ("IDX".into(), TransformKind::LogLevel),
    ]);
    let diff = first_difference(&spec.apply(&prices)?)?;

    let config = TvpConfig::new(1);
    let traj = tvp_filter(&diff, &config)?;
    println!(
        "filtered {} dates (burn-in {} observations, kappa1 = {}, kappa2 = {})",
        traj.len(),
        diff.len() - traj.len(),
        config.kappa1,
        config.kappa2
    );

    let tables = trajectory_fevd(&traj, 10)?;
    let dynamic = dynamic_report(&tables, NpdcConvention::TransmitterPositive)?;

    let tci = dynamic.tci_series();
    let (lo, hi) = tci.iter().fold((f64::MAX, f64::MIN), |(lo, hi), (_, v)| {
        (lo.min(*v), hi.max(*v))
    });
    println!("total connectedness ranges {lo:.1}%..{hi:.1}% across the sample");

    println!("\nquarter-end snapshots:");
    println!("{:>12} {:>8} {:>12} {:>12} {:>12}", "date", "tci", "net BANK_A", "net BANK_B", "net IDX");
    let net_a = dynamic.net_series("BANK_A")?;
    let net_b = dynamic.net_series("BANK_B")?;
    let net_i = dynamic.net_series("IDX")?;
    for t in (0..dynamic.len()).step_by(63) {
        println!(
            "{:>12} {:>8.2} {:>12.2} {:>12.2} {:>12.2}",
            tci[t].0, tci[t].1, net_a[t].1, net_b[t].1, net_i[t].1
        );
    }

    let pci_ab = dynamic.pairwise_series(PairMeasure::Pci, "BANK_A", "BANK_B")?;
    let peak = pci_ab
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty series");
    println!("\nBANK_A/BANK_B pairwise connectedness peaks at {:.3} on {}", peak.1, peak.0);
    Ok(())
}
