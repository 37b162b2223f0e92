//! Re-simulates the 2012 and 2016 elections, once with an even national
//! popular vote (the Electoral College bias probe) and once with each year's
//! actual popular vote from the dataset.
//!
//! ```text
//! cargo run --release --example backtest [SIMS] [SEED]
//! ```

use leansim::data::Dataset;
use leansim::regression::fit_all;
use leansim::simulate::{backtest, BacktestPv, SimOptions};
use std::path::PathBuf;

fn main() -> leansim::Result<()> {
    let mut args = std::env::args().skip(1);
    let sims: u64 = args.next().map(|s| s.parse().unwrap()).unwrap_or(10_000);
    let seed: u64 = args.next().map(|s| s.parse().unwrap()).unwrap_or(7);

    let dir = PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data/demo"));
    let dataset = Dataset::load(
        &dir.join("elections.csv"),
        &dir.join("state_meta.csv"),
        Some(&dir.join("overrides.csv")),
    )?;
    let fits = fit_all(&dataset.observations, &dataset.national)?;
    let opts = SimOptions::new(sims, seed);

    for year in [2012u16, 2016] {
        for pv in [BacktestPv::Even, BacktestPv::Actual] {
            let sim = backtest(&fits, &dataset, year, pv, &opts)?;
            println!(
                "{:<12} P(D win) = {:.4}  (dem {:.2} / rep {:.2}, mean EC = {:.1})",
                sim.scenario.label,
                sim.distribution.dem_win_probability,
                sim.scenario.dem_share,
                sim.scenario.rep_share,
                sim.distribution.mean()
            );
        }
    }
    Ok(())
}
