//! Runs the four popular-vote scenarios for 2020 and prints the Democratic
//! Electoral College win probability for each, with the bias verdict for the
//! even-PV case and an SVG histogram per scenario.
//!
//! ```text
//! cargo run --release --example simulate_election [SIMS] [SEED]
//! ```

use leansim::data::Dataset;
use leansim::regression::fit_all;
use leansim::simulate::{
    bias_check, simulate_ec, write_histogram_svg, BiasDirection, Scenario, SimOptions,
};
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

    for name in Scenario::PRESETS {
        let scenario = Scenario::preset(name, 2020)?;
        let sim = simulate_ec(&fits, &dataset.meta, &scenario, &opts)?;
        let p = sim.distribution.dem_win_probability;
        print!(
            "{:<12} dem {:>5.1}%, rep {:>5.1}%  ->  P(D win) = {p:.4}, mean EC = {:.1}",
            scenario.label,
            scenario.dem_share,
            scenario.rep_share,
            sim.distribution.mean()
        );
        if scenario.dem_share == scenario.rep_share {
            let check = bias_check(p, sims, 1.96);
            match check.direction {
                Some(BiasDirection::Republicans) => print!("  [EC biased toward Republicans]"),
                Some(BiasDirection::Democrats) => print!("  [EC biased toward Democrats]"),
                None => print!("  [no significant EC bias]"),
            }
        }
        println!();

        let svg_path = std::env::temp_dir().join(format!("ecHistogram_{}.svg", scenario.label));
        write_histogram_svg(
            &sim.distribution,
            &format!("{}: P(D win) = {:.1}%", scenario.label, 100.0 * p),
            std::fs::File::create(&svg_path)?,
        )?;
        println!("             histogram -> {}", svg_path.display());
    }
    Ok(())
}
