//! Classifies every state into the five-tier scheme (solid/lean D, swing,
//! lean/solid R) under a chosen scenario, the data behind an electoral map.
//!
//! ```text
//! cargo run --release --example state_classification [SCENARIO] [SIMS]
//! ```

use leansim::data::Dataset;
use leansim::regression::fit_all;
use leansim::simulate::{classify, simulate_ec, Scenario, SimOptions, Tier};
use std::path::PathBuf;

fn main() -> leansim::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "even".into());
    let sims: u64 = args.next().map(|s| s.parse().unwrap()).unwrap_or(10_000);

    let dir = PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data/demo"));
    let dataset = Dataset::load(
        &dir.join("elections.csv"),
        &dir.join("state_meta.csv"),
        Some(&dir.join("overrides.csv")),
    )?;
    let fits = fit_all(&dataset.observations, &dataset.national)?;
    let scenario = Scenario::preset(&name, 2020)?;
    let sim = simulate_ec(&fits, &dataset.meta, &scenario, &SimOptions::new(sims, 7))?;

    for tier in [Tier::SolidD, Tier::LeanD, Tier::Swing, Tier::LeanR, Tier::SolidR] {
        let mut members: Vec<String> = sim
            .state_win_frequency
            .iter()
            .filter(|(_, &p)| classify(p) == tier)
            .map(|(state, p)| format!("{state} ({p:.2})"))
            .collect();
        members.sort();
        let ec: u32 = sim
            .state_win_frequency
            .iter()
            .filter(|(_, &p)| classify(p) == tier)
            .map(|(state, _)| dataset.meta_for(*state).map(|m| m.ec_votes).unwrap_or(0))
            .sum();
        println!("{tier} ({} states, {ec} EC votes):", members.len());
        if members.is_empty() {
            println!("  -");
        } else {
            println!("  {}", members.join(", "));
        }
    }
    println!(
        "\nscenario {}: P(D win) = {:.4}",
        scenario.label, sim.distribution.dem_win_probability
    );
    Ok(())
}
