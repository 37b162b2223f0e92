//! Ranks states by importance coefficient — the expected Electoral College
//! vote gain per unit increase in a state's lean — for each 2020 scenario.
//!
//! ```text
//! cargo run --release --example importance_ranking [TOP_N]
//! ```

use leansim::data::Dataset;
use leansim::regression::fit_all;
use leansim::simulate::{importance, Scenario};
use std::path::PathBuf;

fn main() -> leansim::Result<()> {
    let top_n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("TOP_N must be an integer"))
        .unwrap_or(5);

    let dir = PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data/demo"));
    let dataset = Dataset::load(
        &dir.join("elections.csv"),
        &dir.join("state_meta.csv"),
        Some(&dir.join("overrides.csv")),
    )?;
    let fits = fit_all(&dataset.observations, &dataset.national)?;

    for name in Scenario::PRESETS {
        let scenario = Scenario::preset(name, 2020)?;
        let ranking = importance(&fits, &scenario, &dataset.meta)?;
        println!("{}:", scenario.label);
        for (rank, (state, value)) in ranking.iter().take(top_n).enumerate() {
            let ec = dataset.meta_for(*state).map(|m| m.ec_votes).unwrap_or(0);
            println!("  {}. {state} importance {value:>6.1} ({ec} EC votes)", rank + 1);
        }
    }
    Ok(())
}
