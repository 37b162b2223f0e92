//! Fits the 50 per-state regressions on the demo dataset and prints the
//! headline estimates.
//!
//! ```text
//! cargo run --release --example fit_states [DATA_DIR]
//! ```

use leansim::data::Dataset;
use leansim::regression::{fit_all, write_regression_results_csv};
use std::path::PathBuf;

fn main() -> leansim::Result<()> {
    let dir: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data/demo")));
    let dataset = Dataset::load(
        &dir.join("elections.csv"),
        &dir.join("state_meta.csv"),
        Some(&dir.join("overrides.csv")),
    )?;
    println!(
        "loaded {} records, {} state-year observations",
        dataset.records.len(),
        dataset.observations.len()
    );

    let fits = fit_all(&dataset.observations, &dataset.national)?;
    let mut by_alpha: Vec<_> = fits.values().collect();
    by_alpha.sort_by(|a, b| a.alpha().partial_cmp(&b.alpha()).unwrap());

    println!("\nfive reddest states:");
    for fit in by_alpha.iter().take(5) {
        println!(
            "  {}: alpha = {:+.3}, beta = {:+.3}, gamma = {:+.4}, sigma = {:.3} (n = {})",
            fit.state,
            fit.alpha(),
            fit.beta(),
            fit.gamma(),
            fit.sigma(),
            fit.n
        );
    }
    println!("five bluest states:");
    for fit in by_alpha.iter().rev().take(5) {
        println!(
            "  {}: alpha = {:+.3}, beta = {:+.3}, gamma = {:+.4}, sigma = {:.3} (n = {})",
            fit.state,
            fit.alpha(),
            fit.beta(),
            fit.gamma(),
            fit.sigma(),
            fit.n
        );
    }

    let out = std::env::temp_dir().join("regressionResults.csv");
    write_regression_results_csv(&fits, std::fs::File::create(&out)?)?;
    println!("\nfull table written to {}", out.display());
    Ok(())
}
