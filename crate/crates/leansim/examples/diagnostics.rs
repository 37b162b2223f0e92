//! Residual-normality diagnostics: compares the aggregated state-year model
//! against the naive per-race model.
//!
//! ```text
//! cargo run --release --example diagnostics [DATA_DIR]
//! ```
//!
//! On data generated from the aggregated model the 50 Shapiro-Wilk p-values
//! should look uniform (high chi-squared uniformity p-value), while fitting
//! individual races against a single benchmark typically fails more states.

use leansim::data::{per_race_observations, Dataset};
use leansim::regression::{diagnose, fit_all, fit_separate_model};
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

    let fits = fit_all(&dataset.observations, &dataset.national)?;
    let diag = diagnose(&fits)?;
    println!("aggregated model (state-year means):");
    println!("  chi-squared uniformity of 50 SW p-values: p = {:.4}", diag.uniformity_pvalue);
    println!("  states with SW p < 5%: {}", diag.count_below_0_05);
    println!("  pooled residual SW p = {:.4}", diag.pooled_sw_pvalue);

    let race_obs = per_race_observations(&dataset.records)?;
    let separate = fit_separate_model(&race_obs)?;
    println!("\nseparate model (one row per race):");
    println!(
        "  states with SW p < 5%: {} of {}",
        separate.count_below_0_05,
        separate.fits.len()
    );

    println!("\nworst five states under the aggregated model:");
    let mut worst: Vec<_> = diag.sw_pvalues.iter().collect();
    worst.sort_by(|a, b| a.1.partial_cmp(b.1).unwrap());
    for (state, p) in worst.iter().take(5) {
        println!("  {state}: SW p = {p:.4}");
    }
    Ok(())
}
