//! Regenerates the bundled demo dataset (or a variant with another seed).
//!
//! ```text
//! cargo run --example synthesize_dataset [OUT_DIR] [SEED]
//! ```
//!
//! With no arguments this rewrites `data/demo/` next to the crate manifest,
//! which is exactly what ships in the repository.

use leansim::synth;
use std::path::PathBuf;

fn main() -> leansim::Result<()> {
    let mut args = std::env::args().skip(1);
    let out: PathBuf = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data/demo")));
    let seed: u64 = args
        .next()
        .map(|s| s.parse().expect("seed must be an integer"))
        .unwrap_or(synth::DEMO_SEED);

    let dataset = synth::generate(seed);
    dataset.write_to_dir(&out)?;
    println!(
        "wrote {} election records, {} states, {} override rules to {}",
        dataset.elections.len(),
        dataset.meta.len(),
        dataset.manifest.rules().len(),
        out.display()
    );
    println!("ground truth (first three states):");
    for (state, truth) in dataset.truth.iter().take(3) {
        println!(
            "  {state}: alpha = {:+.3}, beta = {:+.3}, gamma = {:+.4}, sigma = {:.3}",
            truth.alpha, truth.beta, truth.gamma, truth.sigma
        );
    }
    Ok(())
}
