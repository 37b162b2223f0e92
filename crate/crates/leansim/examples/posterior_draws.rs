//! Samples the conjugate posterior for one state and summarizes the draws.
//!
//! ```text
//! cargo run --release --example posterior_draws [STATE] [DRAWS]
//! ```
//!
//! Because the coefficient covariance uses the freshly drawn sigma², the
//! coefficient marginals are Student-t with n-3 degrees of freedom: slightly
//! heavier-tailed than a normal, which the sample kurtosis shows.

use leansim::bayes::sample_posterior;
use leansim::data::Dataset;
use leansim::regression::fit_all;
use leansim::rng::RngStream;
use std::path::PathBuf;

fn summarize(name: &str, draws: &[f64]) {
    let n = draws.len() as f64;
    let mean = draws.iter().sum::<f64>() / n;
    let m2 = draws.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / n;
    let m4 = draws.iter().map(|d| (d - mean).powi(4)).sum::<f64>() / n;
    let mut sorted = draws.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let q = |p: f64| sorted[((p * n) as usize).min(sorted.len() - 1)];
    println!(
        "  {name:<7} mean {mean:+.4}  sd {:.4}  excess kurtosis {:+.2}  90% CI [{:+.4}, {:+.4}]",
        m2.sqrt(),
        m4 / (m2 * m2) - 3.0,
        q(0.05),
        q(0.95)
    );
}

fn main() -> leansim::Result<()> {
    let mut args = std::env::args().skip(1);
    let state: leansim::data::StateCode = args.next().unwrap_or_else(|| "NV".into()).parse()?;
    let count: usize = args
        .next()
        .map(|s| s.parse().expect("draw count must be an integer"))
        .unwrap_or(100_000);

    let dir = PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data/demo"));
    let dataset = Dataset::load(
        &dir.join("elections.csv"),
        &dir.join("state_meta.csv"),
        Some(&dir.join("overrides.csv")),
    )?;
    let fits = fit_all(&dataset.observations, &dataset.national)?;
    let fit = fits
        .get(&state)
        .ok_or_else(|| leansim::Error::Data(format!("no fit for state {state}")))?;

    println!(
        "{state}: point estimates alpha = {:+.4}, beta = {:+.4}, gamma = {:+.4}, sigma2 = {:.5} (n = {})",
        fit.alpha(),
        fit.beta(),
        fit.gamma(),
        fit.sigma2,
        fit.n
    );

    let mut rng = RngStream::new(42, 0);
    let mut alpha = Vec::with_capacity(count);
    let mut beta = Vec::with_capacity(count);
    let mut gamma = Vec::with_capacity(count);
    let mut sigma2 = Vec::with_capacity(count);
    for _ in 0..count {
        let d = sample_posterior(fit, &mut rng)?;
        alpha.push(d.alpha);
        beta.push(d.beta);
        gamma.push(d.gamma);
        sigma2.push(d.sigma2);
    }
    println!("{count} posterior draws:");
    summarize("alpha", &alpha);
    summarize("beta", &beta);
    summarize("gamma", &gamma);
    summarize("sigma2", &sigma2);
    println!(
        "  sigma2 posterior mean should approach sigma2_hat*(n-3)/(n-5) = {:.5}",
        fit.sigma2 * (fit.n as f64 - 3.0) / (fit.n as f64 - 5.0)
    );
    Ok(())
}
