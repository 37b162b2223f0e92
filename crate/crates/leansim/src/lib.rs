//! # leansim
//!
//! Models each US state's partisan lean with per-state Bayesian linear
//! regression on historical federal election log vote ratios, then
//! Monte Carlo-simulates Electoral College outcomes under hypothetical
//! national popular-vote scenarios.
//!
//! For every state the log vote ratio `y = ln(dem/rep)`, averaged over that
//! state's races in a year, is regressed on the national log ratio and the
//! year index:
//!
//! ```text
//! y_st = alpha_s + beta_s * x_t + gamma_s * t + sigma_s * eps
//! ```
//!
//! `alpha` is the state's current lean, `beta` its sensitivity to the
//! national environment, and `gamma` its drift per two-year cycle. Under the
//! non-informative prior 1/sigma² the posterior is available in closed form
//! (scaled inverse chi-squared for sigma², trivariate normal for the
//! coefficients), and the Electoral College simulation refreshes a joint
//! posterior draw for every state in every replication.
//!
//! ## Module map
//!
//! - [`stats`] — normal CDF/density/quantile, deterministic samplers, 3x3
//!   linear algebra and OLS, Shapiro-Wilk and chi-squared uniformity tests.
//! - [`data`] — CSV ingestion, the override manifest for special elections,
//!   state-year aggregation, and the national lean series.
//! - [`regression`] — the 50 per-state fits, residual diagnostics, size
//!   effect, and Cook PVI comparison.
//! - [`bayes`] — conjugate posterior sampling.
//! - [`simulate`] — scenario win probabilities, the EC vote distribution,
//!   five-tier classification, importance coefficients, and the bias check.
//! - [`synth`] — a synthetic full-size dataset generator backing the bundled
//!   demo data.
//! - [`report`] — the plain-text summary report.
//!
//! ## Examples
//!
//! Each major capability has a runnable example against the bundled demo
//! dataset (`data/demo/`, regenerable with the `synthesize_dataset`
//! example):
//!
//! ```text
//! cargo run --release --example fit_states            # per-state estimates
//! cargo run --release --example diagnostics           # residual normality checks
//! cargo run --release --example posterior_draws       # conjugate posterior sampling
//! cargo run --release --example simulate_election     # scenario win probabilities + SVG
//! cargo run --release --example backtest              # 2012/2016 re-simulations
//! cargo run --release --example importance_ranking    # pivotal-state coefficients
//! cargo run --release --example state_classification  # five-tier map data
//! cargo run --release --example synthesize_dataset    # regenerate the demo CSVs
//! ```
//!
//! The `leansim` binary wraps the same pipeline behind `fit`, `simulate`,
//! and `report` subcommands.

pub mod bayes;
pub mod data;
pub mod error;
pub mod regression;
pub mod report;
pub mod rng;
pub mod simulate;
pub mod stats;
pub mod synth;

pub use error::{Error, Result};
pub use rng::RngStream;
