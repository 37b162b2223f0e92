//! Scenario-driven Electoral College Monte Carlo: per-state win
//! probabilities, the distribution of Democratic EC votes, five-tier state
//! classification, importance coefficients, and the bias significance check.

use crate::data::{year_to_t, Dataset, StateCode, StateMeta};
use crate::error::{Error, Result};
use crate::regression::StateFit;
use crate::rng::{cell_stream, RngStream};
use crate::stats::{binomial_interval, normal_density_scaled, std_normal_cdf};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::io::Write;

/// DC's Electoral College votes, assigned to Democrats as a constant.
pub const DC_EC_VOTES: u32 = 3;
/// Size of the Electoral College.
pub const EC_TOTAL: u32 = 538;
/// Democrats win a replication with strictly more than this many votes.
pub const WIN_THRESHOLD: u32 = 269;

/// A national popular-vote hypothesis: a year index and the two major-party
/// shares (percent or fraction; only their ratio matters).
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub label: String,
    /// Year index: 0 for 2020, -2 for 2016, -4 for 2012.
    pub t: i32,
    pub dem_share: f64,
    pub rep_share: f64,
}

impl Scenario {
    /// Builds a scenario for an even year 1992 or later.
    pub fn new(label: impl Into<String>, year: u16, dem_share: f64, rep_share: f64) -> Result<Self> {
        Self::with_t(label, year_to_t(year)?, dem_share, rep_share)
    }

    /// Builds a scenario directly from a year index.
    pub fn with_t(label: impl Into<String>, t: i32, dem_share: f64, rep_share: f64) -> Result<Self> {
        if !dem_share.is_finite() || !rep_share.is_finite() || dem_share <= 0.0 || rep_share <= 0.0 {
            return Err(Error::Domain(format!(
                "scenario shares must be positive, got dem={dem_share}, rep={rep_share}"
            )));
        }
        let scenario = Scenario {
            label: label.into(),
            t,
            dem_share,
            rep_share,
        };
        if !scenario.x().is_finite() {
            return Err(Error::Domain("scenario log ratio is not finite".into()));
        }
        Ok(scenario)
    }

    /// National lean implied by the shares: ln(dem/rep).
    pub fn x(&self) -> f64 {
        (self.dem_share / self.rep_share).ln()
    }

    /// Built-in popular-vote presets.
    pub const PRESETS: [&'static str; 4] = ["even", "pv2016", "pv2008", "pv2004"];

    /// A named preset evaluated at `year`: `even` (50/50), `pv2016`
    /// (48.2/46.1), `pv2008` (52.9/45.7), or `pv2004` (48.3/50.7).
    pub fn preset(name: &str, year: u16) -> Result<Self> {
        let (dem, rep) = match name {
            "even" => (50.0, 50.0),
            "pv2016" => (48.2, 46.1),
            "pv2008" => (52.9, 45.7),
            "pv2004" => (48.3, 50.7),
            other => {
                return Err(Error::Domain(format!(
                    "unknown scenario preset {other:?}; expected one of {:?} or custom",
                    Self::PRESETS
                )))
            }
        };
        Scenario::new(format!("{name}_{year}"), year, dem, rep)
    }
}

/// Point parameters for one state, either estimates or a posterior draw.
#[derive(Debug, Clone, Copy)]
pub struct StateParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub sigma: f64,
}

impl StateParams {
    pub fn from_fit(fit: &StateFit) -> Self {
        StateParams {
            alpha: fit.alpha(),
            beta: fit.beta(),
            gamma: fit.gamma(),
            sigma: fit.sigma(),
        }
    }

    pub fn from_draw(draw: &crate::bayes::PosteriorDraw) -> Self {
        StateParams {
            alpha: draw.alpha,
            beta: draw.beta,
            gamma: draw.gamma,
            sigma: draw.sigma(),
        }
    }

    /// alpha + beta·x + gamma·T for the scenario.
    pub fn center(&self, scenario: &Scenario) -> f64 {
        self.alpha + self.beta * scenario.x() + self.gamma * scenario.t as f64
    }
}

/// Probability that Democrats carry a state with the given parameters:
/// Φ((alpha + beta·x + gamma·T) / sigma).
pub fn analytic_win_prob(params: &StateParams, scenario: &Scenario) -> Result<f64> {
    if !params.sigma.is_finite() || params.sigma <= 0.0 {
        return Err(Error::Domain(format!(
            "win probability requires sigma > 0, got {}",
            params.sigma
        )));
    }
    Ok(std_normal_cdf(params.center(scenario) / params.sigma))
}

/// How state parameters are chosen each replication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParamMode {
    /// Fresh joint posterior draw per state per replication.
    #[default]
    PosteriorDraws,
    /// Point estimates held fixed across replications.
    PointEstimates,
}

/// Monte Carlo run settings.
#[derive(Debug, Clone, Copy)]
pub struct SimOptions {
    pub replications: u64,
    pub seed: u64,
    pub mode: ParamMode,
}

impl SimOptions {
    pub fn new(replications: u64, seed: u64) -> Self {
        SimOptions {
            replications,
            seed,
            mode: ParamMode::PosteriorDraws,
        }
    }
}

/// Histogram of Democratic EC votes over the replications.
#[derive(Debug, Clone, PartialEq)]
pub struct EcDistribution {
    /// Count per possible Democratic EC total, indices 0..=538.
    pub histogram: Vec<u64>,
    pub replications: u64,
    /// Fraction of replications with more than 269 Democratic votes.
    pub dem_win_probability: f64,
    pub seed: u64,
}

impl EcDistribution {
    /// Mean Democratic EC votes.
    pub fn mean(&self) -> f64 {
        let total: u128 = self
            .histogram
            .iter()
            .enumerate()
            .map(|(votes, &count)| votes as u128 * count as u128)
            .sum();
        total as f64 / self.replications as f64
    }
}

/// Full output of one scenario simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct EcSimulation {
    pub scenario: Scenario,
    pub distribution: EcDistribution,
    /// Fraction of replications each state went Democratic.
    pub state_win_frequency: BTreeMap<StateCode, f64>,
    /// Mean analytic win probability per state across replications.
    pub mean_analytic_prob: BTreeMap<StateCode, f64>,
}

struct PreparedState {
    state: StateCode,
    ordinal: usize,
    ec_votes: u32,
    fit: StateFit,
    point: StateParams,
}

/// Replications are processed in fixed chunks so that partial sums can be
/// merged in chunk order: results are byte-identical for any worker count.
const REPLICATION_CHUNK: u64 = 1024;

struct ChunkAccumulator {
    histogram: Vec<u64>,
    win_counts: Vec<u64>,
    prob_sums: Vec<f64>,
}

impl ChunkAccumulator {
    fn new(n_states: usize) -> Self {
        ChunkAccumulator {
            histogram: vec![0; EC_TOTAL as usize + 1],
            win_counts: vec![0; n_states],
            prob_sums: vec![0.0; n_states],
        }
    }

    fn merge(&mut self, other: &ChunkAccumulator) {
        for (a, b) in self.histogram.iter_mut().zip(&other.histogram) {
            *a += b;
        }
        for (a, b) in self.win_counts.iter_mut().zip(&other.win_counts) {
            *a += b;
        }
        for (a, b) in self.prob_sums.iter_mut().zip(&other.prob_sums) {
            *a += b;
        }
    }
}

fn prepare_states(
    fits: &BTreeMap<StateCode, StateFit>,
    meta: &[StateMeta],
) -> Result<Vec<PreparedState>> {
    let meta_by_state: BTreeMap<StateCode, &StateMeta> =
        meta.iter().map(|m| (m.state, m)).collect();
    let mut prepared = Vec::with_capacity(50);
    for state in StateCode::all_states() {
        let fit = fits.get(&state).ok_or_else(|| {
            Error::data(format!("simulation requires a fit for every state; {state} missing"))
        })?;
        let m = meta_by_state.get(&state).ok_or_else(|| {
            Error::data(format!("simulation requires metadata for every state; {state} missing"))
        })?;
        prepared.push(PreparedState {
            state,
            ordinal: state.ordinal().expect("modeled states have ordinals"),
            ec_votes: m.ec_votes,
            fit: fit.clone(),
            point: StateParams::from_fit(fit),
        });
    }
    Ok(prepared)
}

/// Simulates the Electoral College under a scenario.
///
/// Each replication draws fresh posterior parameters per state (in the
/// default mode), computes the analytic win probability, and flips one
/// Bernoulli coin per state; Democratic EC votes are summed and DC's 3 votes
/// added. Each (replication, state) cell owns its random stream, so results
/// do not depend on thread count.
pub fn simulate_ec(
    fits: &BTreeMap<StateCode, StateFit>,
    meta: &[StateMeta],
    scenario: &Scenario,
    opts: &SimOptions,
) -> Result<EcSimulation> {
    if opts.replications == 0 {
        return Err(Error::Domain("simulation needs at least 1 replication".into()));
    }
    let states = prepare_states(fits, meta)?;
    let n = opts.replications;
    let chunks = n.div_ceil(REPLICATION_CHUNK);

    let partials: Vec<Result<ChunkAccumulator>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * REPLICATION_CHUNK;
            let hi = (lo + REPLICATION_CHUNK).min(n);
            let mut acc = ChunkAccumulator::new(states.len());
            for rep in lo..hi {
                let mut total = DC_EC_VOTES;
                for (i, st) in states.iter().enumerate() {
                    let mut rng = RngStream::new(opts.seed, cell_stream(rep, st.ordinal));
                    let params = match opts.mode {
                        ParamMode::PosteriorDraws => {
                            let draw =
                                crate::bayes::sample_posterior(&st.fit, &mut rng).map_err(
                                    |e| Error::Fit {
                                        state: st.state.to_string(),
                                        source: Box::new(e),
                                    },
                                )?;
                            StateParams::from_draw(&draw)
                        }
                        ParamMode::PointEstimates => st.point,
                    };
                    let p = analytic_win_prob(&params, scenario)?;
                    acc.prob_sums[i] += p;
                    if rng.uniform() < p {
                        acc.win_counts[i] += 1;
                        total += st.ec_votes;
                    }
                }
                acc.histogram[total as usize] += 1;
            }
            Ok(acc)
        })
        .collect();

    let mut merged = ChunkAccumulator::new(states.len());
    for partial in partials {
        merged.merge(&partial?);
    }

    let wins: u64 = merged
        .histogram
        .iter()
        .enumerate()
        .filter(|(votes, _)| *votes > WIN_THRESHOLD as usize)
        .map(|(_, &count)| count)
        .sum();
    let distribution = EcDistribution {
        histogram: merged.histogram,
        replications: n,
        dem_win_probability: wins as f64 / n as f64,
        seed: opts.seed,
    };
    let state_win_frequency = states
        .iter()
        .enumerate()
        .map(|(i, st)| (st.state, merged.win_counts[i] as f64 / n as f64))
        .collect();
    let mean_analytic_prob = states
        .iter()
        .enumerate()
        .map(|(i, st)| (st.state, merged.prob_sums[i] / n as f64))
        .collect();
    Ok(EcSimulation {
        scenario: scenario.clone(),
        distribution,
        state_win_frequency,
        mean_analytic_prob,
    })
}

/// Popular-vote choice for a backtest year.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BacktestPv {
    /// Even 50/50 national vote.
    Even,
    /// The year's actual shares, read from the dataset's national
    /// presidential record.
    Actual,
}

/// Re-simulates a past presidential election year with even or actual PV,
/// using fits trained on the full dataset.
pub fn backtest(
    fits: &BTreeMap<StateCode, StateFit>,
    dataset: &Dataset,
    year: u16,
    pv: BacktestPv,
    opts: &SimOptions,
) -> Result<EcSimulation> {
    let scenario = match pv {
        BacktestPv::Even => Scenario::preset("even", year)?,
        BacktestPv::Actual => {
            let (dem, rep) = dataset.presidential_shares(year)?;
            Scenario::new(format!("actual_{year}"), year, dem, rep)?
        }
    };
    simulate_ec(fits, &dataset.meta, &scenario, opts)
}

/// Five-tier classification of a state's Democratic win probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    SolidD,
    LeanD,
    Swing,
    LeanR,
    SolidR,
}

impl std::fmt::Display for Tier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Tier::SolidD => "SolidD",
            Tier::LeanD => "LeanD",
            Tier::Swing => "Swing",
            Tier::LeanR => "LeanR",
            Tier::SolidR => "SolidR",
        })
    }
}

/// Maps a win probability to its tier. Boundary probabilities fold toward
/// the center: 0.9 is LeanD, 0.7 and 0.3 are Swing, 0.1 is LeanR.
pub fn classify(win_prob: f64) -> Tier {
    if win_prob > 0.9 {
        Tier::SolidD
    } else if win_prob > 0.7 {
        Tier::LeanD
    } else if win_prob >= 0.3 {
        Tier::Swing
    } else if win_prob >= 0.1 {
        Tier::LeanR
    } else {
        Tier::SolidR
    }
}

/// Per-state scenario summary.
#[derive(Debug, Clone)]
pub struct StateReport {
    pub state: StateCode,
    pub win_prob: f64,
    pub tier: Tier,
    /// Expected EC-vote gain per unit increase of the state's lean.
    pub importance: f64,
}

/// Importance coefficient per state at the point estimates:
/// I = φ(alpha + beta·x + gamma·T, sigma) · EC votes, sorted descending.
pub fn importance(
    fits: &BTreeMap<StateCode, StateFit>,
    scenario: &Scenario,
    meta: &[StateMeta],
) -> Result<Vec<(StateCode, f64)>> {
    let mut out = Vec::with_capacity(meta.len());
    for m in meta {
        let fit = fits.get(&m.state).ok_or_else(|| {
            Error::data(format!("no fit for state {} in importance input", m.state))
        })?;
        let params = StateParams::from_fit(fit);
        let density = normal_density_scaled(params.center(scenario), params.sigma)?;
        out.push((m.state, density * m.ec_votes as f64));
    }
    out.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    Ok(out)
}

/// Assembles per-state reports from a simulation and an importance ranking.
pub fn state_reports(sim: &EcSimulation, ranking: &[(StateCode, f64)]) -> Vec<StateReport> {
    let by_state: BTreeMap<StateCode, f64> = ranking.iter().copied().collect();
    sim.state_win_frequency
        .iter()
        .map(|(&state, &win_prob)| StateReport {
            state,
            win_prob,
            tier: classify(win_prob),
            importance: by_state.get(&state).copied().unwrap_or(0.0),
        })
        .collect()
}

/// Direction of a detected Electoral College bias.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiasDirection {
    Democrats,
    Republicans,
}

/// Outcome of the even-PV bias significance check.
#[derive(Debug, Clone, Copy)]
pub struct BiasCheck {
    /// Acceptance interval around 0.5 for an unbiased EC.
    pub interval: (f64, f64),
    pub biased: bool,
    /// The advantaged party, when biased.
    pub direction: Option<BiasDirection>,
}

/// Tests whether an even-PV Democratic win probability estimated from `n`
/// replications deviates significantly from 50%, at multiplier `z`.
pub fn bias_check(dem_win_probability: f64, n: u64, z: f64) -> BiasCheck {
    let interval = binomial_interval(0.5, n, z);
    let direction = if dem_win_probability < interval.0 {
        Some(BiasDirection::Republicans)
    } else if dem_win_probability > interval.1 {
        Some(BiasDirection::Democrats)
    } else {
        None
    };
    BiasCheck {
        interval,
        biased: direction.is_some(),
        direction,
    }
}

/// Writes `stateProb.csv`: `state,scenario,win_prob,tier` for every
/// (state, scenario) pair.
pub fn write_state_prob_csv(
    per_scenario: &[(String, Vec<StateReport>)],
    mut out: impl Write,
) -> Result<()> {
    writeln!(out, "state,scenario,win_prob,tier")?;
    for (label, reports) in per_scenario {
        for report in reports {
            writeln!(
                out,
                "{},{label},{:.6},{}",
                report.state, report.win_prob, report.tier
            )?;
        }
    }
    Ok(())
}

/// Writes `importance.csv`: `state,scenario,importance,rank`, most important
/// first within each scenario.
pub fn write_importance_csv(
    per_scenario: &[(String, Vec<(StateCode, f64)>)],
    mut out: impl Write,
) -> Result<()> {
    writeln!(out, "state,scenario,importance,rank")?;
    for (label, ranking) in per_scenario {
        for (rank, (state, value)) in ranking.iter().enumerate() {
            writeln!(out, "{state},{label},{value:.6},{}", rank + 1)?;
        }
    }
    Ok(())
}

/// Writes `ecHistogram.csv`: `scenario,dem_ec_votes,count` over the full
/// 0..=538 range.
pub fn write_ec_histogram_csv(
    per_scenario: &[(String, EcDistribution)],
    mut out: impl Write,
) -> Result<()> {
    writeln!(out, "scenario,dem_ec_votes,count")?;
    for (label, dist) in per_scenario {
        for (votes, count) in dist.histogram.iter().enumerate() {
            writeln!(out, "{label},{votes},{count}")?;
        }
    }
    Ok(())
}

/// Renders the EC-vote histogram as a bar-chart SVG with a red vertical line
/// at the 269-vote winning threshold.
pub fn write_histogram_svg(
    dist: &EcDistribution,
    title: &str,
    mut out: impl Write,
) -> Result<()> {
    const W: f64 = 860.0;
    const H: f64 = 420.0;
    const MARGIN_L: f64 = 50.0;
    const MARGIN_R: f64 = 20.0;
    const MARGIN_T: f64 = 40.0;
    const MARGIN_B: f64 = 40.0;

    let first = dist.histogram.iter().position(|&c| c > 0).unwrap_or(0);
    let last = dist
        .histogram
        .iter()
        .rposition(|&c| c > 0)
        .unwrap_or(EC_TOTAL as usize);
    // Pad the plotted range and always include the threshold.
    let lo = first.saturating_sub(5).min(WIN_THRESHOLD as usize - 10);
    let hi = (last + 5).max(WIN_THRESHOLD as usize + 10).min(EC_TOTAL as usize);
    let max_count = dist.histogram.iter().copied().max().unwrap_or(1).max(1);

    let plot_w = W - MARGIN_L - MARGIN_R;
    let plot_h = H - MARGIN_T - MARGIN_B;
    let bins = (hi - lo + 1) as f64;
    let bar_w = plot_w / bins;
    let x_of = |votes: f64| MARGIN_L + (votes - lo as f64) / bins * plot_w;

    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    )?;
    writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#)?;
    writeln!(
        out,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        W / 2.0,
        svg_escape(title)
    )?;
    for (votes, &count) in dist.histogram.iter().enumerate().take(hi + 1).skip(lo) {
        if count == 0 {
            continue;
        }
        let bar_h = count as f64 / max_count as f64 * plot_h;
        writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="steelblue"/>"#,
            x_of(votes as f64),
            MARGIN_T + plot_h - bar_h,
            bar_w.max(1.0),
            bar_h
        )?;
    }
    // Winning threshold: strictly more than 269 votes.
    let x269 = x_of(WIN_THRESHOLD as f64 + 0.5);
    writeln!(
        out,
        r#"<line x1="{x269:.2}" y1="{MARGIN_T}" x2="{x269:.2}" y2="{:.2}" stroke="red" stroke-width="2"/>"#,
        MARGIN_T + plot_h
    )?;
    writeln!(
        out,
        r#"<text x="{x269:.2}" y="{:.2}" font-family="sans-serif" font-size="12" fill="red" text-anchor="middle">269</text>"#,
        MARGIN_T + plot_h + 16.0
    )?;
    writeln!(
        out,
        r#"<line x1="{MARGIN_L}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
        MARGIN_T + plot_h,
        W - MARGIN_R,
        MARGIN_T + plot_h
    )?;
    for votes in (0..=EC_TOTAL as usize).step_by(100) {
        if votes < lo || votes > hi {
            continue;
        }
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{votes}</text>"#,
            x_of(votes as f64),
            MARGIN_T + plot_h + 16.0
        )?;
    }
    writeln!(out, "</svg>")?;
    Ok(())
}

fn svg_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
