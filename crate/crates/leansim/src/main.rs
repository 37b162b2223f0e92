//! Command-line front end: `fit`, `simulate`, and `report` subcommands over
//! the ingestion → regression → posterior → simulation pipeline.
//!
//! Exit codes: 0 on success, 1 on computation errors, 2 on usage or data
//! errors.

use clap::{Args, Parser, Subcommand};
use leansim::bayes::sample_posterior_batch;
use leansim::data::Dataset;
use leansim::regression::{
    diagnose, fit_all, fit_separate_model, write_regression_results_csv, StateFit,
};
use leansim::report::render_report;
use leansim::simulate::{
    backtest, bias_check, importance, simulate_ec, state_reports, write_ec_histogram_csv,
    write_histogram_svg, write_importance_csv, write_state_prob_csv, BacktestPv, BiasDirection,
    EcSimulation, Scenario, SimOptions,
};
use leansim::data::{per_race_observations, StateCode};
use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "leansim",
    version,
    about = "State partisan-lean regression and Electoral College simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the 50 per-state regressions and write regressionResults.csv.
    Fit(FitArgs),
    /// Simulate Electoral College outcomes under popular-vote scenarios.
    Simulate(SimulateArgs),
    /// Write a plain-text summary report.
    Report(ReportArgs),
}

#[derive(Args)]
struct DataArgs {
    /// Election results CSV (state,year,race,dem,rep,unit).
    #[arg(long, value_name = "PATH")]
    elections: PathBuf,
    /// State metadata CSV (state,ec_votes,pop1990,pop2000,pop2010,cook_pvi).
    #[arg(long, value_name = "PATH")]
    meta: PathBuf,
    /// Override manifest CSV (state,year,race,action,dem,rep,reason).
    #[arg(long, value_name = "PATH")]
    overrides: Option<PathBuf>,
    /// Output directory.
    #[arg(long, value_name = "DIR", env = "LEANSIM_OUT", default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct FitArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Also fit the un-aggregated per-race model and report its
    /// Shapiro-Wilk failure count.
    #[arg(long)]
    separate_model: bool,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Scenario names: even, pv2016, pv2008, pv2004, actual, or custom
    /// (repeatable). Defaults to the four presets.
    #[arg(long = "scenario", value_name = "NAME")]
    scenarios: Vec<String>,
    /// Democratic share for the custom scenario.
    #[arg(long, value_name = "PCT")]
    dem: Option<f64>,
    /// Republican share for the custom scenario.
    #[arg(long, value_name = "PCT")]
    rep: Option<f64>,
    /// Election year the scenarios apply to.
    #[arg(long, value_name = "YYYY", default_value_t = 2020)]
    year: u16,
    /// Monte Carlo replications per scenario.
    #[arg(long, value_name = "N", default_value_t = 10_000)]
    sims: u64,
    /// Random seed.
    #[arg(long, value_name = "S", default_value_t = 0)]
    seed: u64,
    /// Normal multiplier for the bias-check interval.
    #[arg(long, value_name = "Z", default_value_t = 1.96)]
    z: f64,
    /// Dump every posterior draw to posteriorDraws.csv.
    #[arg(long)]
    dump_draws: bool,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Election year the scenario rankings apply to.
    #[arg(long, value_name = "YYYY", default_value_t = 2020)]
    year: u16,
    /// Random seed (reserved; the report itself is deterministic).
    #[arg(long, value_name = "S", default_value_t = 0)]
    seed: u64,
}

enum CliError {
    Usage(String),
    Lib(leansim::Error),
}

impl From<leansim::Error> for CliError {
    fn from(e: leansim::Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Fit(args) => cmd_fit(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Report(args) => cmd_report(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            if e.is_data_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn load_and_fit(data: &DataArgs) -> CliResult<(Dataset, BTreeMap<StateCode, StateFit>)> {
    let dataset = Dataset::load(&data.elections, &data.meta, data.overrides.as_deref())?;
    for entry in &dataset.override_log {
        let rule = &entry.rule;
        if entry.matched {
            eprintln!(
                "override applied: {} {} {} ({})",
                rule.state, rule.year, rule.race, rule.reason
            );
        } else {
            eprintln!(
                "warning: override rule {} {} {} matched no record",
                rule.state, rule.year, rule.race
            );
        }
    }
    let fits = fit_all(&dataset.observations, &dataset.national)?;
    Ok((dataset, fits))
}

fn out_file(dir: &Path, name: &str) -> CliResult<BufWriter<File>> {
    std::fs::create_dir_all(dir).map_err(leansim::Error::from)?;
    Ok(BufWriter::new(
        File::create(dir.join(name)).map_err(leansim::Error::from)?,
    ))
}

fn cmd_fit(args: FitArgs) -> CliResult<()> {
    let (dataset, fits) = load_and_fit(&args.data)?;
    write_regression_results_csv(&fits, out_file(&args.data.out, "regressionResults.csv")?)?;

    let diag = diagnose(&fits)?;
    let reddest = fits
        .values()
        .min_by(|a, b| a.alpha().partial_cmp(&b.alpha()).unwrap())
        .expect("at least one fit");
    let bluest = fits
        .values()
        .max_by(|a, b| a.alpha().partial_cmp(&b.alpha()).unwrap())
        .expect("at least one fit");
    println!(
        "fitted {} states on {} observations; wrote {}",
        fits.len(),
        dataset.observations.len(),
        args.data.out.join("regressionResults.csv").display()
    );
    println!(
        "reddest: {} (alpha = {:.3}); bluest: {} (alpha = {:.3})",
        reddest.state,
        reddest.alpha(),
        bluest.state,
        bluest.alpha()
    );
    println!(
        "residual diagnostics: SW-uniformity p = {:.4}; states with SW p < 5%: {}; pooled SW p = {:.4}",
        diag.uniformity_pvalue, diag.count_below_0_05, diag.pooled_sw_pvalue
    );
    if args.separate_model {
        let race_obs = per_race_observations(&dataset.records)?;
        let separate = fit_separate_model(&race_obs)?;
        println!(
            "separate (per-race) model: {} of {} states fail Shapiro-Wilk at 5%",
            separate.count_below_0_05,
            separate.fits.len()
        );
    }
    Ok(())
}

/// Resolves a scenario name to a simulation, so `actual` can reach the
/// dataset's national records.
fn run_scenario(
    name: &str,
    args: &SimulateArgs,
    fits: &BTreeMap<StateCode, StateFit>,
    dataset: &Dataset,
    opts: &SimOptions,
) -> CliResult<EcSimulation> {
    match name {
        "custom" => {
            let (dem, rep) = match (args.dem, args.rep) {
                (Some(d), Some(r)) => (d, r),
                _ => {
                    return Err(CliError::Usage(
                        "--scenario custom requires --dem and --rep".into(),
                    ))
                }
            };
            let label = format!("custom_{dem}_{rep}_{}", args.year);
            let scenario = Scenario::new(label, args.year, dem, rep)?;
            Ok(simulate_ec(fits, &dataset.meta, &scenario, opts)?)
        }
        "actual" => Ok(backtest(fits, dataset, args.year, BacktestPv::Actual, opts)?),
        preset => {
            let scenario = Scenario::preset(preset, args.year)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(simulate_ec(fits, &dataset.meta, &scenario, opts)?)
        }
    }
}

fn cmd_simulate(args: SimulateArgs) -> CliResult<()> {
    if args.sims == 0 {
        return Err(CliError::Usage("--sims must be at least 1".into()));
    }
    if (args.dem.is_some() || args.rep.is_some())
        && !args.scenarios.iter().any(|s| s == "custom")
        && !args.scenarios.is_empty()
    {
        return Err(CliError::Usage(
            "--dem/--rep only apply to --scenario custom".into(),
        ));
    }
    let names: Vec<String> = if !args.scenarios.is_empty() {
        args.scenarios.clone()
    } else if args.dem.is_some() || args.rep.is_some() {
        vec!["custom".to_string()]
    } else {
        Scenario::PRESETS.iter().map(|s| s.to_string()).collect()
    };

    let (dataset, fits) = load_and_fit(&args.data)?;
    let opts = SimOptions::new(args.sims, args.seed);

    let mut prob_rows = Vec::new();
    let mut importance_rows = Vec::new();
    let mut histogram_rows = Vec::new();
    for name in &names {
        let sim = run_scenario(name, &args, &fits, &dataset, &opts)?;
        let label = sim.scenario.label.clone();
        let ranking = importance(&fits, &sim.scenario, &dataset.meta)?;
        let reports = state_reports(&sim, &ranking);

        print!(
            "scenario {label}: Democratic EC win probability = {:.4} ({} sims, seed {})",
            sim.distribution.dem_win_probability, args.sims, args.seed
        );
        if (sim.scenario.dem_share - sim.scenario.rep_share).abs() < f64::EPSILON {
            let p = sim.distribution.dem_win_probability;
            let check = bias_check(p, args.sims, args.z);
            let verdict = match check.direction {
                Some(BiasDirection::Republicans) => "biased toward Republicans",
                Some(BiasDirection::Democrats) => "biased toward Democrats",
                None => "no significant bias",
            };
            print!(
                "; bias check at z = {}: {verdict} (interval {:.4}..{:.4})",
                args.z, check.interval.0, check.interval.1
            );
            // The narrower z = 1.28 band is reported alongside for
            // comparison with analyses that use it.
            let alt = bias_check(p, args.sims, 1.28);
            print!(
                "; z = 1.28 interval {:.4}..{:.4}",
                alt.interval.0, alt.interval.1
            );
        }
        println!();

        let svg_name = format!("ecHistogram_{label}.svg");
        write_histogram_svg(
            &sim.distribution,
            &format!(
                "{label}: Democratic EC votes, P(win) = {:.1}%",
                100.0 * sim.distribution.dem_win_probability
            ),
            out_file(&args.data.out, &svg_name)?,
        )?;
        prob_rows.push((label.clone(), reports));
        importance_rows.push((label.clone(), ranking));
        histogram_rows.push((label, sim.distribution));
    }

    write_state_prob_csv(&prob_rows, out_file(&args.data.out, "stateProb.csv")?)?;
    write_importance_csv(&importance_rows, out_file(&args.data.out, "importance.csv")?)?;
    write_ec_histogram_csv(&histogram_rows, out_file(&args.data.out, "ecHistogram.csv")?)?;

    if args.dump_draws {
        let draws = sample_posterior_batch(&fits, args.seed, args.sims)?;
        leansim::bayes::write_draws_csv(&draws, out_file(&args.data.out, "posteriorDraws.csv")?)?;
    }
    Ok(())
}

fn cmd_report(args: ReportArgs) -> CliResult<()> {
    let (dataset, fits) = load_and_fit(&args.data)?;
    let scenarios: Vec<Scenario> = Scenario::PRESETS
        .iter()
        .map(|name| Scenario::preset(name, args.year))
        .collect::<leansim::Result<_>>()?;
    let text = render_report(&dataset, &fits, &scenarios)?;
    std::fs::create_dir_all(&args.data.out).map_err(leansim::Error::from)?;
    std::fs::write(args.data.out.join("report.txt"), &text).map_err(leansim::Error::from)?;
    print!("{text}");
    Ok(())
}
