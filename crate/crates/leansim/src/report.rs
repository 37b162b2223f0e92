//! Plain-text summary report: per-state superlatives, the size effect, the
//! Cook PVI comparison, and the top importance ranking per scenario.

use crate::data::Dataset;
use crate::error::Result;
use crate::regression::{diagnose, pvi_comparison, size_effect, StateFit};
use crate::simulate::{importance, Scenario};
use crate::data::StateCode;
use std::collections::BTreeMap;
use std::fmt::Write;

fn extremum(
    fits: &BTreeMap<StateCode, StateFit>,
    key: impl Fn(&StateFit) -> f64,
    take_max: bool,
) -> (&StateFit, f64) {
    let fit = fits
        .values()
        .max_by(|a, b| {
            let (ka, kb) = (key(a), key(b));
            if take_max {
                ka.partial_cmp(&kb).unwrap()
            } else {
                kb.partial_cmp(&ka).unwrap()
            }
        })
        .expect("at least one fit");
    (fit, key(fit))
}

/// Renders the full text report. Deterministic for a given dataset.
pub fn render_report(
    dataset: &Dataset,
    fits: &BTreeMap<StateCode, StateFit>,
    scenarios: &[Scenario],
) -> Result<String> {
    let mut out = String::new();
    let w = &mut out;
    let diag = diagnose(fits)?;

    writeln!(w, "Partisan lean report").unwrap();
    writeln!(w, "====================").unwrap();
    writeln!(
        w,
        "dataset: {} records after overrides, {} state-year observations, {} states fitted",
        dataset.records.len(),
        dataset.observations.len(),
        fits.len()
    )
    .unwrap();
    writeln!(
        w,
        "diagnostics: SW-uniformity p = {:.4}, states with SW p < 5%: {}, pooled-residual SW p = {:.4}",
        diag.uniformity_pvalue, diag.count_below_0_05, diag.pooled_sw_pvalue
    )
    .unwrap();
    writeln!(w).unwrap();

    writeln!(w, "State superlatives (lean index alpha at t = 0)").unwrap();
    let (f, v) = extremum(fits, |f| f.alpha(), false);
    writeln!(w, "  reddest:               {} (alpha = {v:.3})", f.state).unwrap();
    let (f, v) = extremum(fits, |f| f.alpha(), true);
    writeln!(w, "  bluest:                {} (alpha = {v:.3})", f.state).unwrap();
    let (f, _) = extremum(fits, |f| f.alpha().abs(), false);
    writeln!(
        w,
        "  most neutral:          {} (alpha = {:.4})",
        f.state,
        f.alpha()
    )
    .unwrap();
    let (f, v) = extremum(fits, |f| f.gamma(), true);
    writeln!(w, "  fastest blueing:       {} (gamma = {v:.3})", f.state).unwrap();
    let (f, v) = extremum(fits, |f| f.gamma(), false);
    writeln!(w, "  fastest reddening:     {} (gamma = {v:.3})", f.state).unwrap();
    let (f, _) = extremum(fits, |f| f.gamma().abs(), false);
    writeln!(
        w,
        "  steadiest lean:        {} (gamma = {:.4})",
        f.state,
        f.gamma()
    )
    .unwrap();
    let (f, v) = extremum(fits, |f| f.beta(), true);
    writeln!(w, "  most elastic:          {} (beta = {v:.3})", f.state).unwrap();
    let (f, _) = extremum(fits, |f| f.beta().abs(), false);
    writeln!(
        w,
        "  least elastic:         {} (beta = {:.3})",
        f.state,
        f.beta()
    )
    .unwrap();
    let negative: Vec<String> = fits
        .values()
        .filter(|f| f.beta() < 0.0)
        .map(|f| format!("{} (beta = {:.3})", f.state, f.beta()))
        .collect();
    writeln!(
        w,
        "  negative elasticity:   {}",
        if negative.is_empty() {
            "none".to_string()
        } else {
            negative.join(", ")
        }
    )
    .unwrap();
    let (f, v) = extremum(fits, |f| f.sigma(), true);
    writeln!(w, "  noisiest:              {} (sigma = {v:.3})", f.state).unwrap();
    let (f, v) = extremum(fits, |f| f.sigma(), false);
    writeln!(w, "  quietest:              {} (sigma = {v:.3})", f.state).unwrap();
    writeln!(w).unwrap();

    let corr = size_effect(fits, &dataset.meta)?;
    writeln!(
        w,
        "Size effect: corr(ln sigma, ln population) = {:.3} (1990), {:.3} (2000), {:.3} (2010)",
        corr[0], corr[1], corr[2]
    )
    .unwrap();
    let pvi = pvi_comparison(fits, &dataset.meta)?;
    writeln!(
        w,
        "Cook PVI comparison: correlation = {:.3}, alpha = {:.3} * PVI + {:.3}",
        pvi.correlation, pvi.slope, pvi.intercept
    )
    .unwrap();
    writeln!(w).unwrap();

    for scenario in scenarios {
        let ranking = importance(fits, scenario, &dataset.meta)?;
        writeln!(
            w,
            "Scenario {} (dem {:.1}, rep {:.1}, t = {}): most pivotal states",
            scenario.label, scenario.dem_share, scenario.rep_share, scenario.t
        )
        .unwrap();
        for (rank, (state, value)) in ranking.iter().take(3).enumerate() {
            writeln!(w, "  {}. {state} (importance {value:.1})", rank + 1).unwrap();
        }
    }
    Ok(out)
}
