//! The 50 per-state linear regressions of the state-year mean log ratio on
//! the national lean and the year index, plus residual diagnostics and the
//! descriptive analyses built on top of the fits.

use crate::data::{NationalLean, RaceObservation, StateCode, StateMeta, StateYearObservation};
use crate::error::{Error, Result};
use crate::stats::{
    chi2_uniformity_pvalue, ols3, pearson_correlation, shapiro_wilk, Mat3, Vec3,
};
use std::collections::BTreeMap;
use std::io::Write;

/// Fitted model for one state: y = alpha + beta·x + gamma·t + sigma·eps.
#[derive(Debug, Clone)]
pub struct StateFit {
    pub state: StateCode,
    /// (alpha, beta, gamma) point estimates.
    pub theta: Vec3,
    /// Unbiased residual variance, SSR / (n - 3).
    pub sigma2: f64,
    /// (XᵀX)⁻¹ for the state's design matrix.
    pub xtx_inv: Mat3,
    /// Number of state-year observations.
    pub n: usize,
    /// Residuals in increasing-t order.
    pub residuals: Vec<f64>,
    /// Shapiro-Wilk p-value of the residuals.
    pub sw_pvalue: f64,
}

impl StateFit {
    /// Current partisan lean: expected log ratio in a neutral year at t = 0.
    pub fn alpha(&self) -> f64 {
        self.theta[0]
    }

    /// Elasticity with respect to the national lean.
    pub fn beta(&self) -> f64 {
        self.theta[1]
    }

    /// Lean drift per two-year step.
    pub fn gamma(&self) -> f64 {
        self.theta[2]
    }

    /// Residual standard deviation.
    pub fn sigma(&self) -> f64 {
        self.sigma2.sqrt()
    }
}

/// Builds the design matrix (1, x_t, t) and response vector for one state's
/// observations, rows ordered by increasing t.
pub fn build_design(
    observations: &[StateYearObservation],
    national: &[NationalLean],
) -> Result<(Vec<[f64; 3]>, Vec<f64>)> {
    let lean_by_t: BTreeMap<i32, f64> = national.iter().map(|l| (l.t, l.x)).collect();
    let mut rows: Vec<&StateYearObservation> = observations.iter().collect();
    rows.sort_by_key(|o| o.t);
    let mut design = Vec::with_capacity(rows.len());
    let mut response = Vec::with_capacity(rows.len());
    for obs in rows {
        let x = *lean_by_t.get(&obs.t).ok_or_else(|| {
            Error::data(format!(
                "no national lean for year index {} (state {})",
                obs.t, obs.state
            ))
        })?;
        design.push([1.0, x, obs.t as f64]);
        response.push(obs.y);
    }
    Ok((design, response))
}

/// Fits one state and attaches the Shapiro-Wilk p-value of its residuals.
pub fn fit_state(design: &[[f64; 3]], response: &[f64], state: StateCode) -> Result<StateFit> {
    let wrap = |e: Error| Error::Fit {
        state: state.to_string(),
        source: Box::new(e),
    };
    let ols = ols3(design, response).map_err(wrap)?;
    let (_, sw_pvalue) = shapiro_wilk(&ols.residuals).map_err(wrap)?;
    Ok(StateFit {
        state,
        theta: ols.theta,
        sigma2: ols.sigma2,
        xtx_inv: ols.xtx_inv,
        n: design.len(),
        residuals: ols.residuals,
        sw_pvalue,
    })
}

/// Fits every state present in the observations, keyed and ordered by state
/// code. Any failures are aggregated into one error listing each state.
pub fn fit_all(
    observations: &[StateYearObservation],
    national: &[NationalLean],
) -> Result<BTreeMap<StateCode, StateFit>> {
    let mut grouped: BTreeMap<StateCode, Vec<StateYearObservation>> = BTreeMap::new();
    for obs in observations {
        grouped.entry(obs.state).or_default().push(obs.clone());
    }
    let mut fits = BTreeMap::new();
    let mut failures = Vec::new();
    for (state, obs) in grouped {
        let result = build_design(&obs, national)
            .and_then(|(design, response)| fit_state(&design, &response, state));
        match result {
            Ok(fit) => {
                fits.insert(state, fit);
            }
            Err(e) => failures.push((state.to_string(), e.to_string())),
        }
    }
    if !failures.is_empty() {
        return Err(Error::AggregateFit { failures });
    }
    Ok(fits)
}

/// Residual diagnostics across all states.
#[derive(Debug, Clone)]
pub struct Diagnostics {
    /// Shapiro-Wilk p-value per state.
    pub sw_pvalues: BTreeMap<StateCode, f64>,
    /// Chi-squared uniformity p-value of the 50 Shapiro-Wilk p-values over
    /// 20 equal bins.
    pub uniformity_pvalue: f64,
    /// Number of states with Shapiro-Wilk p below 5%.
    pub count_below_0_05: usize,
    /// Shapiro-Wilk p-value of all residuals pooled into one sample.
    pub pooled_sw_pvalue: f64,
}

/// Runs the goodness-of-fit summary over a complete set of fits.
pub fn diagnose(fits: &BTreeMap<StateCode, StateFit>) -> Result<Diagnostics> {
    if fits.is_empty() {
        return Err(Error::Test("diagnose called with no fits".into()));
    }
    let sw_pvalues: BTreeMap<StateCode, f64> =
        fits.iter().map(|(s, f)| (*s, f.sw_pvalue)).collect();
    let pvals: Vec<f64> = sw_pvalues.values().copied().collect();
    let uniformity_pvalue = chi2_uniformity_pvalue(&pvals, 20)?;
    let count_below_0_05 = pvals.iter().filter(|&&p| p < 0.05).count();
    let pooled: Vec<f64> = fits
        .values()
        .flat_map(|f| f.residuals.iter().copied())
        .collect();
    let (_, pooled_sw_pvalue) = shapiro_wilk(&pooled)?;
    Ok(Diagnostics {
        sw_pvalues,
        uniformity_pvalue,
        count_below_0_05,
        pooled_sw_pvalue,
    })
}

/// Diagnostics for the un-aggregated model fitted on individual races, each
/// regressed on its own national benchmark.
#[derive(Debug, Clone)]
pub struct SeparateModelDiagnostics {
    pub fits: BTreeMap<StateCode, StateFit>,
    pub sw_pvalues: BTreeMap<StateCode, f64>,
    pub count_below_0_05: usize,
}

/// Fits the per-race model for every state and counts Shapiro-Wilk failures
/// at the 5% level.
pub fn fit_separate_model(observations: &[RaceObservation]) -> Result<SeparateModelDiagnostics> {
    let mut grouped: BTreeMap<StateCode, (Vec<[f64; 3]>, Vec<f64>)> = BTreeMap::new();
    for obs in observations {
        let entry = grouped.entry(obs.state).or_default();
        entry.0.push([1.0, obs.x, obs.t as f64]);
        entry.1.push(obs.y);
    }
    let mut fits = BTreeMap::new();
    let mut failures = Vec::new();
    for (state, (design, response)) in grouped {
        match fit_state(&design, &response, state) {
            Ok(fit) => {
                fits.insert(state, fit);
            }
            Err(e) => failures.push((state.to_string(), e.to_string())),
        }
    }
    if !failures.is_empty() {
        return Err(Error::AggregateFit { failures });
    }
    let sw_pvalues: BTreeMap<StateCode, f64> =
        fits.iter().map(|(s, f)| (*s, f.sw_pvalue)).collect();
    let count_below_0_05 = sw_pvalues.values().filter(|&&p| p < 0.05).count();
    Ok(SeparateModelDiagnostics {
        fits,
        sw_pvalues,
        count_below_0_05,
    })
}

/// Correlations of ln(sigma) with log state population for the 1990, 2000,
/// and 2010 censuses.
pub fn size_effect(
    fits: &BTreeMap<StateCode, StateFit>,
    meta: &[StateMeta],
) -> Result<[f64; 3]> {
    let mut log_sigma = Vec::new();
    let mut log_pops: [Vec<f64>; 3] = Default::default();
    for m in meta {
        let fit = fits.get(&m.state).ok_or_else(|| {
            Error::data(format!("no fit for state {} in size-effect input", m.state))
        })?;
        if fit.sigma2 <= 0.0 || fit.sigma2.is_nan() {
            return Err(Error::Domain(format!(
                "state {} has zero residual variance; ln(sigma) undefined",
                m.state
            )));
        }
        log_sigma.push(fit.sigma().ln());
        log_pops[0].push((m.pop1990 as f64).ln());
        log_pops[1].push((m.pop2000 as f64).ln());
        log_pops[2].push((m.pop2010 as f64).ln());
    }
    Ok([
        pearson_correlation(&log_sigma, &log_pops[0])?,
        pearson_correlation(&log_sigma, &log_pops[1])?,
        pearson_correlation(&log_sigma, &log_pops[2])?,
    ])
}

/// Regression of the lean index alpha on the externally published Cook PVI.
#[derive(Debug, Clone, Copy)]
pub struct PviComparison {
    pub correlation: f64,
    pub slope: f64,
    pub intercept: f64,
}

/// Simple regression of alpha on Cook PVI across states, plus the
/// correlation between the two indices.
pub fn pvi_comparison(
    fits: &BTreeMap<StateCode, StateFit>,
    meta: &[StateMeta],
) -> Result<PviComparison> {
    let mut pvi = Vec::new();
    let mut alpha = Vec::new();
    for m in meta {
        let fit = fits.get(&m.state).ok_or_else(|| {
            Error::data(format!("no fit for state {} in PVI comparison", m.state))
        })?;
        pvi.push(m.cook_pvi);
        alpha.push(fit.alpha());
    }
    let correlation = pearson_correlation(&pvi, &alpha)?;
    let n = pvi.len() as f64;
    let mx = pvi.iter().sum::<f64>() / n;
    let my = alpha.iter().sum::<f64>() / n;
    let sxx: f64 = pvi.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = pvi
        .iter()
        .zip(&alpha)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum();
    let slope = sxy / sxx;
    Ok(PviComparison {
        correlation,
        slope,
        intercept: my - slope * mx,
    })
}

/// Writes `regressionResults.csv`: one row per state in alphabetical order,
/// six decimal places.
pub fn write_regression_results_csv(
    fits: &BTreeMap<StateCode, StateFit>,
    mut out: impl Write,
) -> Result<()> {
    writeln!(out, "state,alpha,beta,gamma,sigma,n,sw_pvalue")?;
    for (state, fit) in fits {
        writeln!(
            out,
            "{state},{:.6},{:.6},{:.6},{:.6},{},{:.6}",
            fit.alpha(),
            fit.beta(),
            fit.gamma(),
            fit.sigma(),
            fit.n,
            fit.sw_pvalue
        )?;
    }
    Ok(())
}
