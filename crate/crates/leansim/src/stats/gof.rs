//! Goodness-of-fit helpers: chi-squared uniformity test for p-values,
//! Pearson correlation, and the normal-approximation binomial interval used
//! by the Electoral College bias check.

use crate::error::{Error, Result};
use crate::stats::special::chi_squared_sf;

/// Pearson chi-squared test that the given p-values are uniform on [0, 1].
///
/// The unit interval is split into `bins` equal-width cells (a value of
/// exactly 1.0 falls in the last cell) and the statistic is compared against
/// the chi-squared distribution with `bins - 1` degrees of freedom. Returns
/// the upper-tail p-value.
pub fn chi2_uniformity_pvalue(pvalues: &[f64], bins: usize) -> Result<f64> {
    if pvalues.is_empty() {
        return Err(Error::Test("uniformity test on empty input".into()));
    }
    if bins == 0 {
        return Err(Error::Test("uniformity test needs at least one bin".into()));
    }
    let mut counts = vec![0u64; bins];
    for &p in pvalues {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Test(format!(
                "uniformity test input {p} outside [0, 1]"
            )));
        }
        let idx = ((p * bins as f64) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let expected = pvalues.len() as f64 / bins as f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    Ok(chi_squared_sf(stat, (bins - 1) as f64))
}

/// Product-moment correlation of two equal-length samples.
///
/// Requires at least 3 points and nonconstant inputs.
pub fn pearson_correlation(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Domain(format!(
            "correlation inputs have lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 3 {
        return Err(Error::Domain(
            "correlation requires at least 3 points".into(),
        ));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
        sxy += (a - mx) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::Domain("correlation input is constant".into()));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Normal-approximation interval `p0 ± z·sqrt(p0(1-p0)/n)` around a binomial
/// proportion.
pub fn binomial_interval(p0: f64, n: u64, z: f64) -> (f64, f64) {
    let half = z * (p0 * (1.0 - p0) / n as f64).sqrt();
    (p0 - half, p0 + half)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_counts_give_p_one() {
        // 40 values, exactly 2 per bin of width 0.05.
        let mut vals = Vec::new();
        for b in 0..20 {
            vals.push(b as f64 * 0.05 + 0.01);
            vals.push(b as f64 * 0.05 + 0.04);
        }
        let p = chi2_uniformity_pvalue(&vals, 20).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn concentrated_values_give_tiny_p() {
        let vals = vec![0.42; 40];
        let p = chi2_uniformity_pvalue(&vals, 20).unwrap();
        assert!(p < 1e-6, "p = {p}");
    }

    #[test]
    fn matches_scipy_fixture() {
        // Bin counts [2,3,1,4,2,3,2,1,3,4,2,3,1,2,4,3,2,3,2,3] over 50 values:
        // statistic 6.8, chi2.sf(6.8, 19) = 0.9952058980986241.
        let counts = [2, 3, 1, 4, 2, 3, 2, 1, 3, 4, 2, 3, 1, 2, 4, 3, 2, 3, 2, 3];
        let mut vals = Vec::new();
        for (b, &c) in counts.iter().enumerate() {
            for k in 0..c {
                vals.push((b as f64 + (k as f64 + 0.5) / c as f64) / 20.0);
            }
        }
        assert_eq!(vals.len(), 50);
        let p = chi2_uniformity_pvalue(&vals, 20).unwrap();
        assert!((p - 0.9952058980986241).abs() < 1e-10, "p = {p}");
    }

    #[test]
    fn value_one_lands_in_last_bin() {
        let vals = vec![1.0, 0.999, 0.0];
        assert!(chi2_uniformity_pvalue(&vals, 20).is_ok());
        assert!(chi2_uniformity_pvalue(&[1.2], 20).is_err());
        assert!(chi2_uniformity_pvalue(&[], 20).is_err());
    }

    #[test]
    fn correlation_exact_lines() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
        assert!((pearson_correlation(&x, &y).unwrap() - 1.0).abs() < 1e-14);
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((pearson_correlation(&x, &neg).unwrap() + 1.0).abs() < 1e-14);
    }

    #[test]
    fn correlation_matches_scipy_fixture() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0];
        let y = [2.3, 1.9, 3.8, 3.1, 4.9, 4.2, 6.1, 5.4, 6.8, 7.9];
        let r = pearson_correlation(&x, &y).unwrap();
        assert!((r - 0.948998349700654).abs() < 1e-12);
    }

    #[test]
    fn correlation_rejects_constant_input() {
        assert!(pearson_correlation(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]).is_err());
        assert!(pearson_correlation(&[1.0, 2.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn binomial_interval_values() {
        let (lo, hi) = binomial_interval(0.5, 10_000, 1.96);
        assert!((lo - 0.4902).abs() < 1e-12);
        assert!((hi - 0.5098).abs() < 1e-12);
        // z = 1.28 reproduces the 49.36%-50.64% band.
        let (lo, hi) = binomial_interval(0.5, 10_000, 1.28);
        assert!((lo - 0.4936).abs() < 1e-12);
        assert!((hi - 0.5064).abs() < 1e-12);
    }

    #[test]
    fn binomial_interval_width_shrinks_with_n() {
        let (lo1, hi1) = binomial_interval(0.5, 100, 1.96);
        let (lo2, hi2) = binomial_interval(0.5, 1_000_000_000, 1.96);
        assert!(hi2 - lo2 < (hi1 - lo1) / 100.0);
        assert!(hi2 - lo2 < 1e-4);
    }
}
