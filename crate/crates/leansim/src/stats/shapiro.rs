//! Shapiro-Wilk normality test, Royston's AS R94 formulation (the same
//! algorithm behind R's `shapiro.test` and SciPy's `shapiro`).

use crate::error::{Error, Result};
use crate::stats::normal::{std_normal_cdf, std_normal_inv_cdf};

// Royston 1995 polynomial coefficients.
const C1: [f64; 6] = [0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056];
const C2: [f64; 6] = [0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633];
const C3: [f64; 4] = [0.544, -0.39978, 0.025054, -6.714e-4];
const C4: [f64; 4] = [1.3822, -0.77857, 0.062767, -0.0020322];
const C5: [f64; 4] = [-1.5861, -0.31082, -0.083751, 0.0038915];
const C6: [f64; 3] = [-0.4803, -0.082676, 0.0030302];
const G: [f64; 2] = [-2.273, 0.459];

fn poly(coef: &[f64], x: f64) -> f64 {
    coef.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Shapiro-Wilk test for a sample of 4 to 5000 values.
///
/// Returns `(W, p)`: the W statistic in (0, 1] and the upper-tail p-value of
/// the null hypothesis that the sample is normal. A zero-variance sample is
/// rejected as degenerate.
#[allow(clippy::needless_range_loop)]
pub fn shapiro_wilk(sample: &[f64]) -> Result<(f64, f64)> {
    let n = sample.len();
    if !(4..=5000).contains(&n) {
        return Err(Error::Test(format!(
            "Shapiro-Wilk requires 4 <= n <= 5000, got {n}"
        )));
    }
    if sample.iter().any(|v| !v.is_finite()) {
        return Err(Error::Test("Shapiro-Wilk input contains non-finite values".into()));
    }
    let mut x = sample.to_vec();
    x.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let range = x[n - 1] - x[0];
    if range < 1e-19 {
        return Err(Error::Test(
            "Shapiro-Wilk input has zero variance (all values identical)".into(),
        ));
    }

    let coefs = upper_coefficients(n);
    let half = n / 2;

    // W is the squared correlation between the (range-scaled) order statistics
    // and the antisymmetric coefficient vector; computing 1 - W directly keeps
    // precision when W is close to 1.
    let an = n as f64;
    let mut sa = 0.0;
    let mut sx = 0.0;
    for i in 0..n {
        sa += signed_coef(&coefs, i, n, half);
        sx += x[i] / range;
    }
    sa /= an;
    sx /= an;
    let (mut ssa, mut ssx, mut sax) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let da = signed_coef(&coefs, i, n, half) - sa;
        let dx = x[i] / range - sx;
        ssa += da * da;
        ssx += dx * dx;
        sax += da * dx;
    }
    let ssassx = (ssa * ssx).sqrt();
    let w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    let w = (1.0 - w1).clamp(0.0, 1.0);

    Ok((w, p_value(w, n)))
}

/// Coefficient for sorted position `i` (0-based): the vector is antisymmetric,
/// negative in the lower half, zero in the middle for odd n.
fn signed_coef(coefs: &[f64], i: usize, n: usize, half: usize) -> f64 {
    if i < half {
        -coefs[i]
    } else if i >= n - half {
        coefs[n - 1 - i]
    } else {
        0.0
    }
}

/// Magnitudes of the largest-to-smallest coefficients for the extreme order
/// statistics: index 0 pairs with the sample extremes. Royston's corrected
/// Blom-score normalization.
#[allow(clippy::needless_range_loop)]
fn upper_coefficients(n: usize) -> Vec<f64> {
    let half = n / 2;
    let an25 = n as f64 + 0.25;
    // m[k]: expected normal order statistic magnitude for the k-th extreme.
    let mut m = Vec::with_capacity(half);
    let mut summ2 = 0.0;
    for k in 0..half {
        let p = (k as f64 + 1.0 - 0.375) / an25;
        let v = -std_normal_inv_cdf(p);
        m.push(v);
        summ2 += v * v;
    }
    summ2 *= 2.0;
    let ssumm2 = summ2.sqrt();
    let rsn = 1.0 / (n as f64).sqrt();

    let a1 = poly(&C1, rsn) + m[0] / ssumm2;
    let mut out = vec![0.0; half];
    out[0] = a1;
    if n > 5 {
        let a2 = poly(&C2, rsn) + m[1] / ssumm2;
        out[1] = a2;
        let fac = ((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1])
            / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2))
            .sqrt();
        for k in 2..half {
            out[k] = m[k] / fac;
        }
    } else {
        let fac = ((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1)).sqrt();
        for k in 1..half {
            out[k] = m[k] / fac;
        }
    }
    out
}

fn p_value(w: f64, n: usize) -> f64 {
    let an = n as f64;
    let w1 = 1.0 - w;
    if w1 <= 0.0 {
        return 1.0;
    }
    let y = w1.ln();
    let (z_arg, m, s) = if n <= 11 {
        let gamma = poly(&G, an);
        if y >= gamma {
            return 1e-99;
        }
        (-(gamma - y).ln(), poly(&C3, an), poly(&C4, an).exp())
    } else {
        let ln_n = an.ln();
        (y, poly(&C5, ln_n), poly(&C6, ln_n).exp())
    };
    (1.0 - std_normal_cdf((z_arg - m) / s)).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference (W, p) pairs computed offline with scipy.stats.shapiro on the
    // exact literals below.

    #[test]
    fn matches_reference_near_normal_n20() {
        let data = [
            -0.84, 1.21, -0.52, 0.13, 0.96, -1.45, 0.71, -0.23, 1.84, -1.11, 0.35, -0.67, 2.12,
            -1.73, 0.44, 0.02, -0.31, 1.02, -0.95, 0.58,
        ];
        let (w, p) = shapiro_wilk(&data).unwrap();
        assert!((w - 0.9841915872380844).abs() < 1e-3, "W = {w}");
        assert!((p - 0.9762064753087835).abs() < 1e-3, "p = {p}");
    }

    #[test]
    fn matches_reference_lognormal_n20() {
        let data = [
            0.140863, 0.237039, 0.316526, 0.392747, 0.469816, 0.550042, 0.635234, 0.727138,
            0.827688, 0.939219, 1.064715, 1.208184, 1.375255, 1.574224, 1.818042, 2.128495,
            2.546168, 3.159297, 4.218719, 7.099071,
        ];
        let (w, p) = shapiro_wilk(&data).unwrap();
        assert!((w - 0.7568452600248803).abs() < 1e-3, "W = {w}");
        assert!((p - 0.00021001995978042005).abs() < 1e-3, "p = {p}");
        assert!(p < 0.05, "lognormal sample must fail the test");
    }

    #[test]
    fn matches_reference_outlier_n20() {
        let data = [
            3.1, 5.2, 4.8, 5.9, 4.4, 5.1, 6.3, 4.9, 5.5, 5.0, 4.7, 5.3, 12.8, 5.6, 4.2, 5.8, 5.4,
            4.6, 5.7, 4.95,
        ];
        let (w, p) = shapiro_wilk(&data).unwrap();
        assert!((w - 0.5980643185769257).abs() < 1e-3, "W = {w}");
        assert!((p - 2.8120094077092896e-6).abs() < 1e-3, "p = {p}");
    }

    #[test]
    fn matches_reference_n12() {
        let data = [
            0.31, -0.42, 0.09, 1.12, -0.88, 0.55, -0.19, 0.73, -1.25, 0.41, -0.06, 0.27,
        ];
        let (w, p) = shapiro_wilk(&data).unwrap();
        assert!((w - 0.9737519881993325).abs() < 1e-3, "W = {w}");
        assert!((p - 0.9458687684645524).abs() < 1e-3, "p = {p}");
    }

    #[test]
    fn matches_reference_small_n_path() {
        // n = 11 exercises the small-sample p-value branch.
        let data = [2.1, 3.4, 1.8, 4.2, 2.9, 3.1, 2.5, 3.8, 2.2, 3.3, 2.7];
        let (w, p) = shapiro_wilk(&data).unwrap();
        assert!((w - 0.9817130609202203).abs() < 1e-3, "W = {w}");
        assert!((p - 0.9749310435302236).abs() < 1e-3, "p = {p}");

        let data5 = [1.0, 2.0, 3.0, 4.0, 10.0];
        let (w, p) = shapiro_wilk(&data5).unwrap();
        assert!((w - 0.8357883166461942).abs() < 1e-3, "W = {w}");
        assert!((p - 0.1536125843490888).abs() < 1e-3, "p = {p}");

        let data4 = [0.1, 0.5, 0.2, 0.9];
        let (w, p) = shapiro_wilk(&data4).unwrap();
        assert!((w - 0.9281416901727945).abs() < 1e-3, "W = {w}");
        assert!((p - 0.5835205808731088).abs() < 1e-3, "p = {p}");
    }

    #[test]
    fn perfect_normal_scores_give_high_w() {
        let scores: Vec<f64> = (1..=20)
            .map(|i| std_normal_inv_cdf((i as f64 - 0.5) / 20.0))
            .collect();
        let (w, p) = shapiro_wilk(&scores).unwrap();
        assert!(w > 0.99, "W = {w}");
        assert!((w - 0.9984548979891772).abs() < 1e-3);
        assert!(p > 0.99);
    }

    #[test]
    fn rejects_out_of_range_n_and_degenerate_input() {
        assert!(shapiro_wilk(&[1.0, 2.0, 3.0]).is_err());
        let big = vec![0.5; 5001];
        assert!(shapiro_wilk(&big).is_err());
        assert!(shapiro_wilk(&[3.3; 10]).is_err());
    }

    #[test]
    fn order_invariant() {
        let a = [0.4, -1.2, 0.8, 2.2, -0.3, 0.1, 1.4, -0.9, 0.6, -0.2];
        let mut b = a;
        b.reverse();
        assert_eq!(shapiro_wilk(&a).unwrap(), shapiro_wilk(&b).unwrap());
    }
}
