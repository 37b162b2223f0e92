//! Shared test oracles, independent of the library's implementation paths:
//! Gauss-Legendre quadrature for the normal CDF, Kolmogorov-Smirnov tests,
//! and an adjugate-inverse OLS solver.

#![allow(dead_code)]

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Evaluate P_n(x) and P_n'(x).
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = pk;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let mut p0 = 1.0;
        let mut p1 = x;
        for k in 2..=n {
            let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = pk;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Standard normal CDF by composite 20-node Gauss-Legendre integration of
/// the density. The integral is taken over the upper tail `[|u|, 40]` and
/// either returned directly (u < 0) or subtracted from 1, which keeps the
/// absolute error near machine precision even deep in the tails.
pub fn phi_quadrature(u: f64) -> f64 {
    if u < -40.0 {
        return 0.0;
    }
    if u > 40.0 {
        return 1.0;
    }
    let nodes = gauss_legendre(20);
    let density = |z: f64| (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let a = u.abs();
    let b = 40.0f64;
    let panels = ((b - a).ceil() as usize).max(1);
    let width = (b - a) / panels as f64;
    let mut tail = 0.0;
    // Sum panels outermost-first so the tiny contributions accumulate
    // before the dominant ones.
    for p in (0..panels).rev() {
        let lo = a + p as f64 * width;
        let mid = lo + width / 2.0;
        let half = width / 2.0;
        let mut panel = 0.0;
        for &(x, w) in &nodes {
            panel += w * half * density(mid + half * x);
        }
        tail += panel;
    }
    if u >= 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// Upper tail of the Kolmogorov distribution.
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    let mut sum = 0.0;
    for j in 1..=100 {
        let term = (-2.0 * (j as f64) * (j as f64) * lambda * lambda).exp();
        sum += if j % 2 == 1 { term } else { -term };
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// One-sample Kolmogorov-Smirnov p-value of `draws` against the given CDF
/// (asymptotic, with Stephens' small-sample correction).
pub fn ks_pvalue(draws: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted = draws.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i as f64 + 1.0) / n - f);
    }
    let sqrt_n = n.sqrt();
    kolmogorov_sf((sqrt_n + 0.12 + 0.11 / sqrt_n) * d)
}

/// Two-sample Kolmogorov-Smirnov p-value.
pub fn ks_two_sample_pvalue(a: &[f64], b: &[f64]) -> f64 {
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|p, q| p.partial_cmp(q).unwrap());
    ys.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let (n1, n2) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < xs.len() && j < ys.len() {
        if xs[i] <= ys[j] {
            i += 1;
        } else {
            j += 1;
        }
        d = d.max((i as f64 / n1 - j as f64 / n2).abs());
    }
    let ne = (n1 * n2 / (n1 + n2)).sqrt();
    kolmogorov_sf((ne + 0.12 + 0.11 / ne) * d)
}

/// Independent OLS route: explicit normal equations solved through the
/// adjugate inverse of the 3x3 Gram matrix.
pub fn adjugate_ols(design: &[[f64; 3]], response: &[f64]) -> ([f64; 3], f64, [f64; 9]) {
    let mut g = [0.0f64; 9];
    let mut xty = [0.0f64; 3];
    for (row, &y) in design.iter().zip(response) {
        for i in 0..3 {
            xty[i] += row[i] * y;
            for j in 0..3 {
                g[3 * i + j] += row[i] * row[j];
            }
        }
    }
    let det = g[0] * (g[4] * g[8] - g[5] * g[7]) - g[1] * (g[3] * g[8] - g[5] * g[6])
        + g[2] * (g[3] * g[7] - g[4] * g[6]);
    let cof = |i: usize, j: usize| -> f64 {
        let rows: [usize; 2] = match i {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        };
        let cols: [usize; 2] = match j {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        };
        let minor = g[3 * rows[0] + cols[0]] * g[3 * rows[1] + cols[1]]
            - g[3 * rows[0] + cols[1]] * g[3 * rows[1] + cols[0]];
        if (i + j).is_multiple_of(2) {
            minor
        } else {
            -minor
        }
    };
    let mut inv = [0.0f64; 9];
    for i in 0..3 {
        for j in 0..3 {
            // adj = transpose of the cofactor matrix.
            inv[3 * i + j] = cof(j, i) / det;
        }
    }
    let mut theta = [0.0f64; 3];
    for i in 0..3 {
        for j in 0..3 {
            theta[i] += inv[3 * i + j] * xty[j];
        }
    }
    let mut ssr = 0.0;
    for (row, &y) in design.iter().zip(response) {
        let r = y - (row[0] * theta[0] + row[1] * theta[1] + row[2] * theta[2]);
        ssr += r * r;
    }
    (theta, ssr / (design.len() as f64 - 3.0), inv)
}

/// Type-7 (linear interpolation) sample quantile of a sorted slice.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let h = (n as f64 - 1.0) * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[cfg(test)]
mod self_checks {
    use super::*;

    #[test]
    fn quadrature_matches_reference() {
        assert!((phi_quadrature(0.0) - 0.5).abs() < 1e-15);
        assert!((phi_quadrature(1.96) - 0.9750021048517796).abs() < 1e-13);
        assert!((phi_quadrature(-8.0) / 6.220960574271784e-16 - 1.0).abs() < 1e-12);
        assert!((phi_quadrature(-1.5) - 0.06680720126885807).abs() < 1e-14);
    }

    #[test]
    fn adjugate_reproduces_perfect_fit() {
        let design: Vec<[f64; 3]> = (0..10)
            .map(|i| [1.0, ((i * 3) % 5) as f64, i as f64])
            .collect();
        let y: Vec<f64> = design.iter().map(|r| 2.0 + 0.5 * r[1] - 0.25 * r[2]).collect();
        let (theta, sigma2, _) = adjugate_ols(&design, &y);
        assert!((theta[0] - 2.0).abs() < 1e-10);
        assert!((theta[1] - 0.5).abs() < 1e-10);
        assert!((theta[2] + 0.25).abs() < 1e-10);
        assert!(sigma2 < 1e-20);
    }

    #[test]
    fn ks_accepts_its_own_distribution() {
        // Uniform grid against the uniform CDF.
        let draws: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        assert!(ks_pvalue(&draws, |x| x.clamp(0.0, 1.0)) > 0.99);
    }
}
