//! Samplers built on [`RngStream`]: standard normal, chi-squared, scaled
//! inverse chi-squared, and trivariate normal.
//!
//! All transcendental math in this module goes through `libm` so that a given
//! `(seed, stream)` reproduces bit-identical draws on every platform,
//! independent of the system math library.

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::stats::linalg::{cholesky3, Mat3, Vec3};

const TWO_PI: f64 = std::f64::consts::TAU;

/// Degrees-of-freedom boundary between the two chi-squared sampling paths.
///
/// At or below this, a chi-squared draw is the sum of `n` squared normals;
/// above it, the Marsaglia-Tsang gamma sampler is used. The boundary is part
/// of the determinism contract: changing it would change the draw sequence
/// for a given seed.
pub const CHI_SQUARED_SUM_LIMIT: u32 = 32;

/// One standard normal draw (Box-Muller, both variates used).
///
/// The second variate of each pair is cached on the stream and returned by
/// the next call, so normals come in deterministic pairs per stream.
pub fn sample_std_normal(rng: &mut RngStream) -> f64 {
    if let Some(z) = rng.spare_normal.take() {
        return z;
    }
    let u1 = rng.uniform_open();
    let u2 = rng.uniform();
    let r = libm::sqrt(-2.0 * libm::log(u1));
    let theta = TWO_PI * u2;
    rng.spare_normal = Some(r * libm::sin(theta));
    r * libm::cos(theta)
}

/// One chi-squared draw with `n` degrees of freedom.
pub fn sample_chi_squared(rng: &mut RngStream, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain(
            "chi-squared degrees of freedom must be >= 1".into(),
        ));
    }
    if n <= CHI_SQUARED_SUM_LIMIT {
        let mut sum = 0.0;
        for _ in 0..n {
            let z = sample_std_normal(rng);
            sum += z * z;
        }
        Ok(sum)
    } else {
        // chi2_n = 2 * Gamma(n/2, 1).
        Ok(2.0 * sample_gamma(rng, n as f64 / 2.0))
    }
}

/// Marsaglia-Tsang squeeze sampler for Gamma(shape, 1), shape >= 1.
fn sample_gamma(rng: &mut RngStream, shape: f64) -> f64 {
    debug_assert!(shape >= 1.0);
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / libm::sqrt(9.0 * d);
    loop {
        let x = sample_std_normal(rng);
        let t = 1.0 + c * x;
        if t <= 0.0 {
            continue;
        }
        let v = t * t * t;
        let u = rng.uniform_open();
        if u < 1.0 - 0.0331 * x * x * x * x {
            return d * v;
        }
        if libm::log(u) < 0.5 * x * x + d * (1.0 - v + libm::log(v)) {
            return d * v;
        }
    }
}

/// One draw from the scaled inverse chi-squared distribution Invχ²_n(c),
/// realized as n·c / X with X ~ χ²_n.
pub fn sample_scaled_inv_chi_squared(rng: &mut RngStream, n: u32, c: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain(
            "scaled inverse chi-squared requires n >= 1".into(),
        ));
    }
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::Domain(format!(
            "scaled inverse chi-squared requires scale c > 0, got {c}"
        )));
    }
    let x = sample_chi_squared(rng, n)?;
    Ok(n as f64 * c / x)
}

/// One draw from N₃(mean, cov).
///
/// If every covariance entry is below 1e-30 in magnitude the distribution is
/// treated as degenerate and `mean` is returned without consuming any
/// randomness. Otherwise the covariance must be symmetric positive definite.
pub fn sample_mvn3(rng: &mut RngStream, mean: &Vec3, cov: &Mat3) -> Result<Vec3> {
    if cov.max_abs() < 1e-30 {
        return Ok(*mean);
    }
    let l = cholesky3(cov)?;
    let z = Vec3::new(
        sample_std_normal(rng),
        sample_std_normal(rng),
        sample_std_normal(rng),
    );
    Ok(*mean + l.mul_vec(&z))
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;

    #[test]
    fn normal_draws_are_deterministic_per_stream() {
        let mut a = RngStream::new(11, 4);
        let mut b = RngStream::new(11, 4);
        for _ in 0..64 {
            assert_eq!(
                sample_std_normal(&mut a).to_bits(),
                sample_std_normal(&mut b).to_bits()
            );
        }
    }

    #[test]
    fn normal_moments_match_clt_bounds() {
        let n = 1_000_000usize;
        let mut rng = RngStream::new(2024, 0);
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..n {
            let z = sample_std_normal(&mut rng);
            sum += z;
            sumsq += z * z;
        }
        let mean = sum / n as f64;
        let var = sumsq / n as f64 - mean * mean;
        assert!(mean.abs() < 0.004, "mean = {mean}"); // 3 sigma of 1/sqrt(n)
        assert!((var - 1.0).abs() < 0.005, "var = {var}");
    }

    #[test]
    fn chi_squared_moments_both_paths() {
        // Mean n, variance 2n; check both sides of the sampler boundary.
        for &n in &[8u32, 32, 33, 200] {
            let mut rng = RngStream::new(5, n as u64);
            let draws = 200_000;
            let mut sum = 0.0;
            for _ in 0..draws {
                sum += sample_chi_squared(&mut rng, n).unwrap();
            }
            let mean = sum / draws as f64;
            let se = (2.0 * n as f64 / draws as f64).sqrt();
            assert!(
                (mean - n as f64).abs() < 5.0 * se,
                "chi2({n}) mean = {mean}"
            );
        }
    }

    #[test]
    fn scaled_inv_chi_squared_concentrates_for_large_n() {
        // With n = 1e6 the draw is nc/X where X/n -> 1.
        let mut rng = RngStream::new(9, 0);
        let draw = sample_scaled_inv_chi_squared(&mut rng, 1_000_000, 4.0).unwrap();
        assert!((draw - 4.0).abs() < 0.03, "draw = {draw}");
    }

    #[test]
    fn scaled_inv_chi_squared_mean_matches_formula() {
        // E[Inv chi2_n(c)] = n c / (n - 2); n = 11, c = 1 -> 11/9.
        let mut rng = RngStream::new(13, 1);
        let draws = 1_000_000;
        let mut sum = 0.0;
        for _ in 0..draws {
            sum += sample_scaled_inv_chi_squared(&mut rng, 11, 1.0).unwrap();
        }
        let mean = sum / draws as f64;
        assert!((mean - 11.0 / 9.0).abs() < 0.01, "mean = {mean}");
    }

    #[test]
    fn scaled_inv_chi_squared_rejects_bad_arguments() {
        let mut rng = RngStream::new(0, 0);
        assert!(sample_scaled_inv_chi_squared(&mut rng, 0, 1.0).is_err());
        assert!(sample_scaled_inv_chi_squared(&mut rng, 5, 0.0).is_err());
        assert!(sample_scaled_inv_chi_squared(&mut rng, 5, -2.0).is_err());
    }

    #[test]
    fn mvn3_degenerate_covariance_returns_mean() {
        let mut rng = RngStream::new(3, 3);
        let mean = Vec3::new(1.0, -2.0, 0.5);
        let cov = Mat3::identity().scale(1e-31);
        let draw = sample_mvn3(&mut rng, &mean, &cov).unwrap();
        assert_eq!(draw, mean);
    }

    #[test]
    fn mvn3_sample_mean_converges() {
        let mean = Vec3::new(2.0, -1.0, 0.3);
        let cov = Mat3([0.5, 0.1, 0.0, 0.1, 0.4, -0.05, 0.0, -0.05, 0.2]);
        let mut rng = RngStream::new(77, 0);
        let n = 100_000;
        let mut acc = [0.0; 3];
        for _ in 0..n {
            let d = sample_mvn3(&mut rng, &mean, &cov).unwrap();
            for i in 0..3 {
                acc[i] += d[i];
            }
        }
        for i in 0..3 {
            let est = acc[i] / n as f64;
            let se = (cov.get(i, i) / n as f64).sqrt();
            assert!((est - mean[i]).abs() < 4.0 * se, "coord {i}: {est}");
        }
    }

    #[test]
    fn mvn3_sample_covariance_converges() {
        let mean = Vec3::new(0.0, 0.0, 0.0);
        let cov = Mat3([1.0, 0.3, -0.2, 0.3, 2.0, 0.5, -0.2, 0.5, 1.5]);
        let mut rng = RngStream::new(78, 0);
        let n = 100_000;
        let mut acc = [[0.0f64; 3]; 3];
        for _ in 0..n {
            let d = sample_mvn3(&mut rng, &mean, &cov).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    acc[i][j] += d[i] * d[j];
                }
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                let est = acc[i][j] / n as f64;
                let expect = cov.get(i, j);
                assert!(
                    (est - expect).abs() < 0.05 * expect.abs().max(0.3),
                    "cov[{i}][{j}] = {est}, want {expect}"
                );
            }
        }
    }
}
