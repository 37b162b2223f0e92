//! Fixed-size 3-vector / 3x3-matrix arithmetic, Cholesky factorization, and
//! ordinary least squares for the three-regressor design used throughout the
//! crate. Nothing here is generic: the regression model has exactly three
//! coefficients, so all shapes are compile-time fixed.

use crate::error::{Error, Result};

/// A real 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Vec3([a, b, c])
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }
}

impl std::ops::Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl std::ops::Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
        ])
    }
}

/// A real 3x3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat3(pub [f64; 9]);

impl Mat3 {
    pub fn zeros() -> Self {
        Mat3([0.0; 9])
    }

    pub fn identity() -> Self {
        let mut m = Mat3::zeros();
        m.0[0] = 1.0;
        m.0[4] = 1.0;
        m.0[8] = 1.0;
        m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[3 * i + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.0[3 * i + j] = v;
    }

    pub fn scale(&self, k: f64) -> Mat3 {
        let mut out = *self;
        for v in &mut out.0 {
            *v *= k;
        }
        out
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        Vec3([
            self.get(0, 0) * v[0] + self.get(0, 1) * v[1] + self.get(0, 2) * v[2],
            self.get(1, 0) * v[0] + self.get(1, 1) * v[1] + self.get(1, 2) * v[2],
            self.get(2, 0) * v[0] + self.get(2, 1) * v[1] + self.get(2, 2) * v[2],
        ])
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let mut out = Mat3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for k in 0..3 {
                    s += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, s);
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat3 {
        let mut out = Mat3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                out.set(i, j, self.get(j, i));
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Checks symmetry within a relative tolerance of 1e-12 of the largest
    /// entry. Matrices used as covariances must pass this.
    pub fn check_symmetric(&self) -> Result<()> {
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for i in 0..3 {
            for j in (i + 1)..3 {
                let delta = (self.get(i, j) - self.get(j, i)).abs();
                if delta > 1e-12 * scale {
                    return Err(Error::NotSymmetric { i, j, delta });
                }
            }
        }
        Ok(())
    }
}

/// Eigenvalues of a symmetric 3x3 matrix, ascending. Closed-form solution of
/// the characteristic cubic via the trigonometric method.
pub fn eigenvalues_sym3(m: &Mat3) -> [f64; 3] {
    let p1 = m.get(0, 1).powi(2) + m.get(0, 2).powi(2) + m.get(1, 2).powi(2);
    if p1 == 0.0 {
        let mut d = [m.get(0, 0), m.get(1, 1), m.get(2, 2)];
        d.sort_by(|a, b| a.partial_cmp(b).unwrap());
        return d;
    }
    let q = (m.get(0, 0) + m.get(1, 1) + m.get(2, 2)) / 3.0;
    let p2 = (m.get(0, 0) - q).powi(2)
        + (m.get(1, 1) - q).powi(2)
        + (m.get(2, 2) - q).powi(2)
        + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let mut b = *m;
    for i in 0..3 {
        b.set(i, i, b.get(i, i) - q);
    }
    let b = b.scale(1.0 / p);
    let r = (det3(&b) / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let e2 = 3.0 * q - e1 - e3;
    let mut out = [e1, e2, e3];
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

fn det3(m: &Mat3) -> f64 {
    m.get(0, 0) * (m.get(1, 1) * m.get(2, 2) - m.get(1, 2) * m.get(2, 1))
        - m.get(0, 1) * (m.get(1, 0) * m.get(2, 2) - m.get(1, 2) * m.get(2, 0))
        + m.get(0, 2) * (m.get(1, 0) * m.get(2, 1) - m.get(1, 1) * m.get(2, 0))
}

/// Lower-triangular Cholesky factor L with L·Lᵀ = m.
///
/// The input must be symmetric (1e-12 relative) and positive definite; a
/// nonpositive pivot is reported with its index.
pub fn cholesky3(m: &Mat3) -> Result<Mat3> {
    m.check_symmetric()?;
    let mut l = Mat3::zeros();
    for i in 0..3 {
        for j in 0..=i {
            let mut sum = m.get(i, j);
            for k in 0..j {
                sum -= l.get(i, k) * l.get(j, k);
            }
            if i == j {
                if sum <= 0.0 {
                    return Err(Error::NotPositiveDefinite { pivot: i });
                }
                l.set(i, j, sum.sqrt());
            } else {
                l.set(i, j, sum / l.get(j, j));
            }
        }
    }
    Ok(l)
}

/// Solves L·y = b for lower-triangular L.
#[allow(clippy::needless_range_loop)]
fn forward_sub(l: &Mat3, b: &Vec3) -> Vec3 {
    let mut y = [0.0; 3];
    for i in 0..3 {
        let mut s = b[i];
        for k in 0..i {
            s -= l.get(i, k) * y[k];
        }
        y[i] = s / l.get(i, i);
    }
    Vec3(y)
}

/// Solves Lᵀ·x = y for lower-triangular L.
#[allow(clippy::needless_range_loop)]
fn backward_sub(l: &Mat3, y: &Vec3) -> Vec3 {
    let mut x = [0.0; 3];
    for i in (0..3).rev() {
        let mut s = y[i];
        for k in (i + 1)..3 {
            s -= l.get(k, i) * x[k];
        }
        x[i] = s / l.get(i, i);
    }
    Vec3(x)
}

/// Inverse of an SPD matrix through its Cholesky factor.
fn spd_inverse(l: &Mat3) -> Mat3 {
    let mut inv = Mat3::zeros();
    for j in 0..3 {
        let mut e = Vec3::default();
        e.0[j] = 1.0;
        let col = backward_sub(l, &forward_sub(l, &e));
        for i in 0..3 {
            inv.set(i, j, col[i]);
        }
    }
    // Symmetrize away the last-bit asymmetry from the two triangular solves.
    for i in 0..3 {
        for j in (i + 1)..3 {
            let avg = 0.5 * (inv.get(i, j) + inv.get(j, i));
            inv.set(i, j, avg);
            inv.set(j, i, avg);
        }
    }
    inv
}

/// Output of [`ols3`].
#[derive(Debug, Clone)]
pub struct OlsFit {
    /// Coefficient estimates, one per design column.
    pub theta: Vec3,
    /// Unbiased residual variance, SSR / (n - 3).
    pub sigma2: f64,
    /// (XᵀX)⁻¹.
    pub xtx_inv: Mat3,
    /// response - design·theta, in row order.
    pub residuals: Vec<f64>,
}

/// Ordinary least squares for an n×3 design.
///
/// Requires n ≥ 4 and a numerically full-rank design: the smallest eigenvalue
/// of XᵀX must exceed 1e-10 times the largest. The normal equations are
/// solved through the Cholesky factor of XᵀX.
pub fn ols3(design: &[[f64; 3]], response: &[f64]) -> Result<OlsFit> {
    let n = design.len();
    if n != response.len() {
        return Err(Error::Domain(format!(
            "design has {n} rows but response has {}",
            response.len()
        )));
    }
    if n < 4 {
        return Err(Error::RankDeficient(format!(
            "need at least 4 observations, got {n}"
        )));
    }
    let mut xtx = Mat3::zeros();
    let mut xty = Vec3::default();
    for (row, &y) in design.iter().zip(response) {
        for i in 0..3 {
            xty.0[i] += row[i] * y;
            for j in 0..3 {
                xtx.0[3 * i + j] += row[i] * row[j];
            }
        }
    }
    let eig = eigenvalues_sym3(&xtx);
    if eig[0].is_nan() || eig[0] <= 1e-10 * eig[2] {
        return Err(Error::RankDeficient(format!(
            "smallest/largest eigenvalue of X'X = {:e}/{:e}",
            eig[0], eig[2]
        )));
    }
    let l = cholesky3(&xtx)?;
    let theta = backward_sub(&l, &forward_sub(&l, &xty));
    let xtx_inv = spd_inverse(&l);
    let residuals: Vec<f64> = design
        .iter()
        .zip(response)
        .map(|(row, &y)| y - (row[0] * theta[0] + row[1] * theta[1] + row[2] * theta[2]))
        .collect();
    let ssr: f64 = residuals.iter().map(|r| r * r).sum();
    Ok(OlsFit {
        theta,
        sigma2: ssr / (n - 3) as f64,
        xtx_inv,
        residuals,
    })
}
