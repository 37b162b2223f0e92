//! Self-contained numerical primitives: normal CDF/density/quantile,
//! deterministic samplers, small fixed-size linear algebra with OLS, and the
//! goodness-of-fit tests used by the regression diagnostics.

pub mod gof;
pub mod linalg;
pub mod normal;
pub mod sampling;
pub mod shapiro;
pub mod special;

pub use gof::{binomial_interval, chi2_uniformity_pvalue, pearson_correlation};
pub use linalg::{cholesky3, eigenvalues_sym3, ols3, Mat3, OlsFit, Vec3};
pub use normal::{normal_density_scaled, std_normal_cdf, std_normal_inv_cdf};
pub use sampling::{
    sample_chi_squared, sample_mvn3, sample_scaled_inv_chi_squared, sample_std_normal,
    CHI_SQUARED_SUM_LIMIT,
};
pub use shapiro::shapiro_wilk;
pub use special::chi_squared_sf;
