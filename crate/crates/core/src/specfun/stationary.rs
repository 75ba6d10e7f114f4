//! Speed measure of the Shiryaev–Roberts diffusion, which is also its
//! stationary (Fréchet-type) law as A → ∞.

use crate::model::ModelParams;

/// m(x) = (2/(μ²x²))·e^{−2/(μ²x)}; 0 for x ≤ 0.
pub fn speed_density(x: f64, params: &ModelParams) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    log_speed_density(x, params).exp()
}

/// H(x) = e^{−2/(μ²x)}; 0 for x ≤ 0.
pub fn stationary_cdf(x: f64, params: &ModelParams) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    (-params.whittaker_arg(x)).exp()
}

/// ln m(x), for x > 0.
pub fn log_speed_density(x: f64, params: &ModelParams) -> f64 {
    let u = params.whittaker_arg(x);
    (0.5 * params.mu_sq()).ln() + 2.0 * u.ln() - u
}
