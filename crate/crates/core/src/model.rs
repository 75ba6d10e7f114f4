//! Parameters of the killed diffusion and the spectral index derived from an
//! eigenvalue candidate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The pair (μ, A): post-change drift and detection threshold.
///
/// Every quantity in this crate depends on μ only through μ², so flipping the
/// sign of `mu` never changes a result.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    mu: f64,
    threshold: f64,
}

impl ModelParams {
    pub fn new(mu: f64, threshold: f64) -> Result<Self> {
        if !mu.is_finite() || mu == 0.0 {
            return Err(Error::InvalidParameter(format!(
                "drift mu must be finite and non-zero, got {mu}"
            )));
        }
        if !threshold.is_finite() || threshold <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "threshold A must be finite and positive, got {threshold}"
            )));
        }
        Ok(Self { mu, threshold })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn mu_sq(&self) -> f64 {
        self.mu * self.mu
    }

    /// Detection threshold A.
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Whittaker argument u = 2/(μ²x) attached to a point x of the state space.
    pub fn whittaker_arg(&self, x: f64) -> f64 {
        2.0 / (self.mu_sq() * x)
    }

    /// The Whittaker argument at the threshold, 2/(μ²A).
    pub fn threshold_arg(&self) -> f64 {
        self.whittaker_arg(self.threshold)
    }

    pub fn with_threshold(&self, threshold: f64) -> Result<Self> {
        Self::new(self.mu, threshold)
    }
}

/// An eigenvalue candidate λ ≤ 0 together with ξ(λ) = √(1 + 8λ/μ²).
///
/// ξ is real in [0, 1] when ξ² ≥ 0 and purely imaginary otherwise; the
/// Whittaker second index used throughout is b = ξ/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralIndex {
    lambda: f64,
    xi_squared: f64,
    xi: Complex64,
}

impl SpectralIndex {
    pub fn new(lambda: f64, mu: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda > 0.0 {
            return Err(Error::InvalidParameter(format!(
                "eigenvalue must be finite and non-positive, got {lambda}"
            )));
        }
        if !mu.is_finite() || mu == 0.0 {
            return Err(Error::InvalidParameter(format!(
                "drift mu must be finite and non-zero, got {mu}"
            )));
        }
        let xi_squared = 1.0 + 8.0 * lambda / (mu * mu);
        let xi = if xi_squared >= 0.0 {
            Complex64::new(xi_squared.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-xi_squared).sqrt())
        };
        Ok(Self {
            lambda,
            xi_squared,
            xi,
        })
    }

    pub fn for_params(lambda: f64, params: &ModelParams) -> Result<Self> {
        Self::new(lambda, params.mu())
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn xi_squared(&self) -> f64 {
        self.xi_squared
    }

    pub fn xi(&self) -> Complex64 {
        self.xi
    }

    pub fn is_real(&self) -> bool {
        self.xi_squared >= 0.0
    }

    /// Second Whittaker index b = ξ/2.
    pub fn whittaker_b(&self) -> Complex64 {
        self.xi * 0.5
    }

    /// Inverse map λ(ξ) = μ²(ξ² − 1)/8.
    pub fn lambda_from_xi(xi: Complex64, mu: f64) -> f64 {
        (mu * mu * ((xi * xi).re - 1.0)) / 8.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_params() {
        assert!(ModelParams::new(0.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, 0.0).is_err());
        assert!(ModelParams::new(1.0, -3.0).is_err());
        assert!(ModelParams::new(f64::NAN, 3.0).is_err());
        assert!(ModelParams::new(-0.5, 3.0).is_ok());
    }

    #[test]
    fn xi_switches_to_imaginary_below_minus_mu_sq_over_8() {
        let real = SpectralIndex::new(-0.05, 1.0).unwrap();
        assert!(real.is_real());
        assert_eq!(real.xi().im, 0.0);
        assert!((real.xi().re - 0.6f64.sqrt()).abs() < 1e-15);

        let imag = SpectralIndex::new(-0.25, 1.0).unwrap();
        assert!(!imag.is_real());
        assert_eq!(imag.xi().re, 0.0);
        assert!((imag.xi().im - 1.0).abs() < 1e-15);

        assert!(SpectralIndex::new(0.1, 1.0).is_err());
    }

    #[test]
    fn xi_round_trip() {
        for &mu in &[0.5, 1.0, 1.5, -2.0] {
            for &lambda in &[0.0, -1e-4, -0.03, -0.125 * mu * mu, -0.7, -3.0] {
                let se = SpectralIndex::new(lambda, mu).unwrap();
                let back = SpectralIndex::lambda_from_xi(se.xi(), mu);
                assert!(
                    (back - lambda).abs() <= 4.0 * f64::EPSILON * lambda.abs().max(mu * mu),
                    "mu={mu} lambda={lambda} back={back}"
                );
            }
        }
    }
}
