//! Quadrature checks of closed-form identities the solver relies on.

use num_complex::Complex64;
use serde::Serialize;

use crate::eigensolver::eigenfunction;
use crate::error::{Error, Result};
use crate::model::{ModelParams, SpectralIndex};
use crate::quadrature::{integrate_with_points, Tolerance};
use crate::specfun::{speed_density, whittaker_w_scaled, WhittakerIndex};

/// |∫₁^∞ x^{−1}e^{−zx/2}W_{1,b}(zx)dx − e^{−z/2}W_{0,b}(z)|.
pub fn integral_identity_check(b: Complex64, z: f64) -> Result<f64> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Domain {
            function: "integral_identity_check",
            detail: format!("z must be positive and finite, got {z}"),
        });
    }
    let w1 = WhittakerIndex::new(1, b)?;
    let w0 = WhittakerIndex::new(0, b)?;
    // e^{−zx/2}W(zx) = e^{−zx}·W̃(zx); the tail beyond zx ≈ 800 underflows.
    let integrand = |x: f64| {
        let t = z * x;
        whittaker_w_scaled(w1, t).map_or(f64::NAN, |w| (-t).exp() * w / x)
    };
    let upper = 1.0 + 800.0 / z;
    let mut pts = vec![1.0];
    for k in [0.5, 2.0, 8.0, 32.0, 128.0] {
        let p = 1.0 + k / z;
        if p < upper {
            pts.push(p);
        }
    }
    pts.push(upper);
    let lhs = integrate_with_points(integrand, &pts, Tolerance::new(1e-15, 1e-13))?.value;
    if !lhs.is_finite() {
        return Err(Error::Domain {
            function: "integral_identity_check",
            detail: format!("integrand not finite for b = {b}, z = {z}"),
        });
    }
    let rhs = (-z).exp() * whittaker_w_scaled(w0, z)?;
    Ok((lhs - rhs).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormIdentity {
    /// ∫₀^A m φ² by quadrature.
    pub quadrature: f64,
    /// (μ²/2)·∂_λW·∂_uW at u = 2/(μ²A).
    pub product: f64,
    pub d_lambda: f64,
    pub d_u: f64,
    pub relative_residual: f64,
}

/// Compare ‖φ‖² with the product of the two derivatives of W_{1,ξ(λ)/2}(u)
/// at the threshold, taken by central differences with relative step `step`.
pub fn norm_identity_check(params: &ModelParams, se: &SpectralIndex, step: f64) -> Result<NormIdentity> {
    if !(step > 0.0 && step < 0.1) {
        return Err(Error::InvalidParameter(format!(
            "relative step must lie in (0, 0.1), got {step}"
        )));
    }
    let lambda = se.lambda();
    let ua = params.threshold_arg();
    let w = |l: f64, u: f64| -> Result<f64> {
        let s = SpectralIndex::for_params(l, params)?;
        Ok(whittaker_w_scaled(WhittakerIndex::from_spectral(1, &s)?, u)? * (-0.5 * u).exp())
    };
    let hl = step * lambda.abs().max(1e-3);
    let d_lambda = (w(lambda + hl, ua)? - w(lambda - hl, ua)?) / (2.0 * hl);
    let hu = step * ua;
    let d_u = (w(lambda, ua + hu)? - w(lambda, ua - hu)?) / (2.0 * hu);
    let product = 0.5 * params.mu_sq() * d_lambda * d_u;

    let a = params.threshold();
    let s = 1.0 / params.mu_sq();
    let mut pts = vec![0.0];
    for k in [0.05, 0.2, 1.0, 5.0, 20.0, 100.0] {
        if k * s < 0.999 * a {
            pts.push(k * s);
        }
    }
    pts.push(a);
    let f = |x: f64| {
        if x <= 0.0 {
            return 0.0;
        }
        let m = speed_density(x, params);
        if m == 0.0 {
            return 0.0;
        }
        eigenfunction(x, se, params).map_or(f64::NAN, |phi| m * phi * phi)
    };
    let quadrature = integrate_with_points(f, &pts, Tolerance::new(1e-15, 1e-12))?.value;
    Ok(NormIdentity {
        quadrature,
        product,
        d_lambda,
        d_u,
        relative_residual: ((quadrature - product) / quadrature).abs(),
    })
}
