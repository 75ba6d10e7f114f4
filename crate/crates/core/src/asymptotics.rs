//! Large-A machinery: the third-order expansion of W_{1,ξ(λ)/2} in λ, the
//! order-1/2/3 eigenvalue approximations it induces, the matching
//! approximate densities, and the index-derivative identities behind them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ModelParams, SpectralIndex};
use crate::qsd::QsdSolution;
use crate::specfun::{
    exp_integral_e1_scaled, lower_bound_l, meijer_g_special, whittaker_w, whittaker_w_real_b,
    WhittakerIndex,
};

/// Beyond this u = 2/(μ²x) every truncated numerator is below 1e-600.
const NEGLIGIBLE_U: f64 = 1400.0;

/// λ* = −1/A.
pub fn lambda_order1(params: &ModelParams) -> f64 {
    -1.0 / params.threshold()
}

/// λ**, the root nearest zero of 1/A + λ + (2/μ²)L(u)λ² = 0, u = 2/(μ²A).
pub fn lambda_order2(params: &ModelParams) -> Result<f64> {
    let u = params.threshold_arg();
    let l = lower_bound_l(u)?;
    let disc = 1.0 - 4.0 * u * l;
    if disc < 0.0 {
        return Err(Error::ThresholdTooSmall {
            order: 2,
            detail: format!(
                "quadratic discriminant 1 - 8L/(mu^2 A) = {disc:.6e} < 0 (A = {}, L = {l:.6e})",
                params.threshold()
            ),
        });
    }
    // −(μ²/4)(1 − √disc)/L, rationalized to avoid cancellation as L·u → 0.
    Ok(-2.0 / (params.threshold() * (1.0 + disc.sqrt())))
}

/// Coefficients (c₀, c₁, c₂, c₃) of the truncated cubic in λ at u = 2/(μ²A).
fn cubic_coefficients(params: &ModelParams) -> Result<[f64; 4]> {
    let u = params.threshold_arg();
    let l = lower_bound_l(u)?;
    let g = meijer_g_special(u)?;
    let k = 2.0 / params.mu_sq();
    Ok([1.0 / params.threshold(), 1.0, k * l, k * k * (g - 2.0 * l)])
}

/// λ***, the single real root of 1/A + λ + (2/μ²)Lλ² + (2/μ²)²[G − 2L]λ³.
pub fn lambda_order3(params: &ModelParams) -> Result<f64> {
    let [d, c, b, a] = cubic_coefficients(params)?;
    let too_small = |detail: String| Error::ThresholdTooSmall { order: 3, detail };
    if a == 0.0 {
        return Err(too_small("cubic degenerates (zero leading coefficient)".into()));
    }
    let disc = 18.0 * a * b * c * d - 4.0 * b.powi(3) * d + b * b * c * c
        - 4.0 * a * c.powi(3)
        - 27.0 * a * a * d * d;
    if disc >= 0.0 {
        return Err(too_small(format!(
            "cubic has three real roots (discriminant {disc:.6e}, A = {})",
            params.threshold()
        )));
    }
    // Cardano on the depressed cubic t³ + pt + q = 0, λ = t − b/(3a).
    let p = (3.0 * a * c - b * b) / (3.0 * a * a);
    let q = (2.0 * b.powi(3) - 9.0 * a * b * c + 27.0 * a * a * d) / (27.0 * a.powi(3));
    let s = (0.25 * q * q + p.powi(3) / 27.0).sqrt();
    let t = (-0.5 * q + s).cbrt() + (-0.5 * q - s).cbrt();
    let mut x = t - b / (3.0 * a);
    // Cardano loses digits when the root is small next to the others.
    for _ in 0..8 {
        let f = ((a * x + b) * x + c) * x + d;
        let df = (3.0 * a * x + 2.0 * b) * x + c;
        let step = f / df;
        x -= step;
        if step.abs() <= 1e-16 * x.abs() {
            break;
        }
    }
    Ok(x)
}

/// λ⁽ᴷ⁾ for K ∈ {1, 2, 3}.
pub fn lambda_approx(order: u8, params: &ModelParams) -> Result<f64> {
    match order {
        1 => Ok(lambda_order1(params)),
        2 => lambda_order2(params),
        3 => lambda_order3(params),
        _ => Err(Error::InvalidParameter(format!(
            "approximation order must be 1, 2 or 3, got {order}"
        ))),
    }
}

/// The λ-expansion of W_{1,ξ(λ)/2}(2/(μ²x)) truncated after λ^order, order ≤ 3.
fn truncated_expansion(order: u8, x: f64, lambda: f64, params: &ModelParams) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            function: "whittaker_expansion3",
            detail: format!("x must be positive, got {x}"),
        });
    }
    let u = params.whittaker_arg(x);
    let k = 2.0 / params.mu_sq();
    if u > NEGLIGIBLE_U {
        return Ok(0.0);
    }
    let mut bracket = 1.0 / x + lambda;
    if order >= 2 {
        let l = lower_bound_l(u)?;
        bracket += k * l * lambda * lambda;
        if order >= 3 {
            let g = meijer_g_special(u)?;
            bracket += k * k * (g - 2.0 * l) * lambda.powi(3);
        }
    }
    Ok(k * (-0.5 * u).exp() * bracket)
}

/// (2/μ²)e^{−1/(μ²x)}{1/x + λ + (2/μ²)L(u)λ² + (2/μ²)²[G(u) − 2L(u)]λ³}, u = 2/(μ²x).
pub fn whittaker_expansion3(x: f64, lambda: f64, params: &ModelParams) -> Result<f64> {
    truncated_expansion(3, x, lambda, params)
}

/// Closed-form ∂ᵏ/∂bᵏ W_{1,b}(x) at b = 1/2:
/// e^{−x/2}, 2e^{−x/2}(eˣE1(x) + xG(x)), 6e^{−x/2}G(x).
pub fn index_derivative_identity(k: u8, x: f64) -> Result<f64> {
    let e = (-0.5 * x).exp();
    match k {
        1 => {
            if !(x > 0.0) {
                return Err(Error::Domain {
                    function: "index_derivative_identity",
                    detail: format!("x must be positive, got {x}"),
                });
            }
            Ok(e)
        }
        2 => Ok(2.0 * e * (exp_integral_e1_scaled(x)? + x * meijer_g_special(x)?)),
        3 => Ok(6.0 * e * meijer_g_special(x)?),
        _ => Err(Error::InvalidParameter(format!(
            "derivative order must be 1, 2 or 3, got {k}"
        ))),
    }
}

/// ∂ᵏ/∂bᵏ W_{1,b}(x) at b = 1/2 by central differences on the real b axis,
/// steps h ∈ {1e-2, 5e-3, 2.5e-3} combined by two Richardson sweeps.
pub fn numerical_index_derivative(k: u8, x: f64) -> Result<f64> {
    let f = |db: f64| whittaker_w_real_b(1, 0.5 + db, x);
    let diff = |h: f64| -> Result<f64> {
        Ok(match k {
            1 => (f(h)? - f(-h)?) / (2.0 * h),
            2 => (f(h)? - 2.0 * f(0.0)? + f(-h)?) / (h * h),
            3 => (f(2.0 * h)? - 2.0 * f(h)? + 2.0 * f(-h)? - f(-2.0 * h)?) / (2.0 * h.powi(3)),
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "derivative order must be 1, 2 or 3, got {k}"
                )))
            }
        })
    };
    let (d1, d2, d3) = (diff(1e-2)?, diff(5e-3)?, diff(2.5e-3)?);
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d3 - d2) / 3.0;
    Ok((16.0 * r2 - r1) / 15.0)
}

/// An order-K approximation to the quasi-stationary law.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ApproxSolution {
    order: u8,
    lambda_approx: f64,
    #[serde(skip)]
    params: ModelParams,
    denom: f64,
}

impl ApproxSolution {
    pub fn new(order: u8, params: &ModelParams) -> Result<Self> {
        let lambda_approx = lambda_approx(order, params)?;
        let denom = QsdSolution::with_eigenvalue(params, lambda_approx)?.denom();
        Ok(Self {
            order,
            lambda_approx,
            params: *params,
            denom,
        })
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn lambda(&self) -> f64 {
        self.lambda_approx
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn denom(&self) -> f64 {
        self.denom
    }

    /// (1/x)·e^{−1/(μ²x)}·[order-K truncated expansion] / e^{−1/(μ²A)}W_{0,ξ(λ⁽ᴷ⁾)/2}(2/(μ²A))
    /// on (0, A]; zero elsewhere.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        if !(x > 0.0 && x <= self.params.threshold()) {
            return Ok(0.0);
        }
        let u = self.params.whittaker_arg(x);
        let num = truncated_expansion(self.order, x, self.lambda_approx, &self.params)?;
        Ok((-0.5 * u).exp() * num / (x * self.denom))
    }
}

/// q⁽ᴷ⁾(x) in one call.
pub fn pdf_approx(order: u8, x: f64, params: &ModelParams) -> Result<f64> {
    ApproxSolution::new(order, params)?.pdf(x)
}

/// |truncated expansion − W_{1,ξ(λ)/2}(u)| at u = 2/(μ²x).
pub fn expansion_error(x: f64, lambda: f64, params: &ModelParams) -> Result<f64> {
    let se = SpectralIndex::for_params(lambda, params)?;
    let exact = whittaker_w(WhittakerIndex::from_spectral(1, &se)?, params.whittaker_arg(x))?;
    Ok((whittaker_expansion3(x, lambda, params)? - exact).abs())
}
