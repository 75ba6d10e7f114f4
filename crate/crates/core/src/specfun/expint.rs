//! Exponential integral E1, the Meijer-G special case
//! G(x) = ∫₀^∞ e^{−xy} log(1+y)/y dy, and L(x) = eˣE1(x) − 1 + xG(x).

use crate::error::{Error, Result};
use crate::quadrature::{integrate_with_points, Tolerance};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

/// Below this the power series is used, above it the continued fraction.
const E1_SERIES_MAX: f64 = 1.5;

fn check_positive(function: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            detail: format!("argument must be positive and finite, got {x}"),
        })
    }
}

/// E1 by its power series −γ − ln x − Σ (−x)^k / (k·k!).
fn e1_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        term *= -x / k as f64;
        let add = -term / k as f64;
        sum += add;
        if add.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - x.ln() + sum
}

/// eˣE1(x) by the modified Lentz continued fraction.
fn e1_scaled_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h
}

/// E1(x) = ∫ₓ^∞ e^{−y}/y dy for x > 0.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    check_positive("E1", x)?;
    if x < E1_SERIES_MAX {
        Ok(e1_series(x))
    } else {
        Ok(e1_scaled_cf(x) * (-x).exp())
    }
}

/// eˣE1(x), finite for all x > 0 (no overflow at large x).
pub fn exp_integral_e1_scaled(x: f64) -> Result<f64> {
    check_positive("E1", x)?;
    if x < E1_SERIES_MAX {
        Ok(e1_series(x) * x.exp())
    } else {
        Ok(e1_scaled_cf(x))
    }
}

/// G(x) = ∫₀^∞ e^{−xy} log(1+y)/y dy for x > 0.
///
/// The range is split at y = 1. The head gets extra breakpoints on the 1/x
/// scale where the exponential concentrates the mass; the tail is mapped by
/// y = eᵘ − 1 and truncated where x(eᵘ − 1) exceeds 745, beyond which the
/// integrand is below the smallest positive double.
pub fn meijer_g_special(x: f64) -> Result<f64> {
    check_positive("Meijer-G special case", x)?;
    let tol = Tolerance::new(1e-13 / x, 1e-14);

    let head = |y: f64| (-x * y).exp() * y.ln_1p() / y;
    let mut points = vec![0.0];
    for k in [1.0, 8.0, 40.0] {
        let p = k / x;
        if p < 1.0 {
            points.push(p);
        }
    }
    points.push(1.0);
    let head_value = integrate_with_points(head, &points, tol)?.value;

    let tail_decay = (-x).exp();
    if tail_decay == 0.0 {
        return Ok(head_value);
    }
    let u_lo = std::f64::consts::LN_2;
    let u_hi = (745.0 / x).ln_1p();
    if u_hi <= u_lo {
        return Ok(head_value);
    }
    // log(1 + y) = u and dy/y = du / (1 − e^{−u}).
    let tail = |u: f64| (-x * u.exp_m1()).exp() * u / (-(-u).exp_m1());
    let mid = (1.0 + 1.0 / x).ln().clamp(u_lo, u_hi);
    let tail_value = integrate_with_points(tail, &[u_lo, mid, u_hi], tol)?.value;
    Ok(head_value + tail_value)
}

/// L(x) = eˣE1(x) − 1 + x·G(x).
pub fn lower_bound_l(x: f64) -> Result<f64> {
    Ok(exp_integral_e1_scaled(x)? - 1.0 + x * meijer_g_special(x)?)
}
