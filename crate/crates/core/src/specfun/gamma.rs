//! Gamma function for complex arguments.
//!
//! Stirling's series with an upward shift for Re z ≥ 1/2 and the reflection
//! formula below that. The shifted helpers evaluate Γ(n + e) and 1/Γ(n + e)
//! for integer n and a separately stored offset e, which keeps full relative
//! accuracy next to the poles at the non-positive integers.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// ln √(2π)
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_406;

/// B_{2k} / (2k (2k − 1)) for k = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// Smallest modulus at which the Stirling tail is below 1e-20.
const STIRLING_MIN_MODULUS: f64 = 12.0;

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// sin(πz) with the real part reduced modulo 2 before scaling by π.
fn sin_pi(z: Complex64) -> Complex64 {
    let x = z.re % 2.0;
    let y = PI * z.im;
    let (s, c) = sin_cos_pi(x);
    Complex64::new(s * y.cosh(), c * y.sinh())
}

fn sin_cos_pi(x: f64) -> (f64, f64) {
    // Reduce to [-1/4, 1/4] around the nearest half integer.
    let n = (2.0 * x).round();
    let r = x - 0.5 * n;
    let (s, c) = (PI * r).sin_cos();
    match (n as i64).rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// ln Γ(z) by Stirling's series; requires Re z > 0 and |z| ≥ 12.
fn ln_gamma_stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + series
}

/// Γ(z) for Re z ≥ 1/2.
fn gamma_right(z: Complex64) -> Complex64 {
    let mut shifted = z;
    let mut product = Complex64::new(1.0, 0.0);
    while shifted.norm() < STIRLING_MIN_MODULUS {
        product *= shifted;
        shifted += 1.0;
    }
    ln_gamma_stirling(shifted).exp() / product
}

/// Γ(z) for complex z; errors at the poles z = 0, −1, −2, …
pub fn gamma_cx(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain {
            function: "gamma",
            detail: format!("non-finite argument {z}"),
        });
    }
    if is_pole(z) {
        return Err(Error::Pole {
            function: "gamma",
            at: format!("{z}"),
        });
    }
    if z.re >= 0.5 {
        Ok(gamma_right(z))
    } else {
        Ok(Complex64::new(PI, 0.0) / (sin_pi(z) * gamma_right(1.0 - z)))
    }
}

/// Reciprocal gamma 1/Γ(z); entire, so it returns 0 at the poles.
pub fn rgamma_cx(z: Complex64) -> Complex64 {
    if is_pole(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re >= 0.5 {
        gamma_right(z).inv()
    } else {
        sin_pi(z) * gamma_right(1.0 - z) / PI
    }
}

/// Rising product (n + e)(n + 1 + e)⋯ up to the first factor whose integer
/// part reaches 1; returns the product and the shift applied.
fn rising_to_positive(n: i64, e: Complex64) -> (Complex64, i64) {
    let mut product = Complex64::new(1.0, 0.0);
    let mut k = n;
    while (k as f64) + e.re < 0.5 {
        product *= Complex64::new(k as f64, 0.0) + e;
        k += 1;
    }
    (product, k)
}

/// 1/Γ(n + e) with the integer part held separately from the offset.
pub fn rgamma_shifted(n: i64, e: Complex64) -> Complex64 {
    let (product, k) = rising_to_positive(n, e);
    product * gamma_right(Complex64::new(k as f64, 0.0) + e).inv()
}

/// Γ(n + e) with the integer part held separately from the offset.
pub fn gamma_shifted(n: i64, e: Complex64) -> Result<Complex64> {
    let (product, k) = rising_to_positive(n, e);
    if product.norm() == 0.0 {
        return Err(Error::Pole {
            function: "gamma",
            at: format!("{n} + {e}"),
        });
    }
    Ok(gamma_right(Complex64::new(k as f64, 0.0) + e) / product)
}
