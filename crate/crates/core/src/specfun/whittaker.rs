//! Whittaker W_{a,b}(z) for a ∈ {0, 1, 2}, b real in [0, 1/2] or purely
//! imaginary, and real z > 0.
//!
//! Three evaluation regimes:
//!
//! * z ≤ 2: connection formula through the two Kummer series, with the
//!   gamma coefficients written in terms of d = 1/2 − b so that the
//!   removable singularity at b = 1/2 costs no accuracy. Near b = 0 the two
//!   terms cancel; there W is interpolated in b² (W is even and entire in b).
//! * 2 < z ≤ 40: Taylor-series continuation of the scaled function
//!   W̃ = e^{z/2}W inward from z = 40. Inward is the stable direction: the
//!   competing solution decays relative to W̃.
//! * z > 40: the asymptotic series, truncated at its smallest term.
//!
//! Outside the Kummer regime the computation depends on b only through the
//! real number b², so it never leaves real arithmetic.

use num_complex::Complex64;

use super::gamma::{gamma_shifted, rgamma_shifted};
use crate::error::{Error, Result};
use crate::model::SpectralIndex;

const Z_KUMMER_MAX: f64 = 2.0;
const Z_ASYMPTOTIC_MIN: f64 = 40.0;
/// Largest Taylor step as a fraction of the distance to the singular point 0.
const STEP_FRACTION: f64 = 0.45;
/// Below |b²| < this the connection formula is replaced by interpolation.
const B2_DEGENERATE: f64 = 1e-4;
const CLOSED_FORM_EPS: f64 = 1e-150;
const KUMMER_MAX_TERMS: usize = 10_000;
const TAYLOR_MAX_TERMS: usize = 600;

/// Indices (a, b) of W_{a,b}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WhittakerIndex {
    a: u8,
    b: Complex64,
}

impl WhittakerIndex {
    pub fn new(a: u8, b: Complex64) -> Result<Self> {
        if a > 2 {
            return Err(Error::InvalidParameter(format!(
                "first Whittaker index must be 0, 1 or 2, got {a}"
            )));
        }
        if !(b.re.is_finite() && b.im.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite index b = {b}")));
        }
        if b.re != 0.0 && b.im != 0.0 {
            return Err(Error::InvalidParameter(format!(
                "second Whittaker index must be real or purely imaginary, got {b}"
            )));
        }
        if b.im == 0.0 && !(0.0..=0.5).contains(&b.re) {
            return Err(Error::InvalidParameter(format!(
                "real second Whittaker index must lie in [0, 1/2], got {}",
                b.re
            )));
        }
        Ok(Self { a, b })
    }

    pub fn real(a: u8, b: f64) -> Result<Self> {
        Self::new(a, Complex64::new(b, 0.0))
    }

    pub fn imaginary(a: u8, beta: f64) -> Result<Self> {
        Self::new(a, Complex64::new(0.0, beta))
    }

    /// The index (a, ξ(λ)/2) attached to an eigenvalue candidate.
    pub fn from_spectral(a: u8, se: &SpectralIndex) -> Result<Self> {
        let b = se.whittaker_b();
        // ξ ≤ 1 holds exactly for λ ≤ 0; clamp guards the last ulp.
        let b = if se.is_real() {
            Complex64::new(b.re.min(0.5), 0.0)
        } else {
            b
        };
        Self::new(a, b)
    }

    pub fn a(&self) -> u8 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    /// b², real for every admissible b.
    pub fn b_squared(&self) -> f64 {
        b_squared(self.b)
    }
}

fn b_squared(b: Complex64) -> f64 {
    if b.im == 0.0 {
        b.re * b.re
    } else {
        -b.im * b.im
    }
}

fn check_argument(z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            function: "whittaker_w",
            detail: format!("argument must be positive and finite, got {z}"),
        })
    }
}

/// W_{a,b}(z).
pub fn whittaker_w(idx: WhittakerIndex, z: f64) -> Result<f64> {
    check_argument(z)?;
    if z <= Z_KUMMER_MAX {
        return kummer_regime(idx.a, idx.b, z);
    }
    Ok(scaled(idx.a, idx.b, z)? * (-0.5 * z).exp())
}

/// e^{z/2}·W_{a,b}(z), which stays O(z^a) for large z.
pub fn whittaker_w_scaled(idx: WhittakerIndex, z: f64) -> Result<f64> {
    check_argument(z)?;
    scaled(idx.a, idx.b, z)
}

/// W_{a,b}(z) for any real b with |b| < 1, including negative b and b just
/// above 1/2. Needed for numerical differentiation in b at b = 1/2.
pub fn whittaker_w_real_b(a: u8, b: f64, z: f64) -> Result<f64> {
    check_argument(z)?;
    if a > 2 || !(b.abs() < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "whittaker_w_real_b needs a ∈ {{0,1,2}} and |b| < 1, got a={a}, b={b}"
        )));
    }
    let b = Complex64::new(b, 0.0);
    if z <= Z_KUMMER_MAX {
        return kummer_regime(a, b, z);
    }
    Ok(scaled(a, b, z)? * (-0.5 * z).exp())
}

fn is_closed_form(b: Complex64) -> bool {
    b.im == 0.0 && (b.re.abs() - 0.5).abs() < CLOSED_FORM_EPS
}

/// e^{z/2}W_{a,±1/2}(z).
fn closed_form_scaled(a: u8, z: f64) -> f64 {
    match a {
        0 => 1.0,
        1 => z,
        _ => z * z - 2.0 * z,
    }
}

fn scaled(a: u8, b: Complex64, z: f64) -> Result<f64> {
    if is_closed_form(b) {
        return Ok(closed_form_scaled(a, z));
    }
    let kappa = f64::from(a);
    let b2 = b_squared(b);
    if z > Z_ASYMPTOTIC_MIN {
        Ok(asymptotic_scaled(kappa, b2, z).0)
    } else if z > Z_KUMMER_MAX {
        Ok(continuation_scaled(kappa, b2, z, Z_ASYMPTOTIC_MIN)?.0)
    } else {
        Ok(kummer_regime(a, b, z)? * (0.5 * z).exp())
    }
}

// ---------------------------------------------------------------------------
// Small z: Kummer connection formula.

/// Neumaier-compensated sum.
#[derive(Default, Clone, Copy)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// n + e with the integer part kept exact.
#[derive(Clone, Copy)]
struct Shifted {
    n: i64,
    e: Complex64,
}

impl Shifted {
    fn at(&self, k: usize) -> Complex64 {
        Complex64::new((self.n + k as i64) as f64, 0.0) + self.e
    }
}

/// Kummer's M(α, β, z) = Σ (α)_k / (β)_k · z^k / k!.
fn kummer_m(alpha: Shifted, beta: Shifted, z: f64) -> Result<Complex64> {
    let mut re = Compensated::default();
    let mut im = Compensated::default();
    let mut term = Complex64::new(1.0, 0.0);
    re.add(1.0);
    let alpha_size = alpha.at(0).norm();
    for k in 0..KUMMER_MAX_TERMS {
        term *= alpha.at(k) / beta.at(k) * (z / (k + 1) as f64);
        if term.re == 0.0 && term.im == 0.0 {
            return Ok(Complex64::new(re.value(), im.value()));
        }
        re.add(term.re);
        im.add(term.im);
        let sum = Complex64::new(re.value(), im.value());
        // Past k > |α| + z the term ratio is below one and shrinking.
        if (k as f64) > alpha_size + z + 1.0 && term.norm() <= 1e-17 * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        what: "Kummer series",
        iterations: KUMMER_MAX_TERMS,
        last: re.value(),
    })
}

/// W_{κ,b}(z) by the connection formula, with d = 1/2 − b:
///
/// W = Γ(2d−1)/Γ(d−κ) · z^{1−d} M(1−κ−d, 2−2d, z) e^{−z/2}
///   + Γ(1−2d)/Γ(1−κ−d) · z^{d} M(d−κ, 2d, z) e^{−z/2}.
fn kummer_connection(a: u8, b: Complex64, z: f64) -> Result<Complex64> {
    let kappa = i64::from(a);
    let d = Complex64::new(0.5, 0.0) - b;
    let c1 = gamma_shifted(-1, 2.0 * d)? * rgamma_shifted(-kappa, d);
    let c2 = gamma_shifted(1, -2.0 * d)? * rgamma_shifted(1 - kappa, -d);
    let m1 = kummer_m(
        Shifted { n: 1 - kappa, e: -d },
        Shifted { n: 2, e: -2.0 * d },
        z,
    )?;
    let m2 = kummer_m(Shifted { n: -kappa, e: d }, Shifted { n: 0, e: 2.0 * d }, z)?;
    let lz = z.ln();
    let t1 = c1 * ((1.0 - d) * lz).exp() * m1;
    let t2 = c2 * (d * lz).exp() * m2;
    Ok((t1 + t2) * (-0.5 * z).exp())
}

fn real_part_checked(v: Complex64) -> Result<f64> {
    if v.im.abs() > 1e-10 * (1.0 + v.re.abs()) {
        return Err(Error::Domain {
            function: "whittaker_w",
            detail: format!("imaginary residue {:e} on a real-valued result {}", v.im, v.re),
        });
    }
    Ok(v.re)
}

fn kummer_regime(a: u8, b: Complex64, z: f64) -> Result<f64> {
    if is_closed_form(b) {
        return Ok(closed_form_scaled(a, z) * (-0.5 * z).exp());
    }
    let b2 = b_squared(b);
    if b2.abs() >= B2_DEGENERATE {
        return real_part_checked(kummer_connection(a, b, z)?);
    }
    // Cubic Lagrange interpolation in s = b² through s ∈ {±η, ±2η}.
    let eta = B2_DEGENERATE;
    let nodes = [-2.0 * eta, -eta, eta, 2.0 * eta];
    let mut values = [0.0; 4];
    for (v, &s) in values.iter_mut().zip(&nodes) {
        let bj = if s > 0.0 {
            Complex64::new(s.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-s).sqrt())
        };
        *v = real_part_checked(kummer_connection(a, bj, z)?)?;
    }
    let mut out = 0.0;
    for i in 0..4 {
        let mut weight = 1.0;
        for j in 0..4 {
            if i != j {
                weight *= (b2 - nodes[j]) / (nodes[i] - nodes[j]);
            }
        }
        out += weight * values[i];
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Large z: asymptotic series, and the Taylor continuation seeded from it.

/// Scaled W̃ = z^κ Σ c_s z^{−s} and its derivative, truncated at the
/// smallest term.
fn asymptotic_scaled(kappa: f64, b2: f64, z: f64) -> (f64, f64) {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut dsum = kappa;
    for s in 0..1000 {
        let q = s as f64 + 0.5 - kappa;
        let next = -term * (q * q - b2) / ((s + 1) as f64 * z);
        if next == 0.0 || next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        dsum += (kappa - (s + 1) as f64) * term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    (z.powf(kappa) * sum, z.powf(kappa - 1.0) * dsum)
}

/// One Taylor step of z²W̃″ − z²W̃′ + (κz + c)W̃ = 0 from z0 to z0 + h.
/// Works with p_k = a_k h^k to keep the recurrence free of overflow.
fn taylor_step(kappa: f64, c: f64, z0: f64, w: f64, dw: f64, h: f64) -> Result<(f64, f64)> {
    let z0sq = z0 * z0;
    let mut p_prev = 0.0; // p_{k-1}
    let mut p_k = w;
    let mut p_next = dw * h;
    let mut value = Compensated::default();
    let mut deriv = Compensated::default();
    value.add(p_k);
    value.add(p_next);
    deriv.add(p_next);
    let mut small_run = 0;
    for k in 0..TAYLOR_MAX_TERMS {
        let kf = k as f64;
        let c_next = 2.0 * z0 * (kf + 1.0) * kf - z0sq * (kf + 1.0);
        let c_k = kf * (kf - 1.0) - 2.0 * z0 * kf + kappa * z0 + c;
        let c_prev = kappa - (kf - 1.0);
        let p_new = -(c_next * p_next * h + c_k * p_k * h * h + c_prev * p_prev * h * h * h)
            / (z0sq * (kf + 2.0) * (kf + 1.0));
        value.add(p_new);
        deriv.add((kf + 2.0) * p_new);
        p_prev = p_k;
        p_k = p_next;
        p_next = p_new;
        let scale = value.value().abs().max(f64::MIN_POSITIVE);
        if p_new.abs() <= 1e-18 * scale {
            small_run += 1;
            if small_run >= 3 {
                return Ok((value.value(), deriv.value() / h));
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::Convergence {
        what: "Whittaker Taylor continuation",
        iterations: TAYLOR_MAX_TERMS,
        last: value.value(),
    })
}

/// W̃ and W̃′ at z, continued inward from the asymptotic seed at `z_start`.
fn continuation_scaled(kappa: f64, b2: f64, z: f64, z_start: f64) -> Result<(f64, f64)> {
    let c = 0.25 - b2;
    let (mut w, mut dw) = asymptotic_scaled(kappa, b2, z_start);
    let mut z0 = z_start;
    while z0 > z {
        let full = z - z0;
        let limit = -STEP_FRACTION * z0;
        let (h, next) = if full >= limit { (full, z) } else { (limit, z0 + limit) };
        let (w1, dw1) = taylor_step(kappa, c, z0, w, dw, h)?;
        w = w1;
        dw = dw1;
        z0 = next;
    }
    Ok((w, dw))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    fn w(a: u8, b: f64, z: f64) -> f64 {
        whittaker_w(WhittakerIndex::real(a, b).unwrap(), z).unwrap()
    }

    fn wi(a: u8, beta: f64, z: f64) -> f64 {
        whittaker_w(WhittakerIndex::imaginary(a, beta).unwrap(), z).unwrap()
    }

    #[test]
    fn index_validation() {
        assert!(WhittakerIndex::real(3, 0.2).is_err());
        assert!(WhittakerIndex::real(1, 0.6).is_err());
        assert!(WhittakerIndex::real(1, -0.1).is_err());
        assert!(WhittakerIndex::new(1, Complex64::new(0.1, 0.1)).is_err());
        assert!(WhittakerIndex::imaginary(2, -3.0).is_ok());
        let idx = WhittakerIndex::real(0, 0.5).unwrap();
        assert!(whittaker_w(idx, 0.0).is_err());
        assert!(whittaker_w(idx, -1.0).is_err());
    }

    #[test]
    fn closed_forms_at_half() {
        assert!(rel(w(1, 0.5, 2.0), 2.0 * (-1.0f64).exp()) < 1e-15);
        assert!(rel(w(0, 0.5, 1.0), (-0.5f64).exp()) < 1e-15);
        for &z in &[0.01, 1.0, 5.0, 50.0] {
            assert!(rel(w(2, 0.5, z), (z * z - 2.0 * z) * (-0.5 * z).exp()) < 1e-14);
        }
    }

    #[test]
    fn near_half_is_continuous() {
        // The connection formula must not lose accuracy as b → 1/2.
        for &z in &[0.1, 1.0, 1.9] {
            for &a in &[0u8, 1, 2] {
                let exact = closed_form_scaled(a, z) * (-0.5 * z).exp();
                let near = w(a, 0.5 - 1e-12, z);
                assert!((near - exact).abs() < 1e-11 * (1.0 + exact.abs()), "a={a} z={z}");
            }
        }
    }

    /// 30-digit references.
    #[test]
    fn reference_values() {
        let real = [
            (1, 0.3, 1.0, 0.514_637_489_932_397_53),
            (0, 0.2, 1.0, 0.534_435_509_443_073_25),
            (2, 0.1, 0.5, -0.487_786_116_492_369_23),
            (1, 0.45, 2.5, 0.702_758_775_784_796_39),
            (2, 0.35, 7.0, 1.034_029_631_256_514_9),
            (0, 0.05, 15.0, 5.445_626_558_544_535e-4),
            (1, 0.2, 39.0, 1.318_206_951_160_808_8e-7),
            (1, 0.2, 41.0, 5.099_439_611_021_239_7e-8),
            (2, 0.4, 120.0, 1.238_984_454_283_829e-22),
            (1, 0.005, 0.7, 0.335_530_377_509_737_11),
            (2, 0.0, 1.0, -0.597_660_315_537_905_78),
        ];
        for (a, b, z, v) in real {
            let got = w(a, b, z);
            assert!(rel(got, v) < 1e-12, "W({a},{b},{z}) = {got}, want {v}");
        }
        let imag = [
            (1, 0.5, 0.3, -0.034_292_468_319_579_932),
            (0, 1.2, 1.8, 0.203_016_994_042_889_09),
            (2, 0.8, 4.0, 0.763_815_451_435_239_15),
            (1, 2.0, 25.0, 7.857_232_639_230_415e-5),
            (1, 0.005, 3.0, 0.615_523_800_199_238_02),
        ];
        for (a, beta, z, v) in imag {
            let got = wi(a, beta, z);
            assert!(rel(got, v) < 1e-11, "W({a},{beta}i,{z}) = {got}, want {v}");
        }
    }

    #[test]
    fn scaled_matches_unscaled() {
        let idx = WhittakerIndex::real(1, 0.2).unwrap();
        let v = whittaker_w_scaled(idx, 41.0).unwrap();
        assert!(rel(v, 40.790_528_487_607_339) < 1e-13);
        for &z in &[0.3, 3.0, 30.0] {
            let s = whittaker_w_scaled(idx, z).unwrap();
            let u = whittaker_w(idx, z).unwrap();
            assert!(rel(s * (-0.5 * z).exp(), u) < 1e-14);
        }
    }

    /// Independent oracle: RK4 on the unscaled Whittaker equation, started
    /// from the two-term asymptotic form at z = 80 and integrated inward.
    #[test]
    fn matches_inward_rk4_from_z80() {
        let (kappa, b, target) = (1.0, 0.3, 1.0);
        let q = |z: f64| -0.25 + kappa / z + (0.25 - b * b) / (z * z);
        // W and W' from the scaled series at 80 (error ~ e^{-80}).
        let z0 = 80.0f64;
        let (ws, dws) = asymptotic_scaled(kappa, b * b, z0);
        let e = (-0.5 * z0).exp();
        let mut y = [ws * e, (dws - 0.5 * ws) * e];
        let n = 200_000;
        let h = (target - z0) / n as f64;
        let mut z = z0;
        let f = |z: f64, y: [f64; 2]| [y[1], -q(z) * y[0]];
        for _ in 0..n {
            let k1 = f(z, y);
            let k2 = f(z + 0.5 * h, [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
            let k3 = f(z + 0.5 * h, [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
            let k4 = f(z + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
            for i in 0..2 {
                y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
            z += h;
        }
        assert!(rel(w(1, 0.3, 1.0), y[0]) < 1e-9, "{} vs {}", w(1, 0.3, 1.0), y[0]);
    }

    #[test]
    fn sign_symmetry_in_b() {
        for &a in &[0u8, 1, 2] {
            for &b in &[0.05, 0.2, 0.37, 0.49] {
                for &z in &[0.05, 0.8, 1.7] {
                    let p = whittaker_w_real_b(a, b, z).unwrap();
                    let m = whittaker_w_real_b(a, -b, z).unwrap();
                    assert!((p - m).abs() <= 1e-11 * p.abs().max(1e-300), "a={a} b={b} z={z}");
                }
            }
            for &beta in &[0.3, 1.5] {
                for &z in &[0.4, 1.2] {
                    let p = wi(a, beta, z);
                    let m = wi(a, -beta, z);
                    assert!((p - m).abs() <= 1e-11 * p.abs(), "a={a} beta={beta} z={z}");
                }
            }
        }
    }

    #[test]
    fn ode_residual_is_small() {
        let cases: [(u8, Complex64); 4] = [
            (0, Complex64::new(0.15, 0.0)),
            (1, Complex64::new(0.42, 0.0)),
            (2, Complex64::new(0.0, 0.7)),
            (1, Complex64::new(0.0, 0.001)),
        ];
        for (a, b) in cases {
            let idx = WhittakerIndex::new(a, b).unwrap();
            let b2 = idx.b_squared();
            for &z in &[0.2f64, 1.5, 2.5, 9.0, 35.0] {
                let h = 1e-2 * z.min(1.0);
                let f = |x: f64| whittaker_w(idx, x).unwrap();
                let f0 = f(z);
                let second = (-f(z + 2.0 * h) + 16.0 * f(z + h) - 30.0 * f0 + 16.0 * f(z - h)
                    - f(z - 2.0 * h))
                    / (12.0 * h * h);
                let coeff = -0.25 + f64::from(a) / z + (0.25 - b2) / (z * z);
                let scale = second.abs() + (coeff * f0).abs();
                assert!((second + coeff * f0).abs() <= 1e-6 * scale, "a={a} b={b} z={z}");
            }
        }
    }

    #[test]
    fn branches_agree_near_switch_points() {
        for &(kappa, b2) in &[(0.0, 0.04), (1.0, 0.2025), (2.0, -0.36), (1.0, 0.0)] {
            let b = if b2 >= 0.0 {
                Complex64::new(f64::sqrt(b2), 0.0)
            } else {
                Complex64::new(0.0, (-b2).sqrt())
            };
            for &z in &[1.5, 1.8, 2.0, 2.2, 2.6, 3.0] {
                let k = kummer_regime(kappa as u8, b, z).unwrap() * (0.5 * z).exp();
                let c = continuation_scaled(kappa, b2, z, Z_ASYMPTOTIC_MIN).unwrap().0;
                assert!(rel(c, k) < 1e-11, "kappa={kappa} b2={b2} z={z}: {c} vs {k}");
            }
            for &z in &[35.0, 38.0, 40.0, 42.0, 45.0] {
                let asym = asymptotic_scaled(kappa, b2, z).0;
                let cont = continuation_scaled(kappa, b2, z, 90.0).unwrap().0;
                assert!(rel(cont, asym) < 1e-12, "kappa={kappa} b2={b2} z={z}");
            }
        }
    }

    #[test]
    fn degenerate_index_is_smooth_across_zero() {
        // Interpolated values near b = 0 agree with the direct connection
        // formula just outside the interpolation window.
        for &a in &[0u8, 1, 2] {
            let direct = real_part_checked(
                kummer_connection(a, Complex64::new(0.011, 0.0), 0.9).unwrap(),
            )
            .unwrap();
            let interp = w(a, 0.011, 0.9);
            assert!(rel(interp, direct) < 1e-12);
            let z0 = w(a, 0.0, 0.9);
            let zi = wi(a, 1e-7, 0.9);
            assert!(rel(zi, z0) < 1e-12);
        }
    }

    #[test]
    fn small_argument_law() {
        use super::super::gamma::gamma_cx;
        let z = 1e-6f64;
        for &b in &[0.35, 0.4, 0.45] {
            let lhs = z.powf(b - 0.5) * (0.5 * z).exp() * w(0, b, z);
            let rhs = (gamma_cx(Complex64::new(2.0 * b, 0.0)).unwrap()
                / gamma_cx(Complex64::new(b + 0.5, 0.0)).unwrap())
            .re;
            assert!(rel(lhs, rhs) < 1e-4, "b={b}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn contiguous_recurrence() {
        // W_{κ+1} + (2κ − z) W_κ + (κ − b − 1/2)(κ + b − 1/2) W_{κ−1} = 0 at κ = 1.
        for &b in &[0.1, 0.33] {
            for &z in &[0.3, 1.9, 6.0, 60.0] {
                let (w0, w1, w2) = (w(0, b, z), w(1, b, z), w(2, b, z));
                let r = w2 + (2.0 - z) * w1 + (0.5 - b) * (0.5 + b) * w0;
                let scale = w2.abs() + ((2.0 - z) * w1).abs() + w0.abs();
                assert!(r.abs() <= 1e-12 * scale, "b={b} z={z}");
            }
        }
    }

    #[test]
    fn eigenvalue_root_from_published_row() {
        // λ = −0.058856148622 (μ = 1, A = 20) is a root of W_{1,ξ/2}(1/10).
        let se = SpectralIndex::new(-0.058_856_148_622, 1.0).unwrap();
        let idx = WhittakerIndex::from_spectral(1, &se).unwrap();
        assert!(whittaker_w(idx, 0.1).unwrap().abs() < 1e-9);
    }
}
