//! The exact quasi-stationary law: pdf, cdf, moments, mode and the boundary
//! flux, all expressed through Whittaker functions at u = 2/(μ²x).

use serde::Serialize;

use crate::eigensolver::{dominant_eigenvalue, EigenResult};
use crate::error::{Error, Result};
use crate::model::{ModelParams, SpectralIndex};
use crate::quadrature::{integrate_with_points, Tolerance};
use crate::roots::brent;
use crate::specfun::{whittaker_w_scaled, WhittakerIndex};

pub const MAX_MOMENT_ORDER: usize = 50;
const MODE_SCAN_NODES: usize = 256;
const MODE_MAX_NODES: usize = 4096;

/// Handle for everything derived from (μ, A, λ): holds the normalizing
/// denominator e^{−1/(μ²A)}·W_{0,ξ/2}(2/(μ²A)).
#[derive(Debug, Clone, Copy)]
pub struct QsdSolution {
    params: ModelParams,
    se: SpectralIndex,
    denom: f64,
    eigen: Option<EigenResult>,
}

/// Solve for λ_A and assemble the solution.
pub fn build_solution(params: &ModelParams, tol: f64) -> Result<QsdSolution> {
    let eigen = dominant_eigenvalue(params, tol)?;
    let mut sol = QsdSolution::with_eigenvalue(params, eigen.lambda)?;
    sol.eigen = Some(eigen);
    Ok(sol)
}

impl QsdSolution {
    /// Assemble the pdf/cdf formulas around an arbitrary λ ≤ 0. Only the
    /// dominant eigenvalue yields a proper density; other values are used
    /// by the large-A approximations.
    pub fn with_eigenvalue(params: &ModelParams, lambda: f64) -> Result<Self> {
        let se = SpectralIndex::for_params(lambda, params)?;
        let u = params.threshold_arg();
        let denom = (-u).exp() * whittaker_w_scaled(WhittakerIndex::from_spectral(0, &se)?, u)?;
        if !(denom > 0.0) {
            return Err(Error::Domain {
                function: "QSD normalization",
                detail: format!("non-positive denominator {denom} at lambda = {lambda}"),
            });
        }
        Ok(Self {
            params: *params,
            se,
            denom,
            eigen: None,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn lambda(&self) -> f64 {
        self.se.lambda()
    }

    pub fn spectral_index(&self) -> &SpectralIndex {
        &self.se
    }

    pub fn denom(&self) -> f64 {
        self.denom
    }

    /// Solver diagnostics when built by [`build_solution`].
    pub fn eigen(&self) -> Option<&EigenResult> {
        self.eigen.as_ref()
    }

    fn w_scaled(&self, a: u8, u: f64) -> f64 {
        // Indices were validated at construction and u > 0 here.
        WhittakerIndex::from_spectral(a, &self.se)
            .and_then(|idx| whittaker_w_scaled(idx, u))
            .unwrap_or(f64::NAN)
    }

    fn inside(&self, x: f64) -> bool {
        x > 0.0 && x < self.params.threshold()
    }

    /// q_A(x) = (1/x)·e^{−1/(μ²x)}·W_{1,ξ/2}(2/(μ²x)) / denom on (0, A), zero
    /// elsewhere.
    pub fn pdf(&self, x: f64) -> f64 {
        if !self.inside(x) {
            return 0.0;
        }
        let u = self.params.whittaker_arg(x);
        let w = self.w_scaled(1, u);
        if w <= 0.0 {
            return 0.0;
        }
        (w.ln() - u - x.ln() - self.denom.ln()).exp()
    }

    /// ln q_A(x); −∞ where the density vanishes. Resolves the super-
    /// exponentially small values near x = 0 that [`pdf`](Self::pdf) flushes to zero.
    pub fn log_pdf(&self, x: f64) -> f64 {
        if !self.inside(x) {
            return f64::NEG_INFINITY;
        }
        let u = self.params.whittaker_arg(x);
        let w = self.w_scaled(1, u);
        if w <= 0.0 {
            return f64::NEG_INFINITY;
        }
        w.ln() - u - x.ln() - self.denom.ln()
    }

    /// q′_A(x) = e^{−1/(μ²x)}·W_{2,ξ/2}(2/(μ²x)) / (x²·denom).
    pub fn pdf_derivative(&self, x: f64) -> f64 {
        if !(x > 0.0 && x <= self.params.threshold()) {
            return 0.0;
        }
        let u = self.params.whittaker_arg(x);
        let w = self.w_scaled(2, u);
        if w == 0.0 {
            return 0.0;
        }
        w.signum() * (w.abs().ln() - u - 2.0 * x.ln() - self.denom.ln()).exp()
    }

    /// Q_A(x): 0 for x ≤ 0, 1 for x ≥ A, e^{−1/(μ²x)}·W_{0,ξ/2}(2/(μ²x))/denom between.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x >= self.params.threshold() {
            return 1.0;
        }
        let u = self.params.whittaker_arg(x);
        let w = self.w_scaled(0, u);
        if w <= 0.0 {
            return 0.0;
        }
        (w.ln() - u - self.denom.ln()).exp()
    }

    /// Breakpoints for quadrature over (0, A): the bulk sits on the 1/μ²
    /// scale, and the density is flat to all orders at 0.
    pub fn quadrature_points(&self) -> Vec<f64> {
        let a = self.params.threshold();
        let s = 1.0 / self.params.mu_sq();
        let mut pts = vec![0.0];
        for k in [0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0, 1000.0] {
            let p = k * s;
            if p < 0.999 * a {
                pts.push(p);
            }
        }
        pts.push(a);
        pts
    }

    /// ∫₀^A x^n q_A(x) dx by adaptive quadrature.
    pub fn moment_by_quadrature(&self, n: u32, tol: Tolerance) -> Result<f64> {
        let f = |x: f64| if x <= 0.0 { 0.0 } else { x.powi(n as i32) * self.pdf(x) };
        Ok(integrate_with_points(f, &self.quadrature_points(), tol)?.value)
    }

    /// ∫ q_A over [a, b] ⊂ [0, A].
    pub fn mass_between(&self, a: f64, b: f64, tol: Tolerance) -> Result<f64> {
        let a = a.max(0.0);
        let b = b.min(self.params.threshold());
        if b <= a {
            return Ok(0.0);
        }
        let mut pts = vec![a];
        pts.extend(self.quadrature_points().into_iter().filter(|&p| p > a && p < b));
        pts.push(b);
        Ok(integrate_with_points(|x| self.pdf(x), &pts, tol)?.value)
    }

    /// M₀..M_{n_max} from the forward recurrence
    /// M_n = (−λAⁿ − n·M_{n−1}) / (μ²n(n−1)/2 − λ).
    pub fn moments(&self, n_max: usize) -> Result<MomentSeries> {
        if n_max > MAX_MOMENT_ORDER {
            return Err(Error::MomentOrder {
                requested: n_max,
                max: MAX_MOMENT_ORDER,
            });
        }
        let lambda = self.lambda();
        let mu2 = self.params.mu_sq();
        let a = self.params.threshold();
        let mut m = Vec::with_capacity(n_max + 1);
        m.push(1.0);
        for n in 1..=n_max {
            let nf = n as f64;
            let den = 0.5 * mu2 * nf * (nf - 1.0) - lambda;
            m.push((-lambda * a.powi(n as i32) - nf * m[n - 1]) / den);
        }
        Ok(MomentSeries {
            moments: m,
            lambda,
            mu_sq: mu2,
            threshold: a,
        })
    }

    /// E[Z] = A + 1/λ.
    pub fn mean(&self) -> f64 {
        self.params.threshold() + 1.0 / self.lambda()
    }

    /// Var[Z] = −(μ²(A + 1/λ)² + 1/λ)/(μ² − λ).
    pub fn variance(&self) -> f64 {
        let l = self.lambda();
        let mu2 = self.params.mu_sq();
        let m1 = self.mean();
        -(mu2 * m1 * m1 + 1.0 / l) / (mu2 - l)
    }

    /// The unique zero of q′ in (0, A), i.e. of W_{2,ξ/2}(2/(μ²x)).
    pub fn mode(&self) -> Result<f64> {
        let a = self.params.threshold();
        let lo = 1e-9 * a.min(1.0 / self.params.mu_sq());
        let g = |x: f64| -> Result<f64> {
            let u = self.params.whittaker_arg(x);
            whittaker_w_scaled(WhittakerIndex::from_spectral(2, &self.se)?, u)
        };
        let mut nodes = MODE_SCAN_NODES;
        loop {
            // Geometric grid: the mode may sit anywhere from O(1/μ²) to O(A).
            let ratio = (a / lo).powf(1.0 / nodes as f64);
            let mut x_prev = lo;
            let mut g_prev = g(x_prev)?;
            for i in 1..=nodes {
                let x = if i == nodes { a } else { lo * ratio.powi(i as i32) };
                let gx = g(x)?;
                if g_prev > 0.0 && gx <= 0.0 {
                    let root = brent(g, x_prev, x, g_prev, gx, 1e-15 * a, 200)?;
                    return Ok(root.x);
                }
                x_prev = x;
                g_prev = gx;
            }
            if nodes >= MODE_MAX_NODES {
                return Err(Error::ModeResolution { nodes });
            }
            nodes *= 2;
        }
    }

    /// A²·(μ²/2)·q′(A) by a one-sided four-point difference with step 1e-5·A.
    /// Equals λ for the dominant eigenvalue.
    pub fn boundary_flux_identity(&self) -> f64 {
        let a = self.params.threshold();
        let h = 1e-5 * a;
        // q(A) = 0 is part of the stencil.
        let d = (-18.0 * self.pdf(a - h) + 9.0 * self.pdf(a - 2.0 * h) - 2.0 * self.pdf(a - 3.0 * h))
            / (6.0 * h);
        a * a * 0.5 * self.params.mu_sq() * d
    }
}

/// M₀..M_n of the quasi-stationary law.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentSeries {
    pub moments: Vec<f64>,
    lambda: f64,
    mu_sq: f64,
    threshold: f64,
}

impl MomentSeries {
    pub fn get(&self, n: usize) -> Option<f64> {
        self.moments.get(n).copied()
    }

    pub fn variance(&self) -> Option<f64> {
        Some(self.get(2)? - self.get(1)?.powi(2))
    }

    /// M_n[μ²n(n−1)/2 − λ] + n·M_{n−1} + λAⁿ, which the recurrence zeroes.
    pub fn recurrence_residual(&self, n: usize) -> Option<f64> {
        if n == 0 {
            return None;
        }
        let nf = n as f64;
        let mn = self.get(n)?;
        let prev = self.get(n - 1)?;
        Some(
            mn * (0.5 * self.mu_sq * nf * (nf - 1.0) - self.lambda)
                + nf * prev
                + self.lambda * self.threshold.powi(n as i32),
        )
    }

    /// Magnitude against which [`recurrence_residual`](Self::recurrence_residual) is judged.
    pub fn recurrence_scale(&self, n: usize) -> Option<f64> {
        let nf = n as f64;
        Some(
            (self.get(n)? * (0.5 * self.mu_sq * nf * (nf - 1.0) - self.lambda)).abs()
                + (nf * self.get(n - 1)?).abs()
                + (self.lambda * self.threshold.powi(n as i32)).abs(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensolver::DEFAULT_TOL;

    fn solve(mu: f64, a: f64) -> QsdSolution {
        build_solution(&ModelParams::new(mu, a).unwrap(), DEFAULT_TOL).unwrap()
    }

    #[test]
    fn reference_pdf_value() {
        // Independent 30-digit evaluation at μ = 1, A = 20.
        let s = solve(1.0, 20.0);
        assert!((s.denom() - 0.708_857_358_218_753_28).abs() < 1e-12);
        assert!((s.pdf(5.0) - 0.055_010_444_396_763_658).abs() < 1e-12);
    }

    #[test]
    fn boundary_values() {
        let s = solve(1.0, 20.0);
        assert_eq!(s.pdf(0.0), 0.0);
        assert_eq!(s.pdf(20.0), 0.0);
        assert_eq!(s.pdf(-3.0), 0.0);
        assert_eq!(s.pdf(25.0), 0.0);
        assert_eq!(s.cdf(20.0), 1.0);
        assert_eq!(s.cdf(0.0), 0.0);
        assert!(s.pdf(1e-3) < 1e-300);
        assert!(s.log_pdf(1e-3) < -1900.0 && s.log_pdf(1e-3).is_finite());
    }

    #[test]
    fn analytic_slope_matches_finite_difference() {
        let s = solve(1.5, 20.0);
        for &x in &[0.3, 1.0, 4.0, 12.0, 19.0] {
            let h = 1e-5 * 20.0;
            let fd = (s.pdf(x + h) - s.pdf(x - h)) / (2.0 * h);
            let an = s.pdf_derivative(x);
            assert!((fd - an).abs() < 1e-6 * (1.0 + an.abs()), "x={x}: {fd} vs {an}");
        }
        assert!(s.pdf_derivative(1e-4).abs() < 1e-300);
    }

    #[test]
    fn denominator_tends_to_one() {
        assert!((solve(1.0, 10_000.0).denom() - 1.0).abs() < 1e-2);
    }

    #[test]
    fn moments_reduce_to_closed_forms() {
        let s = solve(1.0, 20.0);
        let m = s.moments(20).unwrap();
        assert!((m.get(1).unwrap() - s.mean()).abs() < 1e-12 * s.mean());
        assert!((m.variance().unwrap() - s.variance()).abs() < 1e-10 * s.variance());
        assert!(s.variance() > 0.0);
        for n in 1..=20 {
            let r = m.recurrence_residual(n).unwrap();
            assert!(r.abs() <= 1e-12 * m.recurrence_scale(n).unwrap(), "n={n}");
        }
        assert!(matches!(s.moments(51), Err(Error::MomentOrder { .. })));
    }

    #[test]
    fn mode_is_a_stationary_point() {
        let s = solve(1.0, 20.0);
        let x = s.mode().unwrap();
        let h = 1e-5 * 20.0;
        let slope = (s.pdf(x + h) - s.pdf(x - h)) / (2.0 * h);
        assert!(slope.abs() < 1e-6 * s.pdf(x) / x);
        assert!(s.pdf(x) > s.pdf(0.99 * x) && s.pdf(x) > s.pdf(1.01 * x));
    }

    #[test]
    fn flux_identity() {
        let s = solve(1.0, 20.0);
        let flux = s.boundary_flux_identity();
        assert!((flux / s.lambda() - 1.0).abs() < 1e-5, "{flux}");
        assert!(s.pdf_derivative(20.0) < 0.0);
    }
}
