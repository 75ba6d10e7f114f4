//! Finite-volume discretization of (μ²/2)(x²m φ′)′ = λ m φ on (0, A).
//!
//! Since (μ²/2)x²m(x) = H(x) = e^{−2/(μ²x)}, the flux through a face is
//! H(face)·Δφ/Δx and the mass of a cell is the exact increment of H across
//! it. Both vanish super-exponentially at 0, so the symmetrized tridiagonal
//! matrix W^{−1/2}KW^{−1/2} is assembled from logarithms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::specfun::log_speed_density;

#[derive(Debug, Clone, Serialize)]
pub struct GridSolution {
    /// Nodes x_i = A(i/n)², i = 0..=n, so both 0 and A are included.
    pub grid: Vec<f64>,
    pub lambda_hat: f64,
    /// Density m·φ normalized by the trapezoid rule; zero at both ends.
    pub q_hat: Vec<f64>,
    pub bisection_steps: usize,
}

impl GridSolution {
    /// Piecewise-linear interpolation of q̂; zero outside the grid.
    pub fn interpolate(&self, x: f64) -> f64 {
        let g = &self.grid;
        if !(x >= g[0] && x <= g[g.len() - 1]) {
            return 0.0;
        }
        let j = g.partition_point(|&v| v <= x).clamp(1, g.len() - 1);
        let t = (x - g[j - 1]) / (g[j] - g[j - 1]);
        self.q_hat[j - 1] + t * (self.q_hat[j] - self.q_hat[j - 1])
    }

    pub fn trapezoid_mass(&self) -> f64 {
        trapezoid(&self.grid, &self.q_hat)
    }
}

fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| 0.5 * (ys[0] + ys[1]) * (xs[1] - xs[0]))
        .sum()
}

/// Symmetric tridiagonal matrix: diagonal `d`, off-diagonal `e`.
struct Tridiagonal {
    d: Vec<f64>,
    e: Vec<f64>,
}

impl Tridiagonal {
    /// Number of eigenvalues strictly below `sigma` (Sturm count).
    fn count_below(&self, sigma: f64) -> usize {
        let mut count = 0;
        let mut q = self.d[0] - sigma;
        for i in 0..self.d.len() {
            if i > 0 {
                q = (self.d[i] - sigma) - self.e[i - 1] * self.e[i - 1] / q;
            }
            if q == 0.0 {
                q = -f64::EPSILON * (self.d[i].abs() + sigma.abs()).max(f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin_lower(&self) -> f64 {
        let n = self.d.len();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.e[i - 1].abs() } else { 0.0 };
                let right = if i + 1 < n { self.e[i].abs() } else { 0.0 };
                self.d[i] - left - right
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Solve (T − σI)y = b by LU with partial pivoting.
    fn solve_shifted(&self, sigma: f64, b: &[f64]) -> Vec<f64> {
        let n = self.d.len();
        let mut diag: Vec<f64> = self.d.iter().map(|v| v - sigma).collect();
        let mut upper: Vec<f64> = self.e.clone();
        let mut upper2 = vec![0.0; n.saturating_sub(2)];
        let mut lower: Vec<f64> = self.e.clone();
        let mut rhs = b.to_vec();
        let tiny = f64::EPSILON * self.d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for i in 0..n - 1 {
            if lower[i].abs() > diag[i].abs() {
                // Swap rows i and i + 1.
                let (di, ui) = (diag[i], upper[i]);
                diag[i] = lower[i];
                upper[i] = diag[i + 1];
                diag[i + 1] = ui;
                if i + 2 < n {
                    upper2[i] = upper[i + 1];
                    upper[i + 1] = 0.0;
                }
                lower[i] = di;
                rhs.swap(i, i + 1);
            }
            if diag[i] == 0.0 {
                diag[i] = tiny;
            }
            let f = lower[i] / diag[i];
            diag[i + 1] -= f * upper[i];
            if i + 2 < n {
                upper[i + 1] -= f * upper2[i];
            }
            rhs[i + 1] -= f * rhs[i];
        }
        if diag[n - 1] == 0.0 {
            diag[n - 1] = tiny;
        }
        let mut y = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = rhs[i];
            if i + 1 < n {
                s -= upper[i] * y[i + 1];
            }
            if i + 2 < n {
                s -= upper2[i] * y[i + 2];
            }
            y[i] = s / diag[i];
        }
        y
    }
}

/// yᵀTy/yᵀy written as −Σ c_i(φ_{i+1} − φ_i)²/Σ y_i² with φ = W^{−1/2}y:
/// a sum of same-sign terms, so none of the O(1/Δx²) cancellation that
/// limits the diagonal form.
fn rayleigh_quotient(log_c: &[f64], log_w: &[f64], y: &[f64]) -> f64 {
    let n = y.len();
    let mut energy = 0.0;
    for i in 0..n {
        let here = (0.5 * (log_c[i] - log_w[i])).exp() * y[i];
        let next = if i + 1 < n {
            (0.5 * (log_c[i] - log_w[i + 1])).exp() * y[i + 1]
        } else {
            0.0
        };
        energy += (next - here).powi(2);
    }
    -energy / y.iter().map(|v| v * v).sum::<f64>()
}

/// Largest eigenvalue of the discretized problem and its density.
pub fn sturm_liouville_eigen(params: &ModelParams, n_grid: usize) -> Result<GridSolution> {
    if n_grid < 100 {
        return Err(Error::InvalidParameter(format!(
            "n_grid must be at least 100, got {n_grid}"
        )));
    }
    let a = params.threshold();
    let n = n_grid;
    let grid: Vec<f64> = (0..=n)
        .map(|i| {
            let t = i as f64 / n as f64;
            a * t * t
        })
        .collect();
    let log_h = |x: f64| if x <= 0.0 { f64::NEG_INFINITY } else { -params.whittaker_arg(x) };

    // Unknowns φ_0..φ_{n−1}; φ_n = 0.
    let faces: Vec<f64> = (0..n).map(|i| 0.5 * (grid[i] + grid[i + 1])).collect();
    let log_c: Vec<f64> = (0..n)
        .map(|i| log_h(faces[i]) - (grid[i + 1] - grid[i]).ln())
        .collect();
    let log_w: Vec<f64> = (0..n)
        .map(|i| {
            let hi = log_h(faces[i]);
            let lo = if i == 0 { f64::NEG_INFINITY } else { log_h(faces[i - 1]) };
            hi + (-(lo - hi).exp_m1()).ln()
        })
        .collect();
    let d: Vec<f64> = (0..n)
        .map(|i| {
            let left = if i == 0 { 0.0 } else { (log_c[i - 1] - log_w[i]).exp() };
            -(left + (log_c[i] - log_w[i]).exp())
        })
        .collect();
    let e: Vec<f64> = (0..n - 1)
        .map(|i| (log_c[i] - 0.5 * (log_w[i] + log_w[i + 1])).exp())
        .collect();
    let t = Tridiagonal { d, e };

    // Bisection for the largest eigenvalue: count_below(hi) = n, count_below(lo) < n.
    let mut lo = t.gershgorin_lower();
    let mut hi = 0.0;
    if t.count_below(hi) != n {
        return Err(Error::EigenIteration {
            trace: format!(
                "expected all {n} eigenvalues below 0, Sturm count gives {}",
                t.count_below(hi)
            ),
        });
    }
    let mut steps = 0;
    while steps < 400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 4.0 * f64::EPSILON * hi.abs().max(lo.abs()) {
            break;
        }
        if t.count_below(mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
        steps += 1;
    }
    let shift = 0.5 * (lo + hi);

    // Inverse iteration for the eigenvector.
    let mut y = vec![1.0 / (n as f64).sqrt(); n];
    let mut trace = Vec::new();
    for it in 0..4 {
        let z = t.solve_shifted(shift, &y);
        let norm = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::EigenIteration {
                trace: format!("inverse iteration {it}: degenerate norm {norm}; history {trace:?}"),
            });
        }
        let next: Vec<f64> = z.iter().map(|v| v / norm).collect();
        let change = next
            .iter()
            .zip(&y)
            .map(|(a, b)| (a.abs() - b.abs()).abs())
            .fold(0.0, f64::max);
        trace.push(change);
        y = next;
    }
    let sign = if y.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
    // Bisection only locates λ to about ε‖T‖ (the diagonal next to 0 is
    // huge); the Rayleigh quotient of the eigenvector is far sharper.
    let lambda_hat = rayleigh_quotient(&log_c, &log_w, &y);

    // q_i = m(x_i)·φ_i with φ_i = y_i·w_i^{−1/2}, in logarithms.
    let mut q_hat = vec![0.0; n + 1];
    for i in 1..n {
        let yi = sign * y[i];
        if yi != 0.0 {
            let log_q = log_speed_density(grid[i], params) - 0.5 * log_w[i] + yi.abs().ln();
            q_hat[i] = yi.signum() * log_q.exp();
        }
    }
    let mass = trapezoid(&grid, &q_hat);
    if !(mass.is_finite() && mass > 0.0) {
        return Err(Error::EigenIteration {
            trace: format!("eigenvector has non-positive mass {mass}; history {trace:?}"),
        });
    }
    for q in &mut q_hat {
        *q /= mass;
    }
    Ok(GridSolution {
        grid,
        lambda_hat,
        q_hat,
        bisection_steps: steps,
    })
}
