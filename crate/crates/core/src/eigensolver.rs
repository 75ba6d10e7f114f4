//! The dominant eigenvalue λ_A: the largest root of
//! g(λ) = W_{1,ξ(λ)/2}(2/(μ²A)) inside the bracket implied by Var[Z] ≥ 0.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ModelParams, SpectralIndex};
use crate::roots::brent;
use crate::specfun::{whittaker_w_scaled, WhittakerIndex};

pub const DEFAULT_TOL: f64 = 1e-13;
const DEFAULT_SCAN_NODES: usize = 64;
const MAX_SCAN_NODES: usize = 1024;
/// Largest |W₁| accepted at a returned root.
pub const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenBracket {
    pub lo: f64,
    pub hi: f64,
}

impl EigenBracket {
    pub fn contains(&self, lambda: f64) -> bool {
        self.lo <= lambda && lambda <= self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenResult {
    pub lambda: f64,
    pub residual: f64,
    pub iterations: usize,
    pub bracket: EigenBracket,
}

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Absolute tolerance on λ.
    pub tol: f64,
    pub scan_nodes: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            scan_nodes: DEFAULT_SCAN_NODES,
        }
    }
}

/// Bounds on λ_A from M₁ = A + 1/λ and Var[Z] ≥ 0.
pub fn eigen_bracket(params: &ModelParams) -> EigenBracket {
    let mu2 = params.mu_sq();
    let a = params.threshold();
    let root = (4.0 * mu2 * a + 1.0).sqrt();
    let scale = 2.0 * mu2 * a * a;
    EigenBracket {
        lo: -1.0 / a - (1.0 + root) / scale,
        hi: -1.0 / a - (1.0 - root) / scale,
    }
}

/// g(λ) = e^{u/2}·W_{1,ξ(λ)/2}(u) at u = 2/(μ²A). The positive factor e^{u/2}
/// does not move the roots.
pub fn eigen_function_value(lambda: f64, params: &ModelParams) -> Result<f64> {
    let se = SpectralIndex::for_params(lambda, params)?;
    whittaker_w_scaled(WhittakerIndex::from_spectral(1, &se)?, params.threshold_arg())
}

/// λ_A with default options and absolute tolerance `tol`.
pub fn dominant_eigenvalue(params: &ModelParams, tol: f64) -> Result<EigenResult> {
    dominant_eigenvalue_with(
        params,
        SolverOptions {
            tol,
            ..SolverOptions::default()
        },
    )
}

/// Scan the bracket for sign changes of g, doubling the node count until
/// exactly one is seen, then polish it with Brent's method.
pub fn dominant_eigenvalue_with(params: &ModelParams, opts: SolverOptions) -> Result<EigenResult> {
    if !(opts.tol > 0.0) || opts.scan_nodes < 2 {
        return Err(Error::InvalidParameter(format!(
            "solver needs tol > 0 and at least two scan nodes (tol = {}, nodes = {})",
            opts.tol, opts.scan_nodes
        )));
    }
    let bracket = eigen_bracket(params);
    let g = |l: f64| eigen_function_value(l, params);

    let mut nodes = opts.scan_nodes;
    let (last_changes, end_values) = loop {
        let step = (bracket.hi - bracket.lo) / (nodes - 1) as f64;
        let xs: Vec<f64> = (0..nodes)
            .map(|i| {
                if i == nodes - 1 {
                    bracket.hi
                } else {
                    bracket.lo + step * i as f64
                }
            })
            .collect();
        let ys = xs.iter().map(|&x| g(x)).collect::<Result<Vec<_>>>()?;
        let mut changes = Vec::new();
        for i in 0..nodes - 1 {
            if ys[i] == 0.0 {
                changes.push((xs[i], xs[i], ys[i], ys[i]));
            } else if ys[i].signum() != ys[i + 1].signum() && ys[i + 1] != 0.0 {
                changes.push((xs[i], xs[i + 1], ys[i], ys[i + 1]));
            }
        }
        if ys[nodes - 1] == 0.0 {
            changes.push((xs[nodes - 1], xs[nodes - 1], 0.0, 0.0));
        }
        if changes.len() == 1 {
            let (a, b, fa, fb) = changes[0];
            let root = brent(g, a, b, fa, fb, opts.tol, 200)?;
            let residual = residual_at(root.x, params)?;
            if residual > RESIDUAL_TOL {
                return Err(Error::Convergence {
                    what: "eigenvalue polish (residual above tolerance)",
                    iterations: root.iterations,
                    last: root.x,
                });
            }
            return Ok(EigenResult {
                lambda: root.x,
                residual,
                iterations: root.iterations,
                bracket,
            });
        }
        if nodes >= MAX_SCAN_NODES {
            break (changes, (ys[0], ys[nodes - 1]));
        }
        nodes = (2 * nodes).min(MAX_SCAN_NODES);
    };
    if last_changes.is_empty() {
        return Err(Error::BracketFailure {
            lo: bracket.lo,
            hi: bracket.hi,
            g_lo: end_values.0,
            g_hi: end_values.1,
        });
    }
    let mut candidates = Vec::with_capacity(last_changes.len());
    for (a, b, fa, fb) in last_changes {
        candidates.push(brent(g, a, b, fa, fb, opts.tol, 200)?.x);
    }
    Err(Error::AmbiguousRoots { candidates })
}

/// |W_{1,ξ(λ)/2}(2/(μ²A))|, unscaled.
fn residual_at(lambda: f64, params: &ModelParams) -> Result<f64> {
    let u = params.threshold_arg();
    Ok((eigen_function_value(lambda, params)? * (-0.5 * u).exp()).abs())
}

/// φ(x, λ) = (μ²x/2)·e^{1/(μ²x)}·W_{1,ξ/2}(2/(μ²x)), i.e. e^{u/2}W₁(u)/u.
pub fn eigenfunction(x: f64, se: &SpectralIndex, params: &ModelParams) -> Result<f64> {
    if !(x > 0.0 && x <= params.threshold()) {
        return Err(Error::Domain {
            function: "eigenfunction",
            detail: format!("x must lie in (0, A], got {x}"),
        });
    }
    let u = params.whittaker_arg(x);
    Ok(whittaker_w_scaled(WhittakerIndex::from_spectral(1, se)?, u)? / u)
}

/// True iff λ_A is strictly increasing along the (strictly increasing) grid.
pub fn eigenvalue_monotonicity_check(mu: f64, a_grid: &[f64]) -> Result<bool> {
    if a_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "threshold grid must be strictly increasing".into(),
        ));
    }
    let mut prev = f64::NEG_INFINITY;
    for &a in a_grid {
        let lambda = dominant_eigenvalue(&ModelParams::new(mu, a)?, DEFAULT_TOL)?.lambda;
        if lambda <= prev {
            return Ok(false);
        }
        prev = lambda;
    }
    Ok(true)
}
