//! Independent checks: a finite-volume eigensolver, a Monte-Carlo simulator
//! and quadrature versions of the closed-form identities.

mod identities;
mod monte_carlo;
mod sturm;

pub use identities::{integral_identity_check, norm_identity_check, NormIdentity};
pub use monte_carlo::{simulate_killed_sr, EmpiricalLaw, SimulationConfig, THREADS_ENV};
pub use sturm::{sturm_liouville_eigen, GridSolution};
