use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("argument outside the domain of {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("{function} has a pole at {at}")]
    Pole { function: &'static str, at: String },

    #[error("{what} failed to converge after {iterations} iterations (last estimate {last:e})")]
    Convergence {
        what: &'static str,
        iterations: usize,
        last: f64,
    },

    #[error(
        "no sign change of the eigenvalue function on [{lo:e}, {hi:e}] (g(lo) = {g_lo:e}, g(hi) = {g_hi:e})"
    )]
    BracketFailure {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    #[error("eigenvalue bracket holds {} candidate roots: {candidates:?}", candidates.len())]
    AmbiguousRoots { candidates: Vec<f64> },

    #[error("threshold too small for the order-{order} approximation: {detail}")]
    ThresholdTooSmall { order: u8, detail: String },

    #[error("mode search found no sign change of the density slope with {nodes} scan nodes")]
    ModeResolution { nodes: usize },

    #[error("moment order {requested} exceeds the supported maximum {max}")]
    MomentOrder { requested: usize, max: usize },

    #[error("no surviving paths out of {n_paths} at horizon {horizon}; use more paths or a shorter horizon")]
    InsufficientSurvivors { n_paths: usize, horizon: f64 },

    #[error("discrete eigenproblem did not converge: {trace}")]
    EigenIteration { trace: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
