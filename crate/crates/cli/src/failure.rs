use std::fmt;
use std::process::ExitCode;

pub enum Failure {
    /// Bad flags or values: exit 64.
    Usage(String),
    /// A solver or I/O failure: exit 1.
    Compute(String),
    /// Results disagree with reference values: exit 2.
    Mismatch(Vec<String>),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::Compute(_) => 1,
            Failure::Mismatch(_) => 2,
            Failure::Usage(_) => 64,
        })
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Compute(m) => write!(f, "error: {m}"),
            Failure::Mismatch(items) => write!(f, "validation failed: {}", items.join("; ")),
        }
    }
}

impl From<qsd_sr::Error> for Failure {
    fn from(e: qsd_sr::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(format!("writing output: {e}"))
    }
}

pub type Outcome = Result<(), Failure>;

/// Parameters must satisfy the library's invariants before dispatch.
pub fn params(mu: f64, threshold: f64) -> Result<qsd_sr::ModelParams, Failure> {
    qsd_sr::ModelParams::new(mu, threshold).map_err(|e| Failure::Usage(e.to_string()))
}

pub fn tolerance(tol: f64) -> Result<f64, Failure> {
    if tol >= 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(Failure::Usage(format!("--tol must be finite and non-negative, got {tol}")))
    }
}
