pub mod error;
pub mod model;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
pub use model::{ModelParams, SpectralIndex};
pub mod eigensolver;
pub mod roots;
pub mod qsd;
pub mod asymptotics;
pub mod oracle;
