//! Special functions: complex gamma, Whittaker W, E1 and its relatives, and
//! the stationary law.

mod expint;
mod gamma;
mod stationary;
mod whittaker;

pub use expint::{exp_integral_e1, exp_integral_e1_scaled, lower_bound_l, meijer_g_special};
pub use gamma::{gamma_cx, gamma_shifted, rgamma_cx, rgamma_shifted};
pub use stationary::{log_speed_density, speed_density, stationary_cdf};
pub use whittaker::{whittaker_w, whittaker_w_real_b, whittaker_w_scaled, WhittakerIndex};
