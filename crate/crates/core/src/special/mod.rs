//! Special functions and the closed-form constants built from them.

mod constants;
mod gamma;
mod zeta;

pub use constants::*;
pub use gamma::{digamma, gamma, gamma_ratio, log_gamma, EULER_GAMMA};
pub use zeta::{dirichlet_beta, zeta};
