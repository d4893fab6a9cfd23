//! Special functions: complex log-gamma, the Gauss hypergeometric function
//! and the entire functions C, S.

mod entire;
mod gamma;
mod hypergeometric;

pub use entire::{entire_c, entire_s};
pub use gamma::{gamma, log_gamma};
pub use hypergeometric::{gauss_2f1, gauss_2f1_with_derivative, gauss_sum, limit_at_one, HypParams};
