//! Reflection positive kernels on the sphere, their holomorphic continuation
//! to the crown of the hyperboloid, and the Lorentz group structures around
//! them, together with independent numerical oracles.
//!
//! Module map:
//! - [`special_functions`]: complex log-gamma, Gauss ₂F₁ on ℂ∖[1,∞), the entire functions C and S
//! - [`geometry`]: points of ℂ^{n+1}, the crown Ξ and its boundary, exponential maps, Cayley transform
//! - [`group_action`]: the Lorentz group acting on ℂ^{n+1} and on the sphere at infinity
//! - [`kernels`]: Ψ_m, Φ_m, spherical functions, canonical kernels, Gram matrix checks
//! - [`integral_reps`]: sphere quadrature, Poisson transforms, intertwiners, plane waves
//! - [`oracles`]: spectral series and a discrete circle model
//! - [`verify`]: named check suites shared by the CLI and the acceptance tests

pub mod error;
pub mod geometry;
pub mod group_action;
pub mod integral_reps;
pub mod kernels;
pub mod oracles;
pub mod special_functions;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
