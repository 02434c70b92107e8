//! The Volterra equation `f = g + λ L₀₊^α f` on `(0, l)`, solved by the
//! Neumann series, by its resolvent kernel, and by product integration.

pub mod config;
pub mod direct;
pub mod legendre;
pub mod neumann;
pub mod resolvent;

pub use config::NeumannSolveConfig;
pub use direct::direct_solve;
pub use legendre::legendre_kernel;
pub use neumann::{neumann_solve, residual, residuals};
pub use resolvent::{remainder_majorant, resolvent_kernel, resolvent_partial_sum, resolvent_solve, Resolvent, ResolventForm};
