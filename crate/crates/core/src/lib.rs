//! Laguerre fractional integrals and derivatives, their Mellin multipliers,
//! and solvers for the associated Volterra equation.

pub mod error;
pub mod function;
pub mod kernels;
pub mod mellin;
pub mod operators;
pub mod quad;
pub mod specfun;
pub mod verify;
pub mod volterra;

pub use error::{Error, Result};
pub use function::{CatalogFunction, Decay, GridFunction, Interpolation, Mesh, PowerWeighted, RealFunction};
pub use kernels::{c_minus, c_plus, k_minus, k_plus, FractionalOrder, KernelEval};
pub use mellin::{MellinContour, MultiplierDescriptor, MultiplierKind};
pub use operators::{FractionalIntegral, Side};
pub use volterra::{NeumannSolveConfig, ResolventForm};
