//! Quadrature: Gauss rules, adaptive Gauss–Kronrod, and composite rules for
//! the endpoint-singular integrals behind every operator.

pub mod adaptive;
pub mod gauss;
pub mod tau;

pub use adaptive::{integrate, Estimate, Tolerance};
pub use gauss::{gauss_jacobi, gauss_legendre, Rule};
pub use tau::{zero_panels_for_power, SegmentMode, SingularRule, TauSpan};
