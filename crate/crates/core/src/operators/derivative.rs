//! Laguerre fractional derivatives `𝒟^α f = θ^m L^{m−α} f`, `m = ⌊α⌋ + 1`.
//!
//! The inner integral is evaluated afresh at every difference-stencil point.

use crate::error::Result;
use crate::function::{GridFunction, Mesh, RealFunction};
use crate::kernels::FractionalOrder;
use crate::operators::integral::{FractionalIntegral, Side};
use crate::operators::theta::theta_of;

fn laguerre_derivative<F: RealFunction + ?Sized>(side: Side, f: &F, alpha: f64, mesh: &Mesh) -> Result<GridFunction> {
    let order = FractionalOrder::new(alpha)?;
    let m = order.m();
    let inner = FractionalIntegral::laguerre(side, m as f64 - alpha)?;
    theta_of(&inner.image(f), mesh, m)
}

/// `𝒟₀₊^α f` on the nodes of `mesh`.
pub fn laguerre_d_left<F: RealFunction + ?Sized>(f: &F, alpha: f64, mesh: &Mesh) -> Result<GridFunction> {
    laguerre_derivative(Side::Left, f, alpha, mesh)
}

/// `𝒟₋^α f` on the nodes of `mesh`.
pub fn laguerre_d_right<F: RealFunction + ?Sized>(f: &F, alpha: f64, mesh: &Mesh) -> Result<GridFunction> {
    laguerre_derivative(Side::Right, f, alpha, mesh)
}
