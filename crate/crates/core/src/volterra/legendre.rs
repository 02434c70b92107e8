use crate::error::{Error, Result};
use crate::quad::{integrate, Tolerance};
use crate::specfun::ln_gamma_abs;

/// `2 (x−u)^{2β−1}/Γ(β)² ∫₀^∞ dy / (2√(xu) cosh y + x + u)^β`, which equals
/// the kernel of `L₀₊^β` at `(x, u)`.
pub fn legendre_kernel(x: f64, u: f64, order: f64) -> Result<f64> {
    if !(order > 0.0 && order.is_finite()) {
        return Err(Error::domain(format!("Legendre integral needs a positive order, got {order}")));
    }
    if !(0.0 < u && u < x && x.is_finite()) {
        return Err(Error::domain(format!("Legendre kernel needs 0 < u < x, got x = {x}, u = {u}")));
    }
    let r = 2.0 * (x * u).sqrt();
    let s = x + u;
    // the integrand falls below e^{-40} of its value at 0 beyond y_max
    let y_max = ((s + r) / r * (40.0 / order).exp()).acosh() + 1.0;
    let base = (s + r).ln();
    let est = integrate(
        |y| {
            // (r cosh y + s)^{-β}, scaled by its value at y = 0
            let c = r * y.cosh() + s;
            Ok((-order * (c.ln() - base)).exp())
        },
        0.0,
        y_max,
        Tolerance::new(1e-300, 1e-13),
        2000,
    )?;
    let ln_front = 2f64.ln() + (2.0 * order - 1.0) * (x - u).ln() - 2.0 * ln_gamma_abs(order)? - order * base;
    Ok(ln_front.exp() * est.value)
}
