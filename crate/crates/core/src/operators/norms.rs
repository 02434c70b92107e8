//! Discrete weighted norms `‖f‖_{ν,p} = (∫₀^l |f(x)|^p x^{νp−1} dx)^{1/p}`.

use crate::error::{Error, Result};
use crate::function::GridFunction;

/// Trapezoid approximation of `‖g‖_{ν,p}` on the mesh of `g`, taking the
/// weighted integrand to vanish at `x = 0`; `p = ∞` gives `max x^ν |g(x)|`.
pub fn weighted_norm(g: &GridFunction, nu: f64, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::domain(format!("norm exponent must be at least 1, got {p}")));
    }
    let x = g.nodes();
    let v = g.values();
    if p.is_infinite() {
        return Ok(x.iter().zip(v).map(|(&x, &v)| x.powf(nu) * v.abs()).fold(0.0, f64::max));
    }
    let phi: Vec<f64> = x.iter().zip(v).map(|(&x, &v)| v.abs().powf(p) * x.powf(nu * p - 1.0)).collect();
    let mut sum = 0.5 * x[0] * phi[0];
    for i in 1..x.len() {
        sum += 0.5 * (x[i] - x[i - 1]) * (phi[i] + phi[i - 1]);
    }
    Ok(sum.powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_of_a_power() {
        // ∫₀¹ x² x^{-1} dx = 1/2 at ν = 1/2, p = 2
        let g = GridFunction::from_fn(2048, 1.0, 2.0, |x| Ok(x.sqrt())).unwrap();
        assert!((weighted_norm(&g, 0.5, 2.0).unwrap() - 0.5f64.sqrt()).abs() < 1e-6);
        assert!((weighted_norm(&g, 0.5, f64::INFINITY).unwrap() - 1.0).abs() < 1e-15);
        assert!(weighted_norm(&g, 0.5, 0.5).is_err());
    }
}
