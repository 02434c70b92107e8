//! Convolution kernels `k₊`, `k₋` of the Laguerre fractional integrals and
//! the norm constants `C₊`, `C₋`.
//!
//! With `F(w) = ₂F₁(α, α; 2α; w)`:
//!
//! * `k₊(v) = (v−1)^{2α−1} v^{−α} F(1 − 1/v) / Γ(2α)` for `v > 1`, else 0;
//! * `k₋(v) = (1−v)^{2α−1} F(1 − v) / Γ(2α)` for `0 < v < 1`, else 0.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{gauss_jacobi, gauss_legendre, zero_panels_for_power, SingularRule, TauSpan};
use crate::specfun::{digamma, rgamma, KernelHypergeometric, EULER_GAMMA};

/// A fractional order `α > 0` and the integer `m = ⌊α⌋ + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder {
    alpha: f64,
    m: u32,
}

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::domain(format!("alpha > 0 required, got {alpha}")));
        }
        Ok(Self { alpha, m: alpha.floor() as u32 + 1 })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `⌊α⌋ + 1`.
    pub fn m(&self) -> u32 {
        self.m
    }
}

/// Kernel evaluator for one order, caching `1/Γ(2α)` and the log-case
/// constants of the hypergeometric factor.
#[derive(Debug, Clone, Copy)]
pub struct KernelEval {
    order: FractionalOrder,
    inv_gamma_2a: f64,
    hyp: KernelHypergeometric,
}

impl KernelEval {
    pub fn new(order: FractionalOrder) -> Result<Self> {
        let a = order.alpha();
        Ok(Self { order, inv_gamma_2a: rgamma(2.0 * a), hyp: KernelHypergeometric::new(a)? })
    }

    pub fn from_alpha(alpha: f64) -> Result<Self> {
        Self::new(FractionalOrder::new(alpha)?)
    }

    pub fn order(&self) -> FractionalOrder {
        self.order
    }

    pub fn alpha(&self) -> f64 {
        self.order.alpha()
    }

    pub fn inv_gamma_2a(&self) -> f64 {
        self.inv_gamma_2a
    }

    pub fn hypergeometric(&self) -> &KernelHypergeometric {
        &self.hyp
    }

    /// `F(1 − τ)/Γ(2α)` for `τ ∈ (0, 1]`, with `τ` passed as the complement
    /// so that it keeps full relative accuracy near 0.
    pub fn tau_factor(&self, tau: f64) -> Result<f64> {
        if !(tau > 0.0 && tau <= 1.0) {
            return Err(Error::domain(format!("kernel factor needs τ in (0, 1], got {tau}")));
        }
        Ok(self.hyp.eval(1.0 - tau, tau)? * self.inv_gamma_2a)
    }

    /// `k₊(v)`.
    pub fn k_plus(&self, v: f64) -> Result<f64> {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::domain(format!("k₊ needs finite v > 0, got {v}")));
        }
        if v <= 1.0 {
            return Ok(0.0);
        }
        let a = self.alpha();
        let q = 1.0 / v;
        let f = self.hyp.eval((v - 1.0) * q, q)?;
        Ok(((2.0 * a - 1.0) * (v - 1.0).ln() - a * v.ln()).exp() * f * self.inv_gamma_2a)
    }

    /// `k₋(v)`.
    pub fn k_minus(&self, v: f64) -> Result<f64> {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::domain(format!("k₋ needs finite v > 0, got {v}")));
        }
        if v >= 1.0 {
            return Ok(0.0);
        }
        let a = self.alpha();
        Ok((1.0 - v).powf(2.0 * a - 1.0) * self.tau_factor(v)?)
    }
}

pub fn k_plus(ke: &KernelEval, v: f64) -> Result<f64> {
    ke.k_plus(v)
}

pub fn k_minus(ke: &KernelEval, v: f64) -> Result<f64> {
    ke.k_minus(v)
}

const TAIL_PANELS: usize = 400;

/// `∫₁^∞ k₊(v) v^{s−1} dv`, convergent for `Re(α + s) < 1`.
pub fn mellin_k_plus(ke: &KernelEval, s: Complex64) -> Result<Complex64> {
    let a = ke.alpha();
    let sigma = s + (a - 1.0); // k₊(v) v^{s-1} ~ v^{σ-1} ln v
    if sigma.re >= 0.0 {
        return Err(Error::Divergence(format!("Mellin transform of k₊ diverges for Re(α + s) = {} ≥ 1", a + s.re)));
    }
    let integrand = |v: f64| -> Result<Complex64> { Ok(Complex64::from(ke.k_plus(v)?) * Complex64::from(v).powc(s - 1.0)) };

    // [1, 3/2]: Gauss–Jacobi absorbs (v−1)^{2α−1}
    let gamma = 2.0 * a - 1.0;
    let gj = gauss_jacobi(24, 0.0, gamma)?;
    let half = 0.25;
    let mut sum = Complex64::new(0.0, 0.0);
    for (&x, &w) in gj.nodes.iter().zip(&gj.weights) {
        let v = 1.0 + half * (1.0 + x);
        let smooth = ((v - 1.0).ln() * -gamma).exp() * ke.k_plus(v)?;
        sum += Complex64::from(w * half.powf(gamma + 1.0) * smooth) * Complex64::from(v).powc(s - 1.0);
    }
    // [3/2, 2]
    for (v, w) in gauss_legendre(16).mapped(1.5, 2.0) {
        sum += integrand(v)? * w;
    }
    // [2, ∞): v = 1/t, dyadic panels in t toward 0
    let mut right = 0.5;
    let mut quiet = 0;
    for k in 0..TAIL_PANELS {
        let left = 0.5 * right;
        let mut panel = Complex64::new(0.0, 0.0);
        for (t, w) in gauss_legendre(16).mapped(left, right) {
            panel += integrand(1.0 / t)? * (w / (t * t));
        }
        sum += panel;
        right = left;
        if panel.norm() <= 1e-17 * sum.norm() {
            quiet += 1;
            if quiet >= 3 && k >= 8 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    // asymptotic remainder on [U, ∞): k₊(v) ≈ v^{α−1}(ln v + c)/Γ(α)²
    let u = 1.0 / right;
    let c = -2.0 * EULER_GAMMA - 2.0 * digamma(a)?;
    let u_sigma = (sigma * u.ln()).exp();
    let int_plain = -u_sigma / sigma;
    let int_log = -u_sigma * u.ln() / sigma + u_sigma / (sigma * sigma);
    let inv_ga2 = rgamma(a).powi(2);
    sum += (int_log + int_plain * c) * inv_ga2;
    Ok(sum)
}

/// `∫₀¹ k₋(v) v^{s−1} dv`, convergent for `Re s > 0`.
pub fn mellin_k_minus(ke: &KernelEval, s: Complex64) -> Result<Complex64> {
    if s.re <= 0.0 {
        return Err(Error::Divergence(format!("Mellin transform of k₋ diverges for Re s = {} ≤ 0", s.re)));
    }
    let rule = SingularRule::new(2.0 * ke.alpha() - 1.0)?;
    let span = TauSpan::full(zero_panels_for_power(s.re - 1.0)?);
    let mut sum = Complex64::new(0.0, 0.0);
    for (t, w) in rule.nodes(&span)? {
        sum += Complex64::from(w * ke.tau_factor(t)?) * Complex64::from(t).powc(s - 1.0);
    }
    Ok(sum)
}

/// `C₊(α, ν) = (1/Γ(2α)) ∫₁^∞ (u−1)^{2α−1} u^{ν−1} ₂F₁(α, α; 2α; 1−u) du`.
pub fn c_plus(alpha: f64, nu: f64) -> Result<f64> {
    let ke = KernelEval::from_alpha(alpha)?;
    if alpha + nu >= 1.0 {
        return Err(Error::domain(format!("C₊ needs alpha + nu < 1, got {alpha} + {nu}")));
    }
    Ok(mellin_k_plus(&ke, Complex64::from(nu))?.re)
}

/// `C₋(α, ν) = ∫₀¹ k₋(u) u^{ν−1} du`.
pub fn c_minus(alpha: f64, nu: f64) -> Result<f64> {
    let ke = KernelEval::from_alpha(alpha)?;
    if !(nu > 0.0) {
        return Err(Error::domain(format!("C₋ needs nu > 0, got {nu}")));
    }
    Ok(mellin_k_minus(&ke, Complex64::from(nu))?.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma_ratio_sq;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn truncated_supports() {
        let ke = KernelEval::from_alpha(0.75).unwrap();
        assert_eq!(ke.k_plus(0.5).unwrap(), 0.0);
        assert_eq!(ke.k_minus(2.0).unwrap(), 0.0);
    }

    #[test]
    fn alpha_one_reduces_to_logarithms() {
        let ke = KernelEval::from_alpha(1.0).unwrap();
        let e = std::f64::consts::E;
        assert!((ke.k_plus(e).unwrap() - 1.0).abs() < 1e-14);
        assert!((ke.k_minus(1.0 / e).unwrap() - 1.0).abs() < 1e-14);
        let mut v: f64 = 1.0 + 1e-6;
        while v < 1e8 {
            assert!(rel(ke.k_plus(v).unwrap(), v.ln()) < 1e-12, "v = {v}");
            assert!(rel(ke.k_minus(1.0 / v).unwrap(), -(1.0 / v).ln()) < 1e-12, "v = {v}");
            v *= 1.7;
        }
    }

    #[test]
    fn cache_matches_fresh_evaluation() {
        let ke = KernelEval::from_alpha(1.3).unwrap();
        assert!((ke.inv_gamma_2a() - 1.0 / crate::specfun::gamma(2.6).unwrap()).abs() < 1e-14);
        let fresh = KernelHypergeometric::new(1.3).unwrap();
        assert!((ke.hypergeometric().log_prefactor() - fresh.log_prefactor()).abs() < 1e-14);
        assert!((ke.hypergeometric().digamma_a() - digamma(1.3).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn asymptotic_trends() {
        let ke = KernelEval::from_alpha(0.75).unwrap();
        let r = |v: f64| ke.k_plus(v).unwrap() / (v.powf(-0.25) * v.ln());
        assert!(rel(r(1e4), r(1e6)) < 0.05);
        let m = |v: f64| ke.k_minus(v).unwrap() / (1.0 / v).ln();
        assert!(rel(m(1e-5), m(1e-7)) < 0.05);
    }

    #[test]
    fn constants_closed_forms() {
        assert!(rel(c_plus(1.0, -0.5).unwrap(), 4.0) < 1e-10);
        assert!(rel(c_plus(1.0, -1.0).unwrap(), 1.0) < 1e-10);
        // high-precision reference values
        assert!(rel(c_plus(0.75, 0.1).unwrap(), 33.881_700_926_309_633_352_3) < 1e-8);
        assert!(rel(c_minus(1.0, 1.0).unwrap(), 1.0) < 1e-10);
        assert!(rel(c_minus(1.0, 2.0).unwrap(), 0.25) < 1e-10);
        assert!(rel(c_minus(0.6, 0.5).unwrap(), 3.471_111_183_080_483_537_34) < 1e-8);
        assert!(c_plus(0.6, 0.4).is_err());
        assert!(c_minus(0.6, 0.0).is_err());
    }

    #[test]
    fn mellin_transforms_match_gamma_ratios() {
        for &a in &[0.6, 1.25] {
            let ke = KernelEval::from_alpha(a).unwrap();
            for &tau in &[0.0, 1.0, 5.0] {
                let s = Complex64::new(1.0 - a - 0.2, tau);
                let got = mellin_k_plus(&ke, s).unwrap();
                let want = gamma_ratio_sq(Complex64::from(1.0 - a) - s, Complex64::from(1.0) - s).unwrap();
                assert!((got - want).norm() / want.norm() < 1e-9, "α={a} τ={tau}: {got} vs {want}");
                let s = Complex64::new(0.3, tau);
                let got = mellin_k_minus(&ke, s).unwrap();
                let want = gamma_ratio_sq(s, s + a).unwrap();
                assert!((got - want).norm() / want.norm() < 1e-9, "α={a} τ={tau}: {got} vs {want}");
            }
        }
    }
}
