//! Riemann–Liouville and Laguerre fractional integrals.
//!
//! Every operator is evaluated in the scaled form
//!
//! * left:  `x^α ∫₀¹ (1−τ)^γ k(τ) f(xτ) dτ`
//! * right: `x^α ∫₀¹ (1−τ)^γ k(τ) τ^{−α−1} f(x/τ) dτ`
//!
//! with `γ = α−1`, `k = 1/Γ(α)` for Riemann–Liouville and `γ = 2α−1`,
//! `k(τ) = ₂F₁(α, α; 2α; 1−τ)/Γ(2α)` for Laguerre.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::function::{Decay, GridFunction, Mesh, RealFunction};
use crate::kernels::KernelEval;
use crate::quad::tau::Node;
use crate::quad::{zero_panels_for_power, SegmentMode, SingularRule, TauSpan};
use crate::specfun::rgamma;

const MAX_ZERO_PANELS: usize = 400;
/// `−ln` of the relative size below which an exponential tail is dropped.
const TAIL_LOG_CUTOFF: f64 = 45.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Integration over `(0, x)`.
    Left,
    /// Integration over `(x, ∞)`.
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    RiemannLiouville,
    Laguerre,
}

/// A fractional integral of fixed family, side and order.
///
/// Kernel-weighted node sets for functions without breakpoints are cached,
/// so repeated evaluation through one instance is much cheaper than the
/// free functions.
#[derive(Debug)]
pub struct FractionalIntegral {
    family: Family,
    side: Side,
    alpha: f64,
    rule: SingularRule,
    kernel: Option<KernelEval>,
    inv_gamma: f64,
    cache: Mutex<HashMap<usize, Arc<Vec<Node>>>>,
}

impl FractionalIntegral {
    pub fn new(family: Family, side: Side, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::domain(format!("alpha > 0 required, got {alpha}")));
        }
        let (gamma, kernel, inv_gamma) = match family {
            Family::RiemannLiouville => (alpha - 1.0, None, rgamma(alpha)),
            Family::Laguerre => {
                let ke = KernelEval::from_alpha(alpha)?;
                (2.0 * alpha - 1.0, Some(ke), ke.inv_gamma_2a())
            }
        };
        Ok(Self { family, side, alpha, rule: SingularRule::new(gamma)?, kernel, inv_gamma, cache: Mutex::new(HashMap::new()) })
    }

    pub fn riemann_liouville(side: Side, alpha: f64) -> Result<Self> {
        Self::new(Family::RiemannLiouville, side, alpha)
    }

    pub fn laguerre(side: Side, alpha: f64) -> Result<Self> {
        Self::new(Family::Laguerre, side, alpha)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `k(τ)`, without the `τ^{−α−1}` factor of the right side.
    fn kernel_factor(&self, tau: f64) -> Result<f64> {
        match &self.kernel {
            Some(ke) => ke.tau_factor(tau),
            None => Ok(self.inv_gamma),
        }
    }

    fn argument(&self, x: f64, tau: f64) -> f64 {
        match self.side {
            Side::Left => x * tau,
            Side::Right => x / tau,
        }
    }

    /// `weight · f(arg)`, including `τ^{−α−1}` on the right side without
    /// overflowing when `f` is tiny.
    fn term(&self, weight: f64, tau: f64, value: f64) -> f64 {
        if value == 0.0 || weight == 0.0 {
            return 0.0;
        }
        match self.side {
            Side::Left => weight * value,
            Side::Right => {
                let scale = tau.powf(-self.alpha - 1.0);
                if scale.is_finite() {
                    weight * scale * value
                } else {
                    let log = weight.abs().ln() + value.abs().ln() - (self.alpha + 1.0) * tau.ln();
                    (weight * value).signum() * log.exp()
                }
            }
        }
    }

    fn span<F: RealFunction + ?Sized>(&self, f: &F, x: f64) -> Result<Option<(TauSpan, bool)>> {
        let (s0, s1) = f.support();
        let (lo, hi) = match self.side {
            Side::Left => (s0 / x, (s1 / x).min(1.0)),
            Side::Right => (if s1.is_finite() { x / s1 } else { 0.0 }, if s0 > 0.0 { (x / s0).min(1.0) } else { 1.0 }),
        };
        if !(lo < hi) {
            return Ok(None);
        }
        let zero_panels = if lo > 0.0 { 1 } else { self.zero_panels(f, x)? };
        let breaks: Vec<f64> = f
            .breakpoints()
            .into_iter()
            .filter(|&b| b > 0.0)
            .map(|b| match self.side {
                Side::Left => b / x,
                Side::Right => x / b,
            })
            .filter(|&t| t > lo && t < hi)
            .collect();
        let end_width = f.feature_scale().map_or(0.5, |h| (h / x).min(0.5));
        let mode = f.segment_mode();
        let cacheable = self.side == Side::Left
            && lo == 0.0
            && hi == 1.0
            && breaks.is_empty()
            && end_width == 0.5
            && matches!(mode, SegmentMode::Fixed { min_order: 0 });
        Ok(Some((TauSpan { lo, hi, breaks, zero_panels, end_width, mode }, cacheable)))
    }

    /// Fails when the integral diverges for `f`, judged from its growth at 0
    /// on the left and its decay at infinity on the right.
    pub fn check_operand<F: RealFunction + ?Sized>(&self, f: &F) -> Result<()> {
        match self.side {
            Side::Left => {
                let p = f.growth_at_zero();
                if p <= -1.0 {
                    return Err(Error::Divergence(format!("f ~ x^{p} at 0 is not integrable against the kernel")));
                }
            }
            Side::Right => {
                if let Decay::Algebraic { exponent } = f.decay() {
                    if exponent <= self.alpha {
                        return Err(Error::Divergence(format!(
                            "f decays like x^-{exponent}, which needs to exceed the order {}",
                            self.alpha
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Dyadic panel count toward `τ = 0`, from the behaviour of the integrand
    /// there; fails when the integral diverges.
    fn zero_panels<F: RealFunction + ?Sized>(&self, f: &F, x: f64) -> Result<usize> {
        self.check_operand(f)?;
        match self.side {
            Side::Left => zero_panels_for_power(f.growth_at_zero().min(1e6)),
            Side::Right => match f.decay() {
                Decay::Compact => Ok(8),
                Decay::Exponential { rate } => {
                    let slope = (self.alpha + 1.0) * std::f64::consts::LN_2;
                    let mut k = 1;
                    while k < MAX_ZERO_PANELS && rate * x * 2f64.powi(k as i32) - slope * (k as f64) < TAIL_LOG_CUTOFF {
                        k += 1;
                    }
                    Ok(k.max(4))
                }
                Decay::Algebraic { exponent } => zero_panels_for_power(exponent - self.alpha - 1.0),
            },
        }
    }

    fn cached_nodes(&self, zero_panels: usize) -> Result<Arc<Vec<Node>>> {
        let mut cache = self.cache.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(nodes) = cache.get(&zero_panels) {
            return Ok(Arc::clone(nodes));
        }
        let nodes = self
            .rule
            .nodes(&TauSpan::full(zero_panels))?
            .into_iter()
            .map(|(t, w)| Ok((t, w * self.kernel_factor(t)?)))
            .collect::<Result<Vec<_>>>()?;
        let nodes = Arc::new(nodes);
        cache.insert(zero_panels, Arc::clone(&nodes));
        Ok(nodes)
    }

    /// The operator applied to `f`, at `x > 0`.
    pub fn eval<F: RealFunction + ?Sized>(&self, f: &F, x: f64) -> Result<f64> {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::domain(format!("operators are evaluated at finite x > 0, got {x}")));
        }
        let Some((span, cacheable)) = self.span(f, x)? else {
            return Ok(0.0);
        };
        let integral = if cacheable {
            let mut sum = 0.0;
            for &(t, w) in self.cached_nodes(span.zero_panels)?.iter() {
                sum += self.term(w, t, f.eval(self.argument(x, t))?);
            }
            sum
        } else {
            self.rule.integrate(&span, |t| Ok(self.term(self.kernel_factor(t)?, t, f.eval(self.argument(x, t))?)))?
        };
        Ok(x.powf(self.alpha) * integral)
    }

    /// The τ-range and breakpoints used for a left-sided integral at `x`.
    pub(crate) fn left_span<F: RealFunction + ?Sized>(&self, f: &F, x: f64) -> Result<Option<TauSpan>> {
        if self.side != Side::Left {
            return Err(Error::domain("left span requested from a right-sided operator"));
        }
        Ok(self.span(f, x)?.map(|(span, _)| span))
    }

    /// Quadrature nodes `(u, w)` with `(Kf)(x) ≈ Σ w f(u)` for the left side,
    /// splitting at the breakpoints of `f`.
    pub(crate) fn left_nodes<F: RealFunction + ?Sized>(&self, f: &F, x: f64) -> Result<Vec<(f64, f64)>> {
        if self.side != Side::Left {
            return Err(Error::domain("explicit nodes are only formed for left-sided operators"));
        }
        let Some((span, _)) = self.span(f, x)? else {
            return Ok(Vec::new());
        };
        let scale = x.powf(self.alpha);
        self.rule.nodes(&span)?.into_iter().map(|(t, w)| Ok((x * t, scale * w * self.kernel_factor(t)?))).collect()
    }

    pub fn eval_many<F: RealFunction + ?Sized>(&self, f: &F, xs: &[f64]) -> Result<Vec<f64>> {
        xs.iter().map(|&x| self.eval(f, x)).collect()
    }

    /// Exponent `p` with `(Kf)(x) = O(x^p)` as `x → 0`, up to logarithms.
    pub fn image_growth(&self, growth: f64) -> f64 {
        match self.side {
            Side::Left => growth + self.alpha,
            Side::Right => 0.0,
        }
    }

    /// The operator applied to `f`, tabulated on `mesh`.
    pub fn tabulate<F: RealFunction + ?Sized>(&self, f: &F, mesh: &Mesh) -> Result<GridFunction> {
        let values = self.eval_many(f, &mesh.nodes())?;
        let growth = self.image_growth(f.growth_at_zero());
        let g = GridFunction::new(values, mesh.length(), mesh.grading())?;
        Ok(if growth.is_finite() { g.with_growth(growth) } else { g })
    }

    /// `Kf` as a function, evaluated lazily.
    pub fn image<F: RealFunction>(&self, f: F) -> Image<'_, F> {
        Image { op: self, f }
    }
}

/// The lazily evaluated image of a function under a fractional integral.
#[derive(Debug)]
pub struct Image<'a, F> {
    op: &'a FractionalIntegral,
    f: F,
}

impl<F: RealFunction> RealFunction for Image<'_, F> {
    fn eval(&self, x: f64) -> Result<f64> {
        self.op.eval(&self.f, x)
    }

    fn support(&self) -> (f64, f64) {
        let (s0, s1) = self.f.support();
        match self.op.side {
            Side::Left => (s0, f64::INFINITY),
            Side::Right => (0.0, s1),
        }
    }

    fn growth_at_zero(&self) -> f64 {
        let (s0, _) = self.f.support();
        if self.op.side == Side::Left && s0 > 0.0 {
            return f64::INFINITY;
        }
        self.op.image_growth(self.f.growth_at_zero())
    }

    fn decay(&self) -> Decay {
        let a = self.op.alpha;
        match (self.op.side, self.f.decay()) {
            (Side::Left, Decay::Algebraic { exponent }) => Decay::Algebraic { exponent: exponent.min(1.0) - a },
            (Side::Left, _) => Decay::Algebraic { exponent: 1.0 - a },
            (Side::Right, Decay::Algebraic { exponent }) => Decay::Algebraic { exponent: exponent - a },
            (Side::Right, d) => d,
        }
    }

    /// Ends of the operand's support where the operand jumps or kinks; the
    /// image loses smoothness there.
    fn breakpoints(&self) -> Vec<f64> {
        if self.f.smooth_at_support_ends() {
            return Vec::new();
        }
        let (lo, hi) = self.support();
        let (s0, s1) = self.f.support();
        [s0, s1].into_iter().filter(|&e| e > lo && e < hi).collect()
    }

    fn smooth_at_support_ends(&self) -> bool {
        self.f.smooth_at_support_ends()
    }

    fn feature_scale(&self) -> Option<f64> {
        self.f.feature_scale()
    }

    fn segment_mode(&self) -> SegmentMode {
        self.f.segment_mode()
    }
}

/// `(I₀₊^α f)(x) = (1/Γ(α)) ∫₀ˣ (x−t)^{α−1} f(t) dt`.
pub fn rl_integral_left<F: RealFunction + ?Sized>(f: &F, alpha: f64, x: f64) -> Result<f64> {
    FractionalIntegral::riemann_liouville(Side::Left, alpha)?.eval(f, x)
}

/// `(I₋^α f)(x) = (1/Γ(α)) ∫ₓ^∞ (t−x)^{α−1} f(t) dt`.
pub fn rl_integral_right<F: RealFunction + ?Sized>(f: &F, alpha: f64, x: f64) -> Result<f64> {
    FractionalIntegral::riemann_liouville(Side::Right, alpha)?.eval(f, x)
}

/// `(L₀₊^α f)(x) = (1/Γ(2α)) ∫₀ˣ (x−u)^{2α−1} x^{−α} ₂F₁(α, α; 2α; 1−u/x) f(u) du`.
pub fn laguerre_l_left<F: RealFunction + ?Sized>(f: &F, alpha: f64, x: f64) -> Result<f64> {
    FractionalIntegral::laguerre(Side::Left, alpha)?.eval(f, x)
}

/// `(L₋^α f)(x) = (1/Γ(2α)) ∫ₓ^∞ (u−x)^{2α−1} u^{−α} ₂F₁(α, α; 2α; 1−x/u) f(u) du`.
pub fn laguerre_l_right<F: RealFunction + ?Sized>(f: &F, alpha: f64, x: f64) -> Result<f64> {
    FractionalIntegral::laguerre(Side::Right, alpha)?.eval(f, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::CatalogFunction;
    use crate::specfun::gamma;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn riemann_liouville_elementary() {
        let x = CatalogFunction::monomial(1.0);
        assert!(rel(rl_integral_left(&x, 1.0, 2.0).unwrap(), 2.0) < 1e-13);
        assert!(rel(rl_integral_left(&x, 0.5, 1.0).unwrap(), 1.0 / gamma(2.5).unwrap()) < 1e-12);
        let e = CatalogFunction::exp_decay(1.0).unwrap();
        assert!(rel(rl_integral_left(&e, 1.0, 1.0).unwrap(), 1.0 - (-1f64).exp()) < 1e-13);
        assert!(rel(rl_integral_right(&e, 1.0, 1.0).unwrap(), (-1f64).exp()) < 1e-12);
        let bump = CatalogFunction::bump(1.0, 2.0, 3).unwrap();
        assert_eq!(rl_integral_right(&bump, 1.0, 3.0).unwrap(), 0.0);
    }

    #[test]
    fn right_side_rejects_slow_decay() {
        assert!(matches!(rl_integral_right(&CatalogFunction::monomial(1.0), 0.5, 1.0), Err(Error::Divergence(_))));
        assert!(matches!(laguerre_l_right(&CatalogFunction::constant(1.0), 0.5, 1.0), Err(Error::Divergence(_))));
    }

    #[test]
    fn laguerre_monomials() {
        let one = CatalogFunction::constant(1.0);
        assert!(rel(laguerre_l_left(&one, 1.0, 1.0).unwrap(), 1.0) < 1e-12);
        assert!(rel(laguerre_l_left(&CatalogFunction::monomial(1.0), 1.0, 1.0).unwrap(), 0.25) < 1e-12);
        assert!(rel(laguerre_l_left(&CatalogFunction::monomial(2.0), 1.0, 2.0).unwrap(), 8.0 / 9.0) < 1e-12);
    }

    #[test]
    fn laguerre_right_exponential() {
        // ∫₁^∞ ln u e^{−u} du = E₁(1)
        let e = CatalogFunction::exp_decay(1.0).unwrap();
        assert!(rel(laguerre_l_right(&e, 1.0, 1.0).unwrap(), 0.219_383_934_395_520_273_7) < 1e-10);
        let bump = CatalogFunction::bump(2.0, 3.0, 3).unwrap();
        assert_eq!(laguerre_l_right(&bump, 0.8, 4.0).unwrap(), 0.0);
    }

    #[test]
    fn cached_and_fresh_paths_agree() {
        let op = FractionalIntegral::laguerre(Side::Left, 0.7).unwrap();
        let f = CatalogFunction::exp_decay(1.5).unwrap();
        let a = op.eval(&f, 0.8).unwrap();
        let b = op.eval(&f, 0.8).unwrap();
        assert_eq!(a, b);
        let span = TauSpan::full(zero_panels_for_power(0.0).unwrap());
        let direct = 0.8f64.powf(0.7)
            * op.rule.integrate(&span, |t| Ok(op.kernel_factor(t)? * (-1.5 * 0.8 * t).exp())).unwrap();
        assert!(rel(a, direct) < 1e-14);
    }

    #[test]
    fn nested_image_matches_semigroup() {
        let inner = FractionalIntegral::laguerre(Side::Left, 0.6).unwrap();
        let outer = FractionalIntegral::laguerre(Side::Left, 0.9).unwrap();
        let f = CatalogFunction::monomial(1.0);
        let nested = outer.eval(&inner.image(&f), 1.0).unwrap();
        let want = (gamma(2.0).unwrap() / gamma(3.5).unwrap()).powi(2);
        assert!(rel(nested, want) < 1e-9, "{nested} vs {want}");
    }
}
