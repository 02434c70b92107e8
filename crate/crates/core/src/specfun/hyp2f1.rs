//! Gauss hypergeometric function `₂F₁(a, b; c; z)` for real `z < 1`.
//!
//! The kernels only need `a = b`, `c = 2a`; the general entry point also
//! covers `c - a - b` non-integer through the standard connection formula.

use crate::error::{Error, Result};
use crate::specfun::gamma::{gamma, ln_gamma_abs, rgamma, EULER_GAMMA};
use crate::specfun::polygamma::digamma;

/// Arguments above this value use the expansion about `w = 1`.
pub const SERIES_SWITCH: f64 = 0.75;
/// Hard cap on the number of terms of any hypergeometric series.
pub const MAX_TERMS: usize = 10_000;

const TINY: f64 = 1e-17;
// Peak-to-sum ratio of the log expansion above which it loses too many digits.
const LOG_CASE_PEAK_LIMIT: f64 = 1e3;

/// Parameters of `₂F₁(a, b; c; z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

impl Hyp2F1Params {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Self {
        Self { a, b, c, z }
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Evaluate `₂F₁(a, b; c; z)` for `z < 1`.
pub fn gauss_2f1(p: Hyp2F1Params) -> Result<f64> {
    let Hyp2F1Params { a, b, c, z } = p;
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(Error::domain("non-finite 2F1 parameter"));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::domain(format!("2F1 with c = {c} a non-positive integer")));
    }
    if z >= 1.0 {
        return Err(Error::domain(format!("2F1 argument z = {z} must be below 1")));
    }
    if z == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    if z > 0.0 {
        return unit_interval(a, b, c, z, 1.0 - z);
    }
    // small negative z with moderate parameters: no significant cancellation
    if z >= -0.5 && a.abs().max(b.abs()) <= 4.0 {
        return gauss_series(a, b, c, z);
    }
    // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1))
    let q = 1.0 / (1.0 - z);
    let w = -z * q;
    Ok(q.powf(a) * unit_interval(a, c - b, c, w, q)?)
}

/// `F(a, b; c; w)` for `0 ≤ w < 1`, with `q = 1 - w` supplied separately so
/// that it keeps full relative accuracy when `w` is close to 1.
fn unit_interval(a: f64, b: f64, c: f64, w: f64, q: f64) -> Result<f64> {
    if w <= SERIES_SWITCH || is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return gauss_series(a, b, c, w);
    }
    let s = c - a - b;
    if s.abs() <= 1e-14 * c.abs().max(1.0) {
        let peak = log_case_peak(a, b, q);
        if peak > LOG_CASE_PEAK_LIMIT && series_terms_estimate(a, b, w) < MAX_TERMS as f64 {
            return gauss_series(a, b, c, w);
        }
        return log_case(a, b, w, q);
    }
    if s != s.round() {
        return connection(a, b, c, q);
    }
    gauss_series(a, b, c, w)
}

/// Direct Gauss series `Σ (a)ₙ(b)ₙ/((c)ₙ n!) wⁿ`, `|w| < 1`.
pub fn gauss_series(a: f64, b: f64, c: f64, w: f64) -> Result<f64> {
    if w.abs() >= 1.0 {
        return Err(Error::domain(format!("Gauss series needs |w| < 1, got {w}")));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * w;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        let decreasing = ((a + nf + 1.0) * (b + nf + 1.0) / ((c + nf + 1.0) * (nf + 2.0)) * w).abs() < 1.0;
        if decreasing && term.abs() <= TINY * sum.abs() {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence { what: "Gauss hypergeometric series", iterations: MAX_TERMS })
}

fn series_terms_estimate(a: f64, b: f64, w: f64) -> f64 {
    (40.0 + a.abs() + b.abs()) / (-w.ln())
}

/// Largest term magnitude of the log-case expansion, relative to its first.
fn log_case_peak(a: f64, b: f64, q: f64) -> f64 {
    let mut t = 1.0f64;
    let mut peak = 1.0f64;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let r = ((a + nf) * (b + nf) / ((nf + 1.0) * (nf + 1.0)) * q).abs();
        if r < 1.0 && n as f64 > a.abs().max(b.abs()) {
            break;
        }
        t *= r;
        peak = peak.max(t);
    }
    peak
}

/// Expansion about `w = 1` for `c = a + b`:
///
/// `Γ(a+b)/(Γ(a)Γ(b)) Σ (a)ₙ(b)ₙ/(n!)² qⁿ [2ψ(n+1) − ψ(a+n) − ψ(b+n) − ln q]`
/// with `q = 1 − w`.
pub fn log_case(a: f64, b: f64, w: f64, q: f64) -> Result<f64> {
    if !(0.0 < q && q <= 1.0) || (w - (1.0 - q)).abs() > 1e-12 {
        return Err(Error::domain(format!("log-case expansion needs w = 1 - q in [0,1), got w={w}, q={q}")));
    }
    let prefactor = log_case_prefactor(a, b)?;
    let psi_a = digamma(a)?;
    let psi_b = if a == b { psi_a } else { digamma(b)? };
    let sum = log_case_sum(a, b, psi_a, psi_b, q)?;
    Ok(prefactor * sum)
}

fn log_case_prefactor(a: f64, b: f64) -> Result<f64> {
    // Γ(a+b)/(Γ(a)Γ(b)), signed
    if a > 0.0 && b > 0.0 {
        Ok((ln_gamma_abs(a + b)? - ln_gamma_abs(a)? - ln_gamma_abs(b)?).exp())
    } else {
        Ok(gamma(a + b)? * rgamma(a) * rgamma(b))
    }
}

fn log_case_sum(a: f64, b: f64, psi_a: f64, psi_b: f64, q: f64) -> Result<f64> {
    let ln_q = q.ln();
    let mut coef = 1.0; // (a)ₙ(b)ₙ/(n!)² qⁿ
    let mut psi_n1 = -EULER_GAMMA; // ψ(n+1)
    let mut psi_an = psi_a;
    let mut psi_bn = psi_b;
    let mut sum = 0.0;
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let term = coef * (2.0 * psi_n1 - psi_an - psi_bn - ln_q);
        sum += term;
        let past_peak = nf > a.abs().max(b.abs());
        if past_peak && term.abs() <= TINY * sum.abs() && coef.abs() <= TINY * sum.abs() {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
        coef *= (a + nf) * (b + nf) / ((nf + 1.0) * (nf + 1.0)) * q;
        psi_n1 += 1.0 / (nf + 1.0);
        psi_an += 1.0 / (a + nf);
        psi_bn += 1.0 / (b + nf);
    }
    Err(Error::NonConvergence { what: "logarithmic 2F1 expansion", iterations: MAX_TERMS })
}

/// Connection formula about `w = 1` for non-integer `c − a − b`.
fn connection(a: f64, b: f64, c: f64, q: f64) -> Result<f64> {
    let s = c - a - b;
    let g_c = gamma(c)?;
    let first = g_c * gamma(s)? * rgamma(c - a) * rgamma(c - b);
    let second = g_c * gamma(-s)? * rgamma(a) * rgamma(b);
    let mut value = 0.0;
    if first != 0.0 {
        value += first * gauss_series(a, b, 1.0 - s, q)?;
    }
    if second != 0.0 {
        value += second * q.powf(s) * gauss_series(c - a, c - b, 1.0 + s, q)?;
    }
    Ok(value)
}

/// `₂F₁(a, a; 2a; w)` for a fixed `a > 0`, with the log-case constants cached.
///
/// The argument is passed both as `w` and as `q = 1 − w`.
#[derive(Debug, Clone, Copy)]
pub struct KernelHypergeometric {
    a: f64,
    prefactor: f64,
    psi_a: f64,
}

impl KernelHypergeometric {
    pub fn new(a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::domain(format!("kernel hypergeometric needs a > 0, got {a}")));
        }
        Ok(Self { a, prefactor: log_case_prefactor(a, a)?, psi_a: digamma(a)? })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// `Γ(2a)/Γ(a)²`.
    pub fn log_prefactor(&self) -> f64 {
        self.prefactor
    }

    pub fn digamma_a(&self) -> f64 {
        self.psi_a
    }

    pub fn eval(&self, w: f64, q: f64) -> Result<f64> {
        let a = self.a;
        if w <= SERIES_SWITCH {
            return gauss_series(a, a, 2.0 * a, w);
        }
        if log_case_peak(a, a, q) > LOG_CASE_PEAK_LIMIT && series_terms_estimate(a, a, w) < MAX_TERMS as f64 {
            return gauss_series(a, a, 2.0 * a, w);
        }
        Ok(self.prefactor * log_case_sum(a, a, self.psi_a, self.psi_a, q)?)
    }
}
