//! Forward transforms, multiplier application and the Parseval pairing.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::{Decay, RealFunction};
use crate::mellin::contour::{mellin_inverse, Inversion, MellinContour};
use crate::mellin::multiplier::{MultiplierDescriptor, Strip};
use crate::quad::{integrate, Tolerance};

/// `−ln` of the relative size at which tails are cut off.
const TAIL_LOG: f64 = 40.0;
const TOL: Tolerance = Tolerance::new(1e-300, 1e-12);
const SEGMENTS: usize = 4000;

/// Range of `Re s` on which `∫₀^∞ |f(x)| x^{Re s − 1} dx` converges, read off
/// the growth and decay metadata.
pub fn fundamental_strip<F: RealFunction + ?Sized>(f: &F) -> Strip {
    let (lo, hi) = f.support();
    if !(lo < hi) {
        return Strip::ALL;
    }
    let below = if lo > 0.0 { f64::NEG_INFINITY } else { -f.growth_at_zero() };
    let above = if hi.is_finite() {
        f64::INFINITY
    } else {
        match f.decay() {
            Decay::Compact | Decay::Exponential { .. } => f64::INFINITY,
            Decay::Algebraic { exponent } => exponent,
        }
    };
    Strip::new(below, above)
}

/// `∫₀^∞ φ(x) dx` for `φ` vanishing outside `support`, behaving like `x^p`
/// at `0` with `p = power_at_zero`, and decaying at infinity as described.
///
/// The integral is taken in `t = ln x`, truncated where the integrand has
/// dropped by `e^{-40}`.
pub fn half_line_integral<G: FnMut(f64) -> Result<f64>>(phi: G, support: (f64, f64), power_at_zero: f64, decay: Decay) -> Result<f64> {
    integral_with_tolerance(phi, support, power_at_zero, decay, TOL)
}

fn integral_with_tolerance<G: FnMut(f64) -> Result<f64>>(
    mut phi: G,
    support: (f64, f64),
    power_at_zero: f64,
    decay: Decay,
    tol: Tolerance,
) -> Result<f64> {
    let (lo, hi) = support;
    if !(lo < hi) {
        return Ok(0.0);
    }
    let t_lo = if lo > 0.0 {
        lo.ln()
    } else {
        if power_at_zero <= -1.0 {
            return Err(Error::Divergence(format!("integrand ~ x^{power_at_zero} at 0")));
        }
        -TAIL_LOG / (power_at_zero + 1.0).min(TAIL_LOG)
    };
    let t_hi = if hi.is_finite() {
        hi.ln()
    } else {
        match decay {
            Decay::Exponential { rate } => ((TAIL_LOG + 20.0) / rate).ln().max(t_lo + 1.0),
            Decay::Algebraic { exponent } if exponent > 1.0 => TAIL_LOG / (exponent - 1.0),
            Decay::Algebraic { exponent } => return Err(Error::Divergence(format!("integrand ~ x^-{exponent} at ∞"))),
            Decay::Compact => return Err(Error::domain("unbounded support with compact decay")),
        }
    };
    // split at the unit point and at the ends so that both tails get their own segments
    let mut cuts = vec![t_lo];
    if t_lo < 0.0 && 0.0 < t_hi {
        cuts.push(0.0);
    }
    cuts.push(t_hi);
    let mut sum = 0.0;
    for w in cuts.windows(2) {
        sum += integrate(
            |t| {
                let x = t.exp();
                Ok(phi(x)? * x)
            },
            w[0],
            w[1],
            tol,
            SEGMENTS,
        )?
        .value;
    }
    Ok(sum)
}

/// `f*(s) = ∫₀^∞ f(x) x^{s−1} dx`, from the closed form when the function
/// has one and by quadrature otherwise.
pub fn mellin_forward<F: RealFunction + ?Sized>(f: &F, s: Complex64) -> Result<Complex64> {
    let strip = fundamental_strip(f);
    if !strip.contains(s.re) {
        return Err(Error::Strip(format!("Re s = {} outside the fundamental strip {strip} of f", s.re)));
    }
    if let Some(v) = f.mellin_closed_form(s) {
        return v;
    }
    let power = f.growth_at_zero() + s.re - 1.0;
    let decay = match f.decay() {
        Decay::Algebraic { exponent } => Decay::Algebraic { exponent: exponent - s.re + 1.0 },
        d => d,
    };
    let support = f.support();
    // oscillation can cancel either part far below the size of the integrand,
    // so the error is measured against ∫|f| x^{Re s − 1} dx
    let scale = half_line_integral(|x| Ok(f.eval(x)?.abs() * x.powf(s.re - 1.0)), support, power, decay)?;
    let tol = Tolerance::new(1e-13 * scale, TOL.rel);
    let part = |imag: bool| {
        integral_with_tolerance(
            |x| {
                let v = f.eval(x)?;
                if v == 0.0 {
                    return Ok(0.0);
                }
                let phase = s.im * x.ln();
                let m = v * x.powf(s.re - 1.0);
                Ok(if imag { m * phase.sin() } else { m * phase.cos() })
            },
            support,
            power,
            decay,
            tol,
        )
    };
    Ok(Complex64::new(part(false)?, part(true)?))
}

/// Range of contour abscissas admissible for `ops` applied in order to `f`.
pub fn admissible_strip<F: RealFunction + ?Sized>(f: &F, ops: &[MultiplierDescriptor]) -> Strip {
    ops.iter().fold(fundamental_strip(f), |strip, md| strip.shifted(md.shift()).intersect(&md.strip()))
}

/// `(T_k ⋯ T_1 f)(x)` for the operators `ops = [T_1, …, T_k]` by inverting
/// the product of their multipliers.
///
/// With no contour, one is placed in the middle of the admissible strip.
pub fn apply_chain<F: RealFunction + ?Sized>(f: &F, ops: &[MultiplierDescriptor], contour: Option<&MellinContour>, x: f64) -> Result<Inversion> {
    let strip = admissible_strip(f, ops);
    if strip.is_empty() {
        return Err(Error::Strip(format!("no admissible contour for {} operator(s) applied to f", ops.len())));
    }
    let contour = match contour {
        Some(c) => {
            if !strip.contains(c.nu()) {
                return Err(Error::Strip(format!("ν = {} outside the admissible strip {strip}", c.nu())));
            }
            *c
        }
        None => MellinContour::for_strip(&strip)?,
    };
    mellin_inverse(
        |s| {
            let mut arg = s;
            let mut factor = Complex64::new(1.0, 0.0);
            for md in ops.iter().rev() {
                factor *= md.eval(arg)?;
                arg += md.shift();
            }
            if factor == Complex64::new(0.0, 0.0) {
                return Ok(factor);
            }
            Ok(factor * mellin_forward(f, arg)?)
        },
        &contour,
        x,
    )
}

/// `(Tf)(x)` for the single operator described by `md`.
pub fn apply_multiplier<F: RealFunction + ?Sized>(f: &F, md: &MultiplierDescriptor, contour: Option<&MellinContour>, x: f64) -> Result<f64> {
    Ok(apply_chain(f, std::slice::from_ref(md), contour, x)?.value)
}

/// `(∫₀^∞ f g dx, (1/2πi) ∫ f*(s) g*(1−s) ds)` along the contour, placed in
/// the middle of the common strip when not given.
pub fn parseval_pair<F, G>(f: &F, g: &G, contour: Option<&MellinContour>) -> Result<(f64, f64)>
where
    F: RealFunction + ?Sized,
    G: RealFunction + ?Sized,
{
    let sf = fundamental_strip(f);
    let sg = fundamental_strip(g);
    let strip = sf.intersect(&Strip::new(1.0 - sg.hi, 1.0 - sg.lo));
    if strip.is_empty() {
        return Err(Error::Strip(format!("strips {sf} and 1 − {sg} do not overlap")));
    }
    let contour = match contour {
        Some(c) if strip.contains(c.nu()) => *c,
        Some(c) => return Err(Error::Strip(format!("ν = {} outside the common strip {strip}", c.nu()))),
        None => MellinContour::for_strip(&strip)?,
    };
    let (fa, fb) = f.support();
    let (ga, gb) = g.support();
    let support = (fa.max(ga), fb.min(gb));
    let decay = combined_decay(f.decay(), g.decay());
    let direct = half_line_integral(
        |x| {
            let a = f.eval(x)?;
            if a == 0.0 {
                return Ok(0.0);
            }
            Ok(a * g.eval(x)?)
        },
        support,
        f.growth_at_zero() + g.growth_at_zero(),
        decay,
    )?;
    // (1/2πi)∫ f*(s) g*(1−s) ds is the inverse transform at x = 1
    let contour_value = mellin_inverse(|s| Ok(mellin_forward(f, s)? * mellin_forward(g, 1.0 - s)?), &contour, 1.0)?.value;
    Ok((direct, contour_value))
}

fn combined_decay(a: Decay, b: Decay) -> Decay {
    match (a, b) {
        (Decay::Compact, _) | (_, Decay::Compact) => Decay::Compact,
        (Decay::Exponential { rate: r }, Decay::Exponential { rate: q }) => Decay::Exponential { rate: r + q },
        (Decay::Exponential { rate }, _) | (_, Decay::Exponential { rate }) => Decay::Exponential { rate: 0.5 * rate },
        (Decay::Algebraic { exponent: p }, Decay::Algebraic { exponent: q }) => Decay::Algebraic { exponent: p + q },
    }
}
