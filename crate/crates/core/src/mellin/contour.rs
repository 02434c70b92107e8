//! Inversion along the vertical line `Re s = ν`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mellin::multiplier::{MultiplierDescriptor, Strip};

/// Relative size of the last doubling's contribution at which the
/// truncation height stops growing.
const OCTAVE_TOL: f64 = 1e-10;
/// Decay exponent below which the integrand is rejected.
const MIN_DECAY: f64 = 1.1;
const MAX_NODES: usize = 1 << 21;
/// Target `−ln` of the trapezoid discretisation error.
const DIGITS: f64 = 30.0;
/// Allowance for `|ln x|` in the step choice.
const LOG_X_ALLOWANCE: f64 = 8.0;

/// The line `s = ν + iτ`, sampled with step `h` in `τ` from `0` to at least `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinContour {
    nu: f64,
    t: f64,
    h: f64,
}

impl MellinContour {
    pub fn new(nu: f64, t: f64, h: f64) -> Result<Self> {
        if !(nu.is_finite() && t > 0.0 && t.is_finite() && h > 0.0) {
            return Err(Error::domain(format!("contour needs finite ν and positive T, h; got ν = {nu}, T = {t}, h = {h}")));
        }
        if h > t / 50.0 {
            return Err(Error::domain(format!("contour step h = {h} exceeds T/50 = {}", t / 50.0)));
        }
        Ok(Self { nu, t, h })
    }

    /// A contour through the middle of `strip`, with a step fine enough for
    /// the trapezoid rule to reach full accuracy given the distance to the
    /// nearest singularity.
    pub fn for_strip(strip: &Strip) -> Result<Self> {
        let nu = strip.center()?;
        Self::at(nu, strip)
    }

    /// A contour at `nu` with the step chosen from the margin left in `strip`.
    pub fn at(nu: f64, strip: &Strip) -> Result<Self> {
        if !strip.contains(nu) {
            return Err(Error::Strip(format!("ν = {nu} outside {strip}")));
        }
        let d = strip.margin(nu).min(1.0);
        let h = 2.0 * PI / (DIGITS / d + LOG_X_ALLOWANCE);
        Self::new(nu, (50.0 * h).max(8.0), h)
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn height(&self) -> f64 {
        self.t
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    /// Fails when the line passes through a pole of `md` or leaves its strip.
    pub fn check(&self, md: &MultiplierDescriptor) -> Result<()> {
        if !md.strip().contains(self.nu) {
            return Err(Error::Strip(format!("ν = {} outside {} for {md}", self.nu, md.strip())));
        }
        Ok(())
    }
}

/// Result of a contour inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion {
    pub value: f64,
    /// Size of the contribution from the last doubling of the height.
    pub error: f64,
    /// Truncation height actually used.
    pub height: f64,
}

/// `(1/2πi) ∫ F(s) x^{−s} ds` along the contour, for `F` with the conjugate
/// symmetry of a real function's transform.
///
/// The trapezoid sum is extended by doubling the height until the last
/// doubling changes the value by less than `1e-10` relative.
pub fn mellin_inverse<F: Fn(Complex64) -> Result<Complex64>>(transform: F, contour: &MellinContour, x: f64) -> Result<Inversion> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain(format!("inverse Mellin transform needs x > 0, got {x}")));
    }
    let (nu, h) = (contour.nu, contour.h);
    let lnx = x.ln();
    let g = |tau: f64| -> Result<Complex64> {
        let s = Complex64::new(nu, tau);
        let v = transform(s)?;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Divergence(format!("transform is not finite at {s}")));
        }
        Ok(v * (-s * lnx).exp())
    };
    let mut total = 0.5 * g(0.0)?.re;
    let mut k = 1usize;
    let mut end = (contour.t / h).ceil() as usize;
    let mut previous_peak = f64::INFINITY;
    let mut octaves = 0;
    loop {
        let mut part = 0.0;
        let mut peak: f64 = 0.0;
        while k <= end {
            let v = g(k as f64 * h)?;
            part += v.re;
            peak = peak.max(v.norm());
            k += 1;
        }
        total += part;
        let scale = h / PI;
        let err = (part * scale).abs();
        if octaves > 0 && err <= OCTAVE_TOL * (total * scale).abs() {
            return Ok(Inversion { value: total * scale, error: err, height: end as f64 * h });
        }
        if octaves > 1 && peak > 0.0 && peak > previous_peak * 2f64.powf(-MIN_DECAY) {
            return Err(Error::InsufficientDecay(format!("|F(ν+iτ)| decays slower than |τ|^-{MIN_DECAY} near τ = {}", end as f64 * h)));
        }
        if 2 * end > MAX_NODES {
            return Err(Error::TruncationBudget(format!("no convergence up to τ = {}", end as f64 * h)));
        }
        previous_peak = peak;
        octaves += 1;
        end *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma_complex;

    fn contour() -> MellinContour {
        MellinContour::for_strip(&Strip::new(0.0, f64::INFINITY)).unwrap()
    }

    #[test]
    fn gamma_inverts_to_exponential() {
        for &x in &[0.5, 1.0, 2.0] {
            let inv = mellin_inverse(gamma_complex, &MellinContour::at(1.0, &Strip::new(0.0, f64::INFINITY)).unwrap(), x).unwrap();
            assert!((inv.value - (-x).exp()).abs() < 1e-12, "x = {x}: {}", inv.value);
        }
    }

    #[test]
    fn zero_transform() {
        let inv = mellin_inverse(|_| Ok(Complex64::new(0.0, 0.0)), &contour(), 1.0).unwrap();
        assert_eq!(inv.value, 0.0);
    }

    #[test]
    fn slow_decay_is_rejected() {
        let r = mellin_inverse(|s| Ok(1.0 / (1.0 + s * s).sqrt()), &contour(), 1.3);
        assert!(matches!(r, Err(Error::InsufficientDecay(_))), "{r:?}");
    }

    #[test]
    fn invalid_contours() {
        assert!(MellinContour::new(0.5, 1.0, 0.1).is_err());
        assert!(MellinContour::at(2.0, &Strip::new(0.0, 1.0)).is_err());
    }
}
