//! Gamma, log-gamma and reciprocal gamma on the real line and in the
//! complex plane.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos approximation, g = 671/128, 14 terms (Numerical Recipes, 3rd ed.).
// Relative error below 1e-15 for Re z > 0.
const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_1;
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `sin(pi x)` with exact zeros at the integers.
pub fn sinpi(x: f64) -> f64 {
    if x == x.floor() {
        return 0.0;
    }
    // reduce to r in [-1, 1]
    let r = x - 2.0 * (x / 2.0).round();
    let (sign, r) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    let v = if r <= 0.25 {
        (PI * r).sin()
    } else if r <= 0.75 {
        (PI * (0.5 - r)).cos()
    } else {
        (PI * (1.0 - r)).sin()
    };
    sign * v
}

/// `cos(pi x)` with exact zeros at the half integers.
pub fn cospi(x: f64) -> f64 {
    sinpi(x + 0.5)
}

fn lanczos_ln_gamma_real(x: f64) -> f64 {
    let tmp = x + LANCZOS_G;
    let tmp = (x + 0.5) * tmp.ln() - tmp;
    let mut ser = LANCZOS_C0;
    let mut y = x;
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    tmp + (SQRT_2PI * ser / x).ln()
}

fn lanczos_ln_gamma_complex(z: Complex64) -> Complex64 {
    let tmp = z + LANCZOS_G;
    let tmp = (z + 0.5) * tmp.ln() - tmp;
    let mut ser = Complex64::new(LANCZOS_C0, 0.0);
    let mut y = z;
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    tmp + (ser * SQRT_2PI / z).ln()
}

/// `ln |Γ(x)|` for real `x` off the poles.
pub fn ln_gamma_abs(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("ln_gamma of non-finite argument {x}")));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(format!("{x}")));
    }
    if x >= 0.5 {
        Ok(lanczos_ln_gamma_real(x))
    } else {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        Ok(PI.ln() - sinpi(x).abs().ln() - lanczos_ln_gamma_real(1.0 - x))
    }
}

/// `Γ(x)` for real `x` off the poles. Overflow is reported as a domain error.
pub fn gamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(format!("{x}")));
    }
    let value = if x >= 0.5 {
        lanczos_ln_gamma_real(x).exp()
    } else {
        PI / (sinpi(x) * lanczos_ln_gamma_real(1.0 - x).exp())
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::domain(format!("Γ({x}) overflows")))
    }
}

/// `1/Γ(x)`, an entire function: exactly zero at the poles of `Γ`.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x >= 0.5 {
        (-lanczos_ln_gamma_real(x)).exp()
    } else {
        sinpi(x) * lanczos_ln_gamma_real(1.0 - x).exp() / PI
    }
}

/// Principal branch of `ln Γ(z)`.
///
/// For `Re z < 1/2` the value is obtained from `ln Γ(z+n) - Σ ln(z+k)`, which
/// preserves the principal branch (the recurrence `lnΓ(z+1) = lnΓ(z) + ln z`
/// holds off the negative real axis).
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(format!("ln_gamma of non-finite argument {z}")));
    }
    if z.im == 0.0 && is_nonpositive_integer(z.re) {
        return Err(Error::Pole(format!("{z}")));
    }
    if z.re >= 0.5 {
        if z.im == 0.0 {
            return Ok(Complex64::new(lanczos_ln_gamma_real(z.re), 0.0));
        }
        return Ok(lanczos_ln_gamma_complex(z));
    }
    let n = (0.5 - z.re).ceil() as usize;
    let mut shift = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let t = z + k as f64;
        // keep the branch of ln on the negative real axis at +iπ
        shift += if t.im == 0.0 && t.re < 0.0 {
            Complex64::new((-t.re).ln(), PI)
        } else {
            t.ln()
        };
    }
    let zn = z + n as f64;
    let base = if zn.im == 0.0 {
        Complex64::new(lanczos_ln_gamma_real(zn.re), 0.0)
    } else {
        lanczos_ln_gamma_complex(zn)
    };
    Ok(base - shift)
}

/// Complex `Γ(z)`.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(z)?.exp())
}

fn pole_index(z: Complex64) -> Option<u64> {
    if z.im == 0.0 && is_nonpositive_integer(z.re) {
        Some((-z.re) as u64)
    } else {
        None
    }
}

/// `(Γ(num)/Γ(den))²`, evaluated through log-gamma differences so that
/// neither gamma value is ever formed on its own.
///
/// When both arguments sit on poles the ratio is the limit of the residues.
/// A pole in the denominator alone gives zero; a pole in the numerator alone
/// is reported.
pub fn gamma_ratio_sq(num: Complex64, den: Complex64) -> Result<Complex64> {
    match (pole_index(num), pole_index(den)) {
        (Some(kn), Some(kd)) => {
            // Γ(-k + ε) ~ (-1)^k / (k! ε)
            let mut ratio = 1.0f64;
            if kd >= kn {
                for j in (kn + 1)..=kd {
                    ratio *= j as f64;
                }
            } else {
                for j in (kd + 1)..=kn {
                    ratio /= j as f64;
                }
            }
            Ok(Complex64::new(ratio * ratio, 0.0))
        }
        (Some(_), None) => Err(Error::Pole(format!("{num}"))),
        (None, Some(_)) => Ok(Complex64::new(0.0, 0.0)),
        (None, None) => {
            let d = ln_gamma(num)? - ln_gamma(den)?;
            Ok((d * 2.0).exp())
        }
    }
}

/// Euler beta function for positive arguments.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    if a <= 0.0 || b <= 0.0 {
        return Err(Error::domain(format!("beta({a}, {b}) needs positive arguments")));
    }
    Ok((ln_gamma_abs(a)? + ln_gamma_abs(b)? - ln_gamma_abs(a + b)?).exp())
}
