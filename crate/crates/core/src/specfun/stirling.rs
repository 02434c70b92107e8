//! Fractional Stirling functions: Taylor coefficients of the falling factorial
//! `[u]_α = Γ(1+u)/Γ(1+u−α)` about `u = 0`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::gamma::{cospi, gamma, rgamma, sinpi};
use crate::specfun::polygamma::polygamma;

const MAX_ORDER: usize = 60;

/// Signed Stirling numbers of the first kind `s(n, k)`, exact up to `n = 30`.
pub fn stirling_first_kind(n: u32, k: u32) -> Result<f64> {
    if n > 30 {
        return Err(Error::domain(format!("exact Stirling numbers limited to n ≤ 30, got {n}")));
    }
    if k > n {
        return Ok(0.0);
    }
    // s(m+1, j) = s(m, j-1) - m s(m, j)
    let mut row = vec![0i128; n as usize + 1];
    row[0] = 1;
    for m in 0..n as usize {
        for j in (0..=m + 1).rev() {
            let prev = if j > 0 { row[j - 1] } else { 0 };
            row[j] = prev - m as i128 * row[j];
        }
    }
    Ok(row[k as usize] as f64)
}

/// Taylor series `exp(Σ_{j≥1} g[j] u^j)` to the length of `g` (`g[0]` ignored).
fn exp_series(g: &[f64]) -> Vec<f64> {
    let n = g.len();
    let mut a = vec![0.0; n];
    if n == 0 {
        return a;
    }
    a[0] = 1.0;
    for k in 1..n {
        let mut s = 0.0;
        for j in 1..=k {
            s += j as f64 * g[j] * a[k - j];
        }
        a[k] = s / k as f64;
    }
    a
}

fn mul_series(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().min(b.len());
    (0..n).map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum()).collect()
}

/// Taylor coefficients of `ln Γ(x0 + u)` (without the constant term), scaled
/// by `sign` on `u`: entry `j` is `ψ⁽ʲ⁻¹⁾(x0) sign^j / j!`.
fn ln_gamma_taylor(x0: f64, order: usize, sign: f64) -> Result<Vec<f64>> {
    let mut g = vec![0.0; order + 1];
    let mut fact = 1.0;
    let mut s = 1.0;
    for j in 1..=order {
        fact *= j as f64;
        s *= sign;
        g[j] = polygamma((j - 1) as u32, x0)? * s / fact;
    }
    Ok(g)
}

/// `s(α, 0), …, s(α, order)`.
pub fn stirling_series(alpha: f64, order: usize) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::domain(format!("Stirling function needs alpha > 0, got {alpha}")));
    }
    if order > MAX_ORDER {
        return Err(Error::domain(format!("Stirling series order {order} exceeds {MAX_ORDER}")));
    }
    if alpha == alpha.floor() && alpha <= 30.0 {
        let n = alpha as u32;
        return (0..=order).map(|k| stirling_first_kind(n, k as u32)).collect();
    }
    // Γ(1+u), Γ(1) = 1
    let numerator = exp_series(&ln_gamma_taylor(1.0, order, 1.0)?);
    let base = 1.0 - alpha;
    let reciprocal = if base >= 0.5 {
        // 1/Γ(base + u) = exp(-lnΓ(base + u))
        let mut g = ln_gamma_taylor(base, order, 1.0)?;
        g.iter_mut().for_each(|v| *v = -*v);
        let scale = rgamma(base);
        exp_series(&g).into_iter().map(|v| v * scale).collect::<Vec<_>>()
    } else {
        // 1/Γ(base + u) = sin(π(base + u)) Γ(α − u) / π, free of poles near u = 0
        let gamma_part = {
            let scale = gamma(alpha)?;
            exp_series(&ln_gamma_taylor(alpha, order, -1.0)?).into_iter().map(|v| v * scale).collect::<Vec<_>>()
        };
        let (sb, cb) = (sinpi(base), cospi(base));
        let mut trig = vec![0.0; order + 1];
        let mut pk = 1.0; // π^k / k!
        for (k, t) in trig.iter_mut().enumerate() {
            if k > 0 {
                pk *= PI / k as f64;
            }
            // sin(πb + πu) = sin(πb) cos(πu) + cos(πb) sin(πu)
            *t = match k % 4 {
                0 => sb * pk,
                1 => cb * pk,
                2 => -sb * pk,
                _ => -cb * pk,
            };
        }
        mul_series(&trig, &gamma_part).into_iter().map(|v| v / PI).collect()
    };
    Ok(mul_series(&numerator, &reciprocal))
}

/// Stirling function `s(α, k)`.
pub fn stirling_s(alpha: f64, k: usize) -> Result<f64> {
    Ok(stirling_series(alpha, k)?[k])
}

/// `c_k(α) = Σ_{j=0}^{k} s(α, j) s(α, k−j)`, the Taylor coefficients of `[u]_α²`.
pub fn cauchy_ck(alpha: f64, k: usize) -> Result<f64> {
    let s = stirling_series(alpha, k)?;
    Ok((0..=k).map(|j| s[j] * s[k - j]).sum())
}
