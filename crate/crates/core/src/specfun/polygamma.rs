//! Digamma and higher polygamma functions on the real line.

use crate::error::{Error, Result};

// B_2, B_4, ..., B_40
const BERNOULLI_EVEN: [f64; 20] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
];

const MAX_ORDER: u32 = 100;

/// `ψ⁽ⁿ⁾(x)`, the n-th derivative of the digamma function.
///
/// Arguments are shifted upward with the recurrence until the asymptotic
/// expansion is accurate, so negative non-integer `x` is accepted as well.
pub fn polygamma(n: u32, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("polygamma at non-finite argument {x}")));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::Pole(format!("{x}")));
    }
    if n > MAX_ORDER {
        return Err(Error::domain(format!("polygamma order {n} exceeds {MAX_ORDER}")));
    }
    let threshold = 20f64.max(n as f64 + 10.0);
    let nf = n as f64;
    let n_factorial: f64 = (1..=n).map(|k| k as f64).product();
    // (-1)^n n!
    let signed_fact = if n % 2 == 0 { n_factorial } else { -n_factorial };

    let mut x = x;
    let mut shift = 0.0;
    while x < threshold {
        shift += x.powi(-(n as i32) - 1);
        x += 1.0;
    }
    Ok(asymptotic(n, nf, n_factorial, x) - signed_fact * shift)
}

fn asymptotic(n: u32, nf: f64, n_factorial: f64, x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    if n == 0 {
        let mut sum = x.ln() - 0.5 * inv;
        let mut p = inv2;
        for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
            let term = b / (2.0 * (k + 1) as f64) * p;
            sum -= term;
            if term.abs() < 1e-17 * sum.abs() {
                break;
            }
            p *= inv2;
        }
        return sum;
    }
    // (-1)^{n+1} [ (n-1)!/x^n + n!/(2 x^{n+1}) + Σ B_2k (2k+n-1)!/((2k)! x^{2k+n}) ]
    let xn = x.powi(n as i32);
    let n_minus_1_fact = n_factorial / nf;
    let mut sum = n_minus_1_fact / xn + 0.5 * n_factorial / (xn * x);
    // ratio (2k+n-1)!/(2k)! built up as k increases
    let mut ratio: f64 = (1..n).map(|j| (2 + j) as f64).product(); // k = 1: (n+1)!/2!
    let mut p = inv2 / xn;
    for (k0, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k = (k0 + 1) as f64;
        let term = b * ratio * p;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
        // advance ratio from k to k+1: multiply by (2k+n)(2k+n+1)/((2k+1)(2k+2))
        ratio *= (2.0 * k + nf) * (2.0 * k + nf + 1.0) / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
        p *= inv2;
    }
    if n % 2 == 1 {
        sum
    } else {
        -sum
    }
}

/// Digamma `ψ(x)`.
pub fn digamma(x: f64) -> Result<f64> {
    polygamma(0, x)
}
