//! Gauss–Legendre and Gauss–Jacobi rules on `[-1, 1]`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::specfun::ln_gamma_abs;

/// A quadrature rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped affinely onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes.iter().zip(&self.weights).map(move |(&x, &w)| (mid + half * x, half * w))
    }
}

const MAX_CACHED: usize = 64;

/// Gauss–Legendre rule with `n` points; rules up to 64 points are cached.
pub fn gauss_legendre(n: usize) -> &'static Rule {
    static CACHE: OnceLock<Vec<Rule>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| (0..=MAX_CACHED).map(legendre_rule).collect());
    assert!(n >= 1 && n <= MAX_CACHED, "Gauss–Legendre order {n} outside 1..={MAX_CACHED}");
    &cache[n]
}

fn legendre_rule(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Rule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Jacobi rule for the weight `(1-x)^a (1+x)^b`, `a, b > -1`.
///
/// Nodes come from the Golub–Welsch eigenproblem and are polished by Newton
/// iteration on the Jacobi polynomial; weights use the closed-form expression.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> Result<Rule> {
    if n == 0 {
        return Err(Error::domain("Gauss–Jacobi rule needs at least one node"));
    }
    if !(a > -1.0 && b > -1.0) {
        return Err(Error::domain(format!("Gauss–Jacobi exponents must exceed -1, got ({a}, {b})")));
    }
    let ab = a + b;
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    for (k, d) in diag.iter_mut().enumerate() {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        *d = if k == 0 { (b - a) / (ab + 2.0) } else { (b * b - a * a) / (s * (s + 2.0)) };
    }
    for k in 1..n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let num = 4.0 * kf * (kf + a) * (kf + b) * (kf + ab);
        let den = s * s * (s + 1.0) * (s - 1.0);
        off[k] = (num / den).sqrt();
    }
    let mut nodes = tridiagonal_eigenvalues(diag, off)?;
    nodes.sort_by(|x, y| x.partial_cmp(y).unwrap());

    let nf = n as f64;
    // log of 2^{a+b+1} Γ(n+a+1)Γ(n+b+1) / (Γ(n+a+b+1) n!)
    let ln_const = (ab + 1.0) * 2f64.ln() + ln_gamma_abs(nf + a + 1.0)? + ln_gamma_abs(nf + b + 1.0)?
        - ln_gamma_abs(nf + ab + 1.0)?
        - ln_gamma_abs(nf + 1.0)?;
    let mut weights = vec![0.0; n];
    for (x, w) in nodes.iter_mut().zip(weights.iter_mut()) {
        for _ in 0..10 {
            let (p, d) = jacobi_with_derivative(n, a, b, *x);
            let dx = p / d;
            *x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = jacobi_with_derivative(n, a, b, *x);
        *w = (ln_const - (1.0 - *x * *x).ln() - 2.0 * d.abs().ln()).exp();
    }
    Ok(Rule { nodes, weights })
}

/// `P_n^{(a,b)}(x)` and its derivative by the three-term recurrence.
fn jacobi_with_derivative(n: usize, a: f64, b: f64, x: f64) -> (f64, f64) {
    let ab = a + b;
    let mut p0 = 1.0;
    let mut p1 = 0.5 * (a - b + (ab + 2.0) * x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let c1 = 2.0 * kf * (kf + ab) * (s - 2.0);
        let c2 = (s - 1.0) * (a * a - b * b);
        let c3 = (s - 2.0) * (s - 1.0) * s;
        let c4 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * s;
        let p2 = ((c2 + c3 * x) * p1 - c4 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    // (2n+a+b)(1-x²) P_n' = n[(a-b) - (2n+a+b)x] P_n + 2(n+a)(n+b) P_{n-1}
    let nf = n as f64;
    let s = 2.0 * nf + ab;
    let d = (nf * ((a - b) - s * x) * p1 + 2.0 * (nf + a) * (nf + b) * p0) / (s * (1.0 - x * x));
    (p1, d)
}

/// Eigenvalues of a symmetric tridiagonal matrix (implicit QL).
/// `off[k]` couples rows `k-1` and `k`; `off[0]` is ignored.
fn tridiagonal_eigenvalues(mut d: Vec<f64>, off: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(&off[1..n]);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NonConvergence { what: "tridiagonal QL", iterations: 60 });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(d)
}
