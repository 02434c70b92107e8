//! Paired evaluations of identities between operators, for callers to
//! compare.

use crate::error::{Error, Result};
use crate::function::{GridFunction, Mesh, PowerWeighted, RealFunction};
use crate::operators::derivative::{laguerre_d_left, laguerre_d_right};
use crate::operators::integral::{FractionalIntegral, Side};
use crate::quad::{gauss_legendre, integrate, Tolerance};

const PAIRING_TOL: Tolerance = Tolerance::new(1e-300, 1e-11);
const PAIRING_SEGMENTS: usize = 4000;
const GRID_PANEL_ORDER: usize = 12;

/// `∫₀^∞ a(x) b(x) dx` over the support of `a`, which must be bounded.
pub fn pairing<A: RealFunction + ?Sized, B: RealFunction + ?Sized>(a: &A, b: &B) -> Result<f64> {
    let (lo, hi) = a.support();
    if !hi.is_finite() {
        return Err(Error::domain("pairing needs a boundedly supported first factor"));
    }
    let mut points = vec![lo];
    let mut breaks: Vec<f64> = a.breakpoints().into_iter().chain(b.breakpoints()).filter(|&t| t > lo && t < hi).collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    points.extend(breaks);
    points.push(hi);
    let mut sum = 0.0;
    for w in points.windows(2) {
        sum += integrate(
            |x| {
                let av = a.eval(x)?;
                Ok(if av == 0.0 { 0.0 } else { av * b.eval(x)? })
            },
            w[0],
            w[1],
            PAIRING_TOL,
            PAIRING_SEGMENTS,
        )?
        .value;
    }
    Ok(sum)
}

/// `∫ a(x) g(x) dx` with one Gauss–Legendre panel per mesh cell of `g`, on
/// which its interpolant is a single polynomial.
pub fn grid_pairing<A: RealFunction + ?Sized>(a: &A, g: &GridFunction) -> Result<f64> {
    let (lo, hi) = a.support();
    let mut sum = 0.0;
    let mut left = 0.0f64;
    for &right in g.nodes() {
        let (c, d) = (left.max(lo), right.min(hi));
        if c < d {
            for (x, w) in gauss_legendre(GRID_PANEL_ORDER).mapped(c, d) {
                let av = a.eval(x)?;
                if av != 0.0 {
                    sum += w * av * g.value_at(x);
                }
            }
        }
        left = right;
    }
    Ok(sum)
}

/// `((I₀₊ⁿ x⁻ⁿ I₀₊ⁿ f)(x), (L₀₊ⁿ f)(x))`, the first by nested
/// Riemann–Liouville integrals, the second through the hypergeometric kernel.
pub fn rl_composition_check<F: RealFunction + ?Sized>(f: &F, n: u32, x: f64) -> Result<(f64, f64)> {
    if !(1..=3).contains(&n) {
        return Err(Error::domain(format!("composition check supports n in 1..=3, got {n}")));
    }
    let order = n as f64;
    let rl = FractionalIntegral::riemann_liouville(Side::Left, order)?;
    let weighted = PowerWeighted { inner: rl.image(f), power: -order };
    let nested = rl.eval(&weighted, x)?;
    let direct = FractionalIntegral::laguerre(Side::Left, order)?.eval(f, x)?;
    Ok((nested, direct))
}

/// `(∫ f·L₀₊^α g, ∫ g·L₋^α f)` for boundedly supported `f`, `g`.
pub fn integration_by_parts_check<F, G>(f: &F, g: &G, alpha: f64) -> Result<(f64, f64)>
where
    F: RealFunction + ?Sized,
    G: RealFunction + ?Sized,
{
    let left = FractionalIntegral::laguerre(Side::Left, alpha)?;
    let right = FractionalIntegral::laguerre(Side::Right, alpha)?;
    Ok((pairing(f, &left.image(g))?, pairing(g, &right.image(f))?))
}

/// `(∫ f·𝒟₀₊^α g, ∫ g·𝒟₋^α f)` with both derivatives tabulated on `mesh`,
/// whose interior must contain the supports of `f` and `g`.
pub fn derivative_ibp_check<F, G>(f: &F, g: &G, alpha: f64, mesh: &Mesh) -> Result<(f64, f64)>
where
    F: RealFunction + ?Sized,
    G: RealFunction + ?Sized,
{
    for support in [f.support(), g.support()] {
        if !(support.1 < mesh.length()) {
            return Err(Error::domain("supports must lie inside the mesh"));
        }
    }
    let dg = laguerre_d_left(g, alpha, mesh)?;
    let df = laguerre_d_right(f, alpha, mesh)?;
    Ok((grid_pairing(f, &dg)?, grid_pairing(g, &df)?))
}
