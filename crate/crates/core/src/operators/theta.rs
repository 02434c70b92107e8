//! Powers of the Laguerre derivative `θ = D x D` on tabulated functions.
//!
//! With `y = ln x` and `δ = x d/dx = d/dy`, `θ^m = x^{−m} P_m(δ)` where
//! `P_1 = δ²` and `P_{m+1} = (δ − m)² P_m`. The derivatives in `y` come from
//! finite-difference stencils in `ln x` whose values are read off the
//! grid's interpolant.
//!
//! When `g` is analytic at the origin and starts with powers below `m`,
//! `P_m(δ)` cancels those terms and the `x^{−m}` factor amplifies rounding.
//! Nodes close to the origin then use the expansion
//! `θ^m = Σ_j C(m, j) m!/(m−j)! x^{m−j} D^{2m−j}` with `x`-derivatives taken
//! on the mesh itself.

use crate::error::{Error, Result};
use crate::function::{GridFunction, Mesh, RealFunction};

/// Step in `ln x` on tabulated functions, where interpolation error rather
/// than evaluation noise limits the accuracy.
const GRID_STEP: f64 = 0.04;

/// Step in `ln x` for `θ^m` of a directly evaluated function. Noise in the
/// values grows like `h^{-2m}` and truncation error shrinks like
/// `h^{EXTRA_POINTS}`; these balance the two for values accurate to about
/// `1e-13`. The first power keeps the grid step so that stencils stay narrow
/// next to the edges of compact supports.
fn step_for(m: u32) -> f64 {
    match m {
        1 => GRID_STEP,
        2 => 0.1,
        3 => 0.15,
        m => 0.05 * f64::from(m),
    }
}
/// Fraction of the interval, and stencil spacing relative to its length,
/// for the expansion used near the origin.
const NEAR_ORIGIN: f64 = 0.1;
const NEAR_ORIGIN_STEP: f64 = 0.02;
/// Stencil points beyond the derivative order.
const EXTRA_POINTS: usize = 9;

/// Weights `c[k][j]` of the `k`-th derivative at `x0` from values at `z[j]`.
pub(crate) fn fornberg_weights(x0: f64, z: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = z.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    let mut c1 = 1.0;
    let mut c4 = z[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = z[i] - x0;
        for j in 0..i {
            let c3 = z[i] - z[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Coefficients of `P_m(δ)` in powers of `δ`.
fn theta_polynomial(m: u32) -> Vec<f64> {
    let mut p = vec![0.0, 0.0, 1.0];
    for j in 1..m {
        let j = j as f64;
        // multiply by δ² − 2jδ + j²
        let mut next = vec![0.0; p.len() + 2];
        for (k, &c) in p.iter().enumerate() {
            next[k] += j * j * c;
            next[k + 1] -= 2.0 * j * c;
            next[k + 2] += c;
        }
        p = next;
    }
    p
}

/// Stencil weights for `P_m(δ)` with `above` of the points lying above the
/// evaluation point, offsets in units of `step`.
fn stencil(poly: &[f64], points: usize, above: usize, step: f64) -> (Vec<f64>, Vec<f64>) {
    let offsets: Vec<f64> = (0..points).map(|j| j as f64 - (points - 1 - above) as f64).collect();
    let order = poly.len() - 1;
    let c = fornberg_weights(0.0, &offsets, order);
    let weights = (0..points).map(|j| (0..=order).map(|k| poly[k] * c[k][j] / step.powi(k as i32)).sum()).collect();
    (offsets, weights)
}

/// `θ^times g` on the nodes of `g`, reading values off its interpolant.
///
/// Stencils are one-sided near `x = l`; accuracy degrades on the first and
/// last three nodes.
pub fn theta_apply(g: &GridFunction, times: u32) -> Result<GridFunction> {
    if g.len() < 2 * (2 * times as usize + EXTRA_POINTS) {
        return Err(Error::Resolution(format!("{} nodes are too few for θ^{times}", g.len())));
    }
    let l = g.length();
    let shape = Shape { growth: g.growth(), analytic: g.analytic_at_origin(), edges: vec![l], step: GRID_STEP };
    let values = theta_values(g.nodes(), l, times, shape, |x| Ok(g.value_at(x.min(l))))?;
    Ok(g.with_values(values)?.with_growth(g.growth() - times as f64))
}

/// `θ^times f` on the nodes of `mesh`, evaluating `f` directly at every
/// stencil point.
///
/// Stencils stay on one side of the breakpoints of `f` and of the ends of its
/// support where it does not vanish smoothly.
pub fn theta_of<F: RealFunction + ?Sized>(f: &F, mesh: &Mesh, times: u32) -> Result<GridFunction> {
    let p = f.growth_at_zero();
    let growth = if p.is_finite() { p } else { 0.0 };
    let (lo, hi) = f.support();
    let mut edges: Vec<f64> = f.breakpoints();
    if !f.smooth_at_support_ends() {
        edges.extend([lo, hi]);
    }
    edges.retain(|e| e.is_finite() && *e > 0.0);
    let shape = Shape { growth, analytic: f.analytic_at_zero(), edges, step: step_for(times) };
    let values = theta_values(&mesh.nodes(), mesh.length(), times, shape, |x| f.eval(x))?;
    Ok(GridFunction::new(values, mesh.length(), mesh.grading())?.with_growth(growth - times as f64))
}

struct Shape {
    growth: f64,
    analytic: bool,
    /// Points a stencil must not straddle.
    edges: Vec<f64>,
    step: f64,
}

/// Whole steps of size `step` that fit in `gap`, allowing for rounding.
fn steps_within(gap: f64, step: f64) -> usize {
    if gap.is_infinite() {
        usize::MAX
    } else {
        (gap / step * (1.0 + 1e-12)).floor().max(0.0) as usize
    }
}

fn theta_values<V: Fn(f64) -> Result<f64>>(nodes: &[f64], l: f64, times: u32, shape: Shape, value: V) -> Result<Vec<f64>> {
    if times == 0 {
        return Err(Error::domain("θ must be applied at least once"));
    }
    let points = 2 * times as usize + EXTRA_POINTS;
    let poly = theta_polynomial(times);
    let half = (points - 1) / 2;
    let stencils: Vec<_> = (0..points).map(|above| stencil(&poly, points, above, shape.step)).collect();
    let m = times as i32;
    let p = shape.growth;
    let cancels = shape.analytic && p >= 0.0 && p < times as f64 && p.fract() == 0.0;
    let near_origin = if cancels { NEAR_ORIGIN * l } else { 0.0 };
    let log_edges: Vec<f64> = shape.edges.iter().map(|e| e.ln()).collect();
    nodes
        .iter()
        .map(|&x| {
            if x < near_origin {
                return expanded(&value, x, times, points, NEAR_ORIGIN_STEP * l);
            }
            let y = x.ln();
            // nearest edges above and below, counting an edge at `x` as above
            let gap_above = log_edges.iter().filter(|&&e| e >= y).map(|&e| e - y).fold(f64::INFINITY, f64::min);
            let gap_below = log_edges.iter().filter(|&&e| e < y).map(|&e| y - e).fold(f64::INFINITY, f64::min);
            let mut step = shape.step;
            let span = gap_above + gap_below;
            if span < (points - 1) as f64 * step {
                step = span / (points + 1) as f64;
            }
            let up = steps_within(gap_above, step);
            let down = steps_within(gap_below, step);
            let above = if up >= half && down >= half {
                half
            } else if up < half {
                up
            } else {
                points - 1 - down
            };
            let own;
            let (offsets, weights) = if step == shape.step {
                &stencils[above]
            } else {
                own = stencil(&poly, points, above, step);
                &own
            };
            let mut sum = 0.0;
            for (&o, &w) in offsets.iter().zip(weights) {
                sum += w * value((y + o * step).exp())?;
            }
            Ok(sum * x.powi(-m))
        })
        .collect()
}

/// `θ^m g` at `x` from `x`-derivatives on an equispaced stencil of spacing
/// `h`, shifted to the right as far as needed to stay inside `(0, ∞)`.
fn expanded<V: Fn(f64) -> Result<f64>>(value: &V, x: f64, m: u32, points: usize, h: f64) -> Result<f64> {
    let below = ((x / h) * (1.0 - 1e-12)).floor().min(((points - 1) / 2) as f64);
    let z: Vec<f64> = (0..points).map(|j| x + (j as f64 - below) * h).collect();
    let c = fornberg_weights(x, &z, 2 * m as usize);
    let values = z.iter().map(|&t| value(t)).collect::<Result<Vec<_>>>()?;
    let derivative = |k: usize| -> f64 { c[k].iter().zip(&values).map(|(w, v)| w * v).sum() };
    let mut sum = 0.0;
    let mut coeff = 1.0; // C(m, j) m!/(m−j)!
    for j in 0..=m {
        sum += coeff * x.powi((m - j) as i32) * derivative((2 * m - j) as usize);
        coeff *= ((m - j) * (m - j)) as f64 / (j + 1) as f64;
    }
    Ok(sum)
}
