//! Composite rules for integrals of the form
//!
//! `∫_lo^hi (1−τ)^γ k(τ) φ(τ) dτ`, with `0 ≤ lo < hi ≤ 1`,
//!
//! where `k` is smooth on `(0, 1]` but may carry an integrable singularity at
//! `τ = 0`, and `φ` is smooth between a set of breakpoints.
//!
//! The `(1−τ)^γ` factor is absorbed by a Gauss–Jacobi panel at `τ = 1`; the
//! approach to `τ = 0` uses dyadic panels; every other panel is sized so that
//! its distance to `0` and `1` is at least its own width.

use crate::error::{Error, Result};
use crate::quad::adaptive::{integrate, Tolerance};
use crate::quad::gauss::{gauss_jacobi, gauss_legendre, Rule};

const END_NODES: usize = 24;
const DYADIC_ORDER: usize = 12;
const MAX_ZERO_PANELS: usize = 400;
/// Tolerances tried in turn; the looser one covers integrands whose own
/// evaluation noise exceeds the first, as near the edges of a smooth bump.
const ADAPTIVE_TOLS: [Tolerance; 2] = [Tolerance::new(1e-300, 1e-13), Tolerance::new(1e-300, 1e-10)];
const ADAPTIVE_SEGMENTS: usize = 2000;

/// How panels between breakpoints are integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentMode {
    /// Fixed Gauss–Legendre panels; at least this many nodes per panel.
    Fixed { min_order: usize },
    /// Adaptive Gauss–Kronrod on each segment.
    Adaptive,
}

/// Integration range and breakpoints of one τ-integral.
#[derive(Debug, Clone)]
pub struct TauSpan {
    pub lo: f64,
    pub hi: f64,
    /// Interior points where `φ` is not smooth; need not be sorted.
    pub breaks: Vec<f64>,
    /// Number of dyadic panels used when the range reaches `τ = 0`.
    pub zero_panels: usize,
    /// Upper bound on the width of the Gauss–Jacobi panel at `τ = 1`.
    pub end_width: f64,
    pub mode: SegmentMode,
}

impl TauSpan {
    /// The whole interval `[0, 1]` with no breakpoints.
    pub fn full(zero_panels: usize) -> Self {
        Self { lo: 0.0, hi: 1.0, breaks: Vec::new(), zero_panels, end_width: 0.5, mode: SegmentMode::Fixed { min_order: 0 } }
    }
}

/// A quadrature node: abscissa and weight, the weight including `(1−τ)^γ`.
pub type Node = (f64, f64);

enum Piece {
    Nodes(Vec<Node>),
    Adaptive(f64, f64),
}

/// Builder for the composite rules, holding the Gauss–Jacobi end rule for
/// one exponent `γ`.
#[derive(Debug, Clone)]
pub struct SingularRule {
    gamma: f64,
    end: Rule,
}

impl SingularRule {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma <= -1.0 {
            return Err(Error::Divergence(format!("endpoint exponent {gamma} is not integrable")));
        }
        Ok(Self { gamma, end: gauss_jacobi(END_NODES, gamma, 0.0)? })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// All nodes of a span; fails for spans that require adaptive segments.
    pub fn nodes(&self, span: &TauSpan) -> Result<Vec<Node>> {
        let mut out = Vec::new();
        for piece in self.pieces(span)? {
            match piece {
                Piece::Nodes(n) => out.extend(n),
                Piece::Adaptive(..) => return Err(Error::domain("adaptive span has no fixed node set")),
            }
        }
        Ok(out)
    }

    /// `∫ (1−τ)^γ g(τ) dτ` over the span.
    pub fn integrate<G: Fn(f64) -> Result<f64>>(&self, span: &TauSpan, g: G) -> Result<f64> {
        let mut sum = 0.0;
        for piece in self.pieces(span)? {
            match piece {
                Piece::Nodes(nodes) => {
                    for (t, w) in nodes {
                        sum += w * g(t)?;
                    }
                }
                Piece::Adaptive(a, b) => {
                    let gamma = self.gamma;
                    let integrand = |t: f64| Ok((1.0 - t).powf(gamma) * g(t)?);
                    let mut result = integrate(integrand, a, b, ADAPTIVE_TOLS[0], ADAPTIVE_SEGMENTS);
                    if matches!(result, Err(Error::NonConvergence { .. })) {
                        result = integrate(integrand, a, b, ADAPTIVE_TOLS[1], ADAPTIVE_SEGMENTS);
                    }
                    sum += result?.value;
                }
            }
        }
        Ok(sum)
    }

    fn pieces(&self, span: &TauSpan) -> Result<Vec<Piece>> {
        let (lo, hi) = (span.lo.max(0.0), span.hi.min(1.0));
        if !(lo < hi) {
            return Ok(Vec::new());
        }
        let mut points = vec![lo];
        let mut breaks: Vec<f64> = span.breaks.iter().copied().filter(|&b| b > lo && b < hi).collect();
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        points.extend(breaks);
        points.push(hi);

        let mut pieces = Vec::new();
        for seg in points.windows(2) {
            let (c, d) = (seg[0], seg[1]);
            if d - c <= 0.0 {
                continue;
            }
            let adaptive = span.mode == SegmentMode::Adaptive;
            let min_order = match span.mode {
                SegmentMode::Fixed { min_order } => min_order,
                SegmentMode::Adaptive => 0,
            };
            let mut regular_hi = d;
            if d >= 1.0 {
                let w = span.end_width.min(0.5 * (1.0 - c));
                pieces.push(Piece::Nodes(self.end_panel(w)));
                regular_hi = 1.0 - w;
            }
            if c <= 0.0 {
                let mut nodes = Vec::new();
                let k = span.zero_panels.clamp(1, MAX_ZERO_PANELS);
                let mut right = regular_hi;
                for _ in 0..k {
                    let left = 0.5 * right;
                    self.regular(left, right, min_order.max(DYADIC_ORDER), &mut nodes);
                    right = left;
                }
                pieces.push(Piece::Nodes(nodes));
            } else if adaptive {
                pieces.push(Piece::Adaptive(c, regular_hi));
            } else {
                let mut nodes = Vec::new();
                self.regular(c, regular_hi, min_order, &mut nodes);
                pieces.push(Piece::Nodes(nodes));
            }
        }
        Ok(pieces)
    }

    fn end_panel(&self, w: f64) -> Vec<Node> {
        // τ = 1 − (w/2)(1 − x), 1 − τ = (w/2)(1 − x)
        let scale = (0.5 * w).powf(self.gamma + 1.0);
        self.end.nodes.iter().zip(&self.end.weights).map(|(&x, &wt)| (1.0 - 0.5 * w * (1.0 - x), scale * wt)).collect()
    }

    /// Gauss–Legendre panels on `[c, d] ⊂ (0, 1)`, split geometrically toward
    /// `0` or `1` whenever the panel is wider than its distance to them.
    fn regular(&self, c: f64, d: f64, min_order: usize, out: &mut Vec<Node>) {
        let width = d - c;
        if width <= 0.0 {
            return;
        }
        let to_one = 1.0 - d;
        let to_zero = c;
        if to_one < width && to_one > 0.0 && d - to_one > c {
            self.regular(c, d - to_one, min_order, out);
            self.regular(d - to_one, d, min_order, out);
            return;
        }
        if to_zero < width && to_zero > 0.0 && c + to_zero < d {
            self.regular(c, c + to_zero, min_order, out);
            self.regular(c + to_zero, d, min_order, out);
            return;
        }
        let ratio = to_one.min(to_zero) / width;
        let order = if ratio < 4.0 {
            12
        } else if ratio < 16.0 {
            8
        } else {
            6
        }
        .max(min_order);
        let gamma = self.gamma;
        out.extend(gauss_legendre(order).mapped(c, d).map(|(t, w)| (t, w * (1.0 - t).powf(gamma))));
    }
}

/// Number of dyadic panels needed toward `τ = 0` when the integrand there
/// behaves like `τ^p` (up to logarithms), for roughly 1e-17 relative accuracy.
pub fn zero_panels_for_power(p: f64) -> Result<usize> {
    if p <= -1.0 {
        return Err(Error::Divergence(format!("integrand ~ τ^{p} is not integrable at 0")));
    }
    Ok(((64.0 / (p + 1.0)).ceil() as usize).clamp(8, MAX_ZERO_PANELS))
}
