//! Functions the operators act on: analytic catalog entries and tabulated
//! samples on a graded mesh.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::SegmentMode;
use crate::specfun::gamma_complex;

/// Behaviour of a function as `x → ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// Vanishes beyond the right end of its support.
    Compact,
    /// `O(e^{-rate·x})`.
    Exponential { rate: f64 },
    /// `O(x^{-exponent})`; a negative exponent means growth.
    Algebraic { exponent: f64 },
}

/// A real function on `(0, ∞)` together with the metadata the quadrature
/// layer needs to integrate it against singular kernels.
pub trait RealFunction {
    fn eval(&self, x: f64) -> Result<f64>;

    /// Closed interval outside of which the function vanishes.
    fn support(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }

    /// Exponent `p` with `f(x) = O(x^p)` as `x → 0`.
    fn growth_at_zero(&self) -> f64 {
        0.0
    }

    fn decay(&self) -> Decay;

    /// Whether the function extends analytically to a neighbourhood of 0.
    fn analytic_at_zero(&self) -> bool {
        false
    }

    /// Points inside the support where the function is not smooth.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    /// Whether the function joins zero smoothly at finite ends of its support.
    fn smooth_at_support_ends(&self) -> bool {
        false
    }

    /// Length scale of the finest feature, if any.
    fn feature_scale(&self) -> Option<f64> {
        None
    }

    fn segment_mode(&self) -> SegmentMode {
        SegmentMode::Fixed { min_order: 0 }
    }

    /// Closed-form Mellin transform at `s`, when one is known.
    fn mellin_closed_form(&self, _s: Complex64) -> Option<Result<Complex64>> {
        None
    }
}

impl<T: RealFunction + ?Sized> RealFunction for &T {
    fn eval(&self, x: f64) -> Result<f64> {
        (**self).eval(x)
    }
    fn support(&self) -> (f64, f64) {
        (**self).support()
    }
    fn growth_at_zero(&self) -> f64 {
        (**self).growth_at_zero()
    }
    fn decay(&self) -> Decay {
        (**self).decay()
    }
    fn analytic_at_zero(&self) -> bool {
        (**self).analytic_at_zero()
    }
    fn breakpoints(&self) -> Vec<f64> {
        (**self).breakpoints()
    }
    fn smooth_at_support_ends(&self) -> bool {
        (**self).smooth_at_support_ends()
    }
    fn feature_scale(&self) -> Option<f64> {
        (**self).feature_scale()
    }
    fn segment_mode(&self) -> SegmentMode {
        (**self).segment_mode()
    }
    fn mellin_closed_form(&self, s: Complex64) -> Option<Result<Complex64>> {
        (**self).mellin_closed_form(s)
    }
}

/// How a [`GridFunction`] is evaluated between its nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpolation {
    /// Piecewise linear in `x`.
    Linear,
    /// Local degree-9 Lagrange interpolation of `f/x^p` in the uniform
    /// mesh variable `s = (x/l)^{1/grading}`.
    Lagrange,
}

const LAGRANGE_POINTS: usize = 10;

/// A graded mesh `l (i/N)^grading`, `i = 1..N`, on `(0, l]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mesh {
    n: usize,
    l: f64,
    grading: f64,
}

impl Default for Mesh {
    fn default() -> Self {
        Self { n: GridFunction::DEFAULT_N, l: GridFunction::DEFAULT_LENGTH, grading: GridFunction::DEFAULT_GRADING }
    }
}

impl Mesh {
    pub fn new(n: usize, l: f64, grading: f64) -> Result<Self> {
        GridFunction::graded_nodes(n, l, grading)?;
        Ok(Self { n, l, grading })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn length(&self) -> f64 {
        self.l
    }

    pub fn grading(&self) -> f64 {
        self.grading
    }

    pub fn nodes(&self) -> Vec<f64> {
        (1..=self.n).map(|i| self.l * (i as f64 / self.n as f64).powf(self.grading)).collect()
    }

    /// Tabulate `f` on this mesh.
    pub fn sample<F: RealFunction + ?Sized>(&self, f: &F) -> Result<GridFunction> {
        GridFunction::sample(f, self.n, self.l, self.grading)
    }
}

/// Samples `f(x_i)` on the graded mesh `x_i = l (i/N)^grading`, `i = 1..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    nodes: Vec<f64>,
    values: Vec<f64>,
    l: f64,
    grading: f64,
    growth: f64,
    interpolation: Interpolation,
    origin: Option<f64>,
    analytic: bool,
}

impl GridFunction {
    pub const DEFAULT_N: usize = 1024;
    pub const DEFAULT_GRADING: f64 = 2.0;
    pub const DEFAULT_LENGTH: f64 = 1.0;

    /// Mesh `l (i/N)^grading` for `i = 1..N`.
    pub fn graded_nodes(n: usize, l: f64, grading: f64) -> Result<Vec<f64>> {
        if n < 2 {
            return Err(Error::domain(format!("grid needs at least 2 nodes, got {n}")));
        }
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::domain(format!("interval length must be positive, got {l}")));
        }
        if !(grading >= 1.0 && grading.is_finite()) {
            return Err(Error::domain(format!("grading must be at least 1, got {grading}")));
        }
        Ok((1..=n).map(|i| l * (i as f64 / n as f64).powf(grading)).collect())
    }

    /// Wrap values given on the graded mesh `(n, l, grading)`.
    pub fn new(values: Vec<f64>, l: f64, grading: f64) -> Result<Self> {
        let nodes = Self::graded_nodes(values.len(), l, grading)?;
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!("non-finite grid value at node {}", i + 1)));
        }
        Ok(Self { nodes, values, l, grading, growth: 0.0, interpolation: Interpolation::Lagrange, origin: None, analytic: false })
    }

    /// Tabulate `f` on the graded mesh.
    pub fn sample<F: RealFunction + ?Sized>(f: &F, n: usize, l: f64, grading: f64) -> Result<Self> {
        let nodes = Self::graded_nodes(n, l, grading)?;
        let values = nodes.iter().map(|&x| f.eval(x)).collect::<Result<Vec<_>>>()?;
        let growth = f.growth_at_zero();
        let mut g = Self::new(values, l, grading)?;
        g.growth = if growth.is_finite() { growth } else { 0.0 };
        g.analytic = f.analytic_at_zero();
        Ok(g)
    }

    /// Evaluate `f` at each node.
    pub fn from_fn<F: FnMut(f64) -> Result<f64>>(n: usize, l: f64, grading: f64, mut f: F) -> Result<Self> {
        let nodes = Self::graded_nodes(n, l, grading)?;
        let values = nodes.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
        Self::new(values, l, grading)
    }

    /// Same mesh, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.values.len() {
            return Err(Error::domain("value count does not match the mesh"));
        }
        let mut g = Self::new(values, self.l, self.grading)?;
        g.growth = self.growth;
        g.interpolation = self.interpolation;
        g.origin = self.origin;
        g.analytic = self.analytic;
        Ok(g)
    }

    pub fn with_growth(mut self, p: f64) -> Self {
        self.growth = p;
        self
    }

    pub fn with_interpolation(mut self, mode: Interpolation) -> Self {
        self.interpolation = mode;
        self
    }

    /// Mark the samples as coming from a function analytic at `x = 0`.
    pub fn with_analytic_origin(mut self, analytic: bool) -> Self {
        self.analytic = analytic;
        self
    }

    pub fn analytic_at_origin(&self) -> bool {
        self.analytic
    }

    /// Value at `x = 0`, used by linear interpolation on `(0, x_1]`.
    pub fn with_origin(mut self, value: f64) -> Self {
        self.origin = Some(value);
        self
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn mesh(&self) -> Mesh {
        Mesh { n: self.nodes.len(), l: self.l, grading: self.grading }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn length(&self) -> f64 {
        self.l
    }

    pub fn grading(&self) -> f64 {
        self.grading
    }

    pub fn growth(&self) -> f64 {
        self.growth
    }

    pub fn interpolation(&self) -> Interpolation {
        self.interpolation
    }

    pub fn origin(&self) -> Option<f64> {
        self.origin
    }

    /// Maximum absolute value over the nodes in `range`.
    pub fn sup_norm_over(&self, range: std::ops::Range<usize>) -> f64 {
        self.values[range].iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn sup_norm(&self) -> f64 {
        self.sup_norm_over(0..self.len())
    }

    /// Mesh variable `s = (x/l)^{1/grading}`; nodes sit at `s = i/N`.
    fn mesh_variable(&self, x: f64) -> f64 {
        (x / self.l).powf(1.0 / self.grading)
    }

    /// Interpolated value; zero beyond `l`.
    pub fn value_at(&self, x: f64) -> f64 {
        let n = self.len();
        if x > self.l * (1.0 + 1e-14) || x < 0.0 {
            return 0.0;
        }
        match self.interpolation {
            Interpolation::Linear => {
                if x <= self.nodes[0] {
                    return match self.origin {
                        Some(v0) => v0 + (self.values[0] - v0) * x / self.nodes[0],
                        None => self.values[0] * (x / self.nodes[0]).powf(self.growth),
                    };
                }
                let j = self.nodes.partition_point(|&t| t < x).min(n - 1);
                let (x0, x1) = (self.nodes[j - 1], self.nodes[j]);
                let t = (x - x0) / (x1 - x0);
                self.values[j - 1] * (1.0 - t) + self.values[j] * t
            }
            Interpolation::Lagrange => {
                let mut coeffs = [0.0; LAGRANGE_POINTS];
                let start = self.lagrange_stencil(x, &mut coeffs);
                (0..coeffs.len().min(n)).map(|k| coeffs[k] * self.values[start + k]).sum()
            }
        }
    }

    /// Stencil start index and the weights `c_k` with
    /// `value_at(x) = Σ c_k values[start + k]`.
    fn lagrange_stencil(&self, x: f64, coeffs: &mut [f64; LAGRANGE_POINTS]) -> usize {
        let n = self.len();
        let p = LAGRANGE_POINTS.min(n);
        let nf = n as f64;
        let s = self.mesh_variable(x) * nf; // in units of the node spacing, node i at s = i
        let centre = s.floor() as isize - (p as isize / 2 - 1);
        let start = centre.clamp(1, (n - p + 1) as isize) as usize; // 1-based
        // barycentric weights for equispaced points: (-1)^k C(p-1, k)
        let mut exact = None;
        let mut denom = 0.0;
        let mut binom = 1.0;
        for k in 0..p {
            if k > 0 {
                binom *= (p - k) as f64 / k as f64;
            }
            let node = (start + k) as f64;
            let diff = s - node;
            if diff == 0.0 || x == self.nodes[start + k - 1] {
                exact = Some(k);
            }
            let w = if k % 2 == 0 { binom } else { -binom };
            coeffs[k] = if diff != 0.0 { w / diff } else { 0.0 };
            denom += coeffs[k];
        }
        if let Some(k) = exact {
            coeffs.iter_mut().for_each(|c| *c = 0.0);
            coeffs[k] = 1.0;
        } else {
            coeffs[..p].iter_mut().for_each(|c| *c /= denom);
        }
        if self.growth != 0.0 {
            // interpolate f/x^p, then multiply back by x^p
            for k in 0..p {
                coeffs[k] *= (x / self.nodes[start + k - 1]).powf(self.growth);
            }
        }
        start - 1
    }
}

impl RealFunction for GridFunction {
    fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.value_at(x))
    }

    fn support(&self) -> (f64, f64) {
        (0.0, self.l)
    }

    fn growth_at_zero(&self) -> f64 {
        self.growth
    }

    fn decay(&self) -> Decay {
        Decay::Compact
    }

    fn analytic_at_zero(&self) -> bool {
        self.analytic
    }

    fn breakpoints(&self) -> Vec<f64> {
        match self.interpolation {
            Interpolation::Linear => self.nodes.clone(),
            Interpolation::Lagrange => Vec::new(),
        }
    }
}

/// `x^power · f(x)`.
#[derive(Debug, Clone)]
pub struct PowerWeighted<F> {
    pub inner: F,
    pub power: f64,
}

impl<F: RealFunction> RealFunction for PowerWeighted<F> {
    fn eval(&self, x: f64) -> Result<f64> {
        let v = self.inner.eval(x)?;
        Ok(if v == 0.0 { 0.0 } else { v * x.powf(self.power) })
    }

    fn support(&self) -> (f64, f64) {
        self.inner.support()
    }

    fn growth_at_zero(&self) -> f64 {
        self.inner.growth_at_zero() + self.power
    }

    fn decay(&self) -> Decay {
        match self.inner.decay() {
            Decay::Algebraic { exponent } => Decay::Algebraic { exponent: exponent - self.power },
            d => d,
        }
    }

    fn analytic_at_zero(&self) -> bool {
        self.inner.analytic_at_zero() && self.power >= 0.0 && self.power.fract() == 0.0
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.inner.breakpoints()
    }

    fn smooth_at_support_ends(&self) -> bool {
        self.inner.smooth_at_support_ends()
    }

    fn feature_scale(&self) -> Option<f64> {
        self.inner.feature_scale()
    }

    fn segment_mode(&self) -> SegmentMode {
        self.inner.segment_mode()
    }
}

/// Test functions with analytic values and known decay behaviour.
#[derive(Debug, Clone, PartialEq)]
pub enum CatalogFunction {
    /// `x^mu`.
    Monomial { mu: f64 },
    /// `e^{-rate·x}`.
    ExpDecay { rate: f64 },
    /// `exp(order·(1 − 1/(4t(1−t))))` with `t = (x−a)/(b−a)`, zero outside `(a, b)`.
    SmoothBump { a: f64, b: f64, order: u32 },
    /// `Σ c_k x^k`.
    Polynomial(Vec<f64>),
    /// Interpolated samples, zero beyond the mesh.
    Tabulated(GridFunction),
}

impl CatalogFunction {
    pub fn monomial(mu: f64) -> Self {
        Self::Monomial { mu }
    }

    pub fn exp_decay(rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(Error::domain(format!("decay rate must be positive, got {rate}")));
        }
        Ok(Self::ExpDecay { rate })
    }

    pub fn bump(a: f64, b: f64, order: u32) -> Result<Self> {
        if !(0.0 <= a && a < b && b.is_finite()) {
            return Err(Error::domain(format!("bump support needs 0 ≤ a < b, got [{a}, {b}]")));
        }
        if order == 0 {
            return Err(Error::domain("bump order must be at least 1"));
        }
        Ok(Self::SmoothBump { a, b, order })
    }

    pub fn constant(c: f64) -> Self {
        Self::Polynomial(vec![c])
    }
}

impl RealFunction for CatalogFunction {
    fn eval(&self, x: f64) -> Result<f64> {
        match self {
            Self::Monomial { mu } => {
                if x < 0.0 {
                    return Err(Error::domain(format!("monomial evaluated at negative x = {x}")));
                }
                if x == 0.0 && *mu < 0.0 {
                    return Err(Error::domain("monomial with negative exponent at x = 0"));
                }
                Ok(if *mu == 0.0 { 1.0 } else { x.powf(*mu) })
            }
            Self::ExpDecay { rate } => Ok((-rate * x).exp()),
            Self::SmoothBump { a, b, order } => {
                if x <= *a || x >= *b {
                    return Ok(0.0);
                }
                let t = (x - a) / (b - a);
                Ok((*order as f64 * (1.0 - 1.0 / (4.0 * t * (1.0 - t)))).exp())
            }
            Self::Polynomial(c) => Ok(c.iter().rev().fold(0.0, |acc, &ck| acc * x + ck)),
            Self::Tabulated(g) => Ok(g.value_at(x)),
        }
    }

    fn support(&self) -> (f64, f64) {
        match self {
            Self::SmoothBump { a, b, .. } => (*a, *b),
            Self::Tabulated(g) => (0.0, g.length()),
            Self::Polynomial(c) if c.iter().all(|&v| v == 0.0) => (0.0, 0.0),
            _ => (0.0, f64::INFINITY),
        }
    }

    fn growth_at_zero(&self) -> f64 {
        match self {
            Self::Monomial { mu } => *mu,
            Self::ExpDecay { .. } => 0.0,
            Self::SmoothBump { .. } => f64::INFINITY,
            Self::Polynomial(c) => c.iter().position(|&v| v != 0.0).map_or(f64::INFINITY, |k| k as f64),
            Self::Tabulated(g) => g.growth(),
        }
    }

    fn decay(&self) -> Decay {
        match self {
            Self::Monomial { mu } => Decay::Algebraic { exponent: -mu },
            Self::ExpDecay { rate } => Decay::Exponential { rate: *rate },
            Self::SmoothBump { .. } | Self::Tabulated(_) => Decay::Compact,
            Self::Polynomial(c) => match c.iter().rposition(|&v| v != 0.0) {
                Some(k) => Decay::Algebraic { exponent: -(k as f64) },
                None => Decay::Compact,
            },
        }
    }

    fn analytic_at_zero(&self) -> bool {
        match self {
            Self::Monomial { mu } => *mu >= 0.0 && mu.fract() == 0.0,
            Self::ExpDecay { .. } | Self::Polynomial(_) => true,
            Self::SmoothBump { a, .. } => *a > 0.0,
            Self::Tabulated(g) => g.analytic_at_origin(),
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        match self {
            Self::Tabulated(g) if g.interpolation() == Interpolation::Linear => g.nodes().to_vec(),
            _ => Vec::new(),
        }
    }

    fn smooth_at_support_ends(&self) -> bool {
        !matches!(self, Self::Tabulated(_))
    }

    fn feature_scale(&self) -> Option<f64> {
        match self {
            Self::SmoothBump { a, b, .. } => Some(0.125 * (b - a)),
            _ => None,
        }
    }

    fn segment_mode(&self) -> SegmentMode {
        match self {
            Self::SmoothBump { .. } => SegmentMode::Adaptive,
            _ => SegmentMode::Fixed { min_order: 0 },
        }
    }

    fn mellin_closed_form(&self, s: Complex64) -> Option<Result<Complex64>> {
        match self {
            // ∫₀^∞ e^{-r x} x^{s-1} dx = Γ(s) r^{-s}
            Self::ExpDecay { rate } => Some(if s.re > 0.0 {
                gamma_complex(s).map(|g| g * (-s * rate.ln()).exp())
            } else {
                Err(Error::Strip(format!("Re s = {} outside (0, ∞) for exp:{rate}", s.re)))
            }),
            _ => None,
        }
    }
}

impl fmt::Display for CatalogFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Monomial { mu } => write!(f, "monomial:{mu}"),
            Self::ExpDecay { rate } => write!(f, "exp:{rate}"),
            Self::SmoothBump { a, b, order } => write!(f, "bump:{a},{b},{order}"),
            Self::Polynomial(c) if c.len() == 1 => write!(f, "const:{}", c[0]),
            Self::Polynomial(c) => {
                let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                write!(f, "poly:{}", parts.join(","))
            }
            Self::Tabulated(g) => write!(f, "tabulated:{}@{}", g.len(), g.length()),
        }
    }
}

fn parse_numbers(body: &str, what: &str) -> Result<Vec<f64>> {
    body.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::domain(format!("bad number '{t}' in {what} descriptor"))))
        .collect()
}

impl FromStr for CatalogFunction {
    type Err = Error;

    /// Parses `monomial:<mu>`, `exp:<rate>`, `bump:<a>,<b>,<order>`,
    /// `poly:<c0>,<c1>,…` and `const:<c>`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, body) = s.split_once(':').ok_or_else(|| Error::domain(format!("function descriptor '{s}' lacks ':'")))?;
        let nums = parse_numbers(body, kind)?;
        let arity = |n: usize| -> Result<()> {
            if nums.len() == n {
                Ok(())
            } else {
                Err(Error::domain(format!("{kind} descriptor takes {n} value(s), got {}", nums.len())))
            }
        };
        match kind.trim() {
            "monomial" => {
                arity(1)?;
                Ok(Self::monomial(nums[0]))
            }
            "exp" => {
                arity(1)?;
                Self::exp_decay(nums[0])
            }
            "bump" => {
                arity(3)?;
                let order = nums[2];
                if order < 1.0 || order != order.floor() {
                    return Err(Error::domain(format!("bump order must be a positive integer, got {order}")));
                }
                Self::bump(nums[0], nums[1], order as u32)
            }
            "poly" => {
                if nums.iter().any(|v| !v.is_finite()) {
                    return Err(Error::domain("non-finite polynomial coefficient"));
                }
                Ok(Self::Polynomial(nums))
            }
            "const" => {
                arity(1)?;
                Ok(Self::constant(nums[0]))
            }
            other => Err(Error::domain(format!("unknown function kind '{other}'"))),
        }
    }
}
