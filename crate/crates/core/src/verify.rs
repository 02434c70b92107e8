//! Verification suites: numerical identities between the operators, their
//! Mellin multipliers and the Volterra solvers, each with a tolerance and a
//! time budget.

use std::fmt;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::function::{CatalogFunction, GridFunction, Mesh, RealFunction};
use crate::kernels::{c_plus, mellin_k_minus, mellin_k_plus, KernelEval};
use crate::mellin::{apply_multiplier, MultiplierDescriptor, MultiplierKind};
use crate::operators::{
    derivative_ibp_check, integration_by_parts_check, laguerre_d_left, laguerre_d_right, laguerre_l_left, rl_composition_check,
    theta_of, weighted_norm, FractionalIntegral, Side,
};
use crate::specfun::{gamma_complex, gamma_ratio_sq, ln_gamma_abs, stirling_first_kind, stirling_s, cauchy_ck};
use crate::volterra::{
    direct_solve, legendre_kernel, neumann_solve, remainder_majorant, residual, resolvent_solve, NeumannSolveConfig, Resolvent,
};

/// One compared quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub error: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(label: impl Into<String>, error: f64, tolerance: f64) -> Self {
        Self { label: label.into(), error, tolerance }
    }

    /// An inequality `lhs ≤ rhs`, reported as the excess `lhs − rhs`.
    pub fn at_most(label: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self::new(label, lhs - rhs, 0.0)
    }

    pub fn passed(&self) -> bool {
        self.error <= self.tolerance
    }
}

/// Outcome of one suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub id: u32,
    pub name: &'static str,
    pub checks: Vec<Check>,
    /// Error that aborted the suite, if any.
    pub failure: Option<String>,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl SuiteReport {
    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none() && !self.checks.is_empty() && self.checks.iter().all(Check::passed) && self.within_budget()
    }

    /// The check with the largest error relative to its tolerance.
    pub fn worst(&self) -> Option<&Check> {
        let score = |c: &Check| if c.tolerance > 0.0 { c.error / c.tolerance } else { c.error };
        self.checks.iter().max_by(|a, b| score(a).total_cmp(&score(b)))
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {:>2} {:<28} {:>7.2}s / {:>4}s", self.id, self.name, self.elapsed.as_secs_f64(), self.budget.as_secs())?;
        if let Some(e) = &self.failure {
            return write!(f, "  error: {e}");
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        write!(f, "  {} checks", self.checks.len())?;
        if failed > 0 {
            write!(f, ", {failed} failed")?;
        }
        if let Some(w) = self.worst() {
            write!(f, ", worst {} = {:.2e} (tol {:.0e})", w.label, w.error, w.tolerance)?;
        }
        if !self.within_budget() {
            write!(f, ", over time budget")?;
        }
        Ok(())
    }
}

/// A named group of checks with a time budget.
#[derive(Clone, Copy)]
pub struct Suite {
    pub id: u32,
    pub name: &'static str,
    pub budget: Duration,
    body: fn() -> Result<Vec<Check>>,
}

impl fmt::Debug for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Suite").field("id", &self.id).field("name", &self.name).field("budget", &self.budget).finish()
    }
}

impl Suite {
    pub fn run(&self) -> SuiteReport {
        let start = Instant::now();
        let (checks, failure) = match (self.body)() {
            Ok(c) => (c, None),
            Err(e) => (Vec::new(), Some(e.to_string())),
        };
        SuiteReport { id: self.id, name: self.name, checks, failure, elapsed: start.elapsed(), budget: self.budget }
    }
}

const fn suite(id: u32, name: &'static str, secs: u64, body: fn() -> Result<Vec<Check>>) -> Suite {
    Suite { id, name, budget: Duration::from_secs(secs), body }
}

/// All suites in order.
pub fn suites() -> Vec<Suite> {
    vec![
        suite(1, "monomial eigenrelation", 10, monomial_eigenrelation),
        suite(2, "integer-order reduction", 30, integer_reduction),
        suite(3, "inversion", 60, inversion),
        suite(4, "semigroup", 30, semigroup),
        suite(5, "kernel Mellin transforms", 20, kernel_mellin),
        suite(6, "quadrature vs contour", 20, route_agreement),
        suite(7, "integration by parts", 60, integration_by_parts),
        suite(8, "Volterra solvers", 120, volterra_solvers),
        suite(9, "resolvent forms", 30, resolvent_forms),
        suite(10, "boundedness", 20, boundedness),
        suite(11, "Stirling functions", 10, stirling),
    ]
}

/// Suite by id.
pub fn suite_by_id(id: u32) -> Option<Suite> {
    suites().into_iter().find(|s| s.id == id)
}

pub fn run_all() -> Vec<SuiteReport> {
    suites().iter().map(Suite::run).collect()
}

fn rel(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

fn crel(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm()
}

/// `(Γ(1+μ)/Γ(1+μ+α))² x^{μ+α}`, the image of `x^μ` under `L₀₊^α`.
pub fn monomial_image(mu: f64, alpha: f64, x: f64) -> Result<f64> {
    let ln = 2.0 * (ln_gamma_abs(1.0 + mu)? - ln_gamma_abs(1.0 + mu + alpha)?) + (mu + alpha) * x.ln();
    Ok(ln.exp())
}

fn monomial_eigenrelation() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for alpha in [0.55, 0.8, 1.0, 1.5, 2.3] {
        let op = FractionalIntegral::laguerre(Side::Left, alpha)?;
        for mu in [alpha - 0.5, 1.0, 2.5] {
            let f = CatalogFunction::monomial(mu);
            let mut err: f64 = 0.0;
            for x in [0.5, 1.0, 3.0] {
                err = err.max(rel(op.eval(&f, x)?, monomial_image(mu, alpha, x)?));
            }
            checks.push(Check::new(format!("α={alpha} μ={mu:.2}"), err, 1e-7));
        }
    }
    Ok(checks)
}

fn integer_reduction() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in 1..=3u32 {
        for mu in [0.0, 1.0, 2.0] {
            let f = CatalogFunction::monomial(mu);
            let (mut between, mut exact): (f64, f64) = (0.0, 0.0);
            for x in [0.5, 1.0, 2.0] {
                let (nested, direct) = rl_composition_check(&f, n, x)?;
                between = between.max(rel(nested, direct));
                exact = exact.max(rel(direct, monomial_image(mu, n as f64, x)?));
            }
            checks.push(Check::new(format!("n={n} μ={mu} nested vs kernel"), between, 1e-7));
            checks.push(Check::new(format!("n={n} μ={mu} kernel vs closed form"), exact, 1e-7));
        }
    }
    Ok(checks)
}

/// Relative sup-norm error of `got` against `want` on the nodes in
/// `[l/32, x_{N−4}]`.
pub fn interior_error<F: RealFunction + ?Sized>(got: &GridFunction, want: &F) -> Result<f64> {
    let lo = got.length() / 32.0;
    let n = got.len();
    let (mut err, mut scale): (f64, f64) = (0.0, 0.0);
    for i in 0..n.saturating_sub(4) {
        let x = got.nodes()[i];
        if x < lo {
            continue;
        }
        let w = want.eval(x)?;
        err = err.max((got.values()[i] - w).abs());
        scale = scale.max(w.abs());
    }
    Ok(if scale > 0.0 { err / scale } else { err })
}

const INVERSION_MESH: (usize, f64, f64) = (1024, 1.0, 2.0);
/// Left images are tabulated past the evaluation interval so that stencils
/// near `x = l` stay inside the samples.
const LEFT_TABLE: (usize, f64, f64) = (1024, 1.5, 2.0);
/// Right images are tabulated far enough out that the truncated tail is
/// negligible for exponentially decaying functions.
const RIGHT_TABLE: (usize, f64, f64) = (4096, 40.0, 2.0);

fn mesh(shape: (usize, f64, f64)) -> Result<Mesh> {
    Mesh::new(shape.0, shape.1, shape.2)
}

fn tabulated(g: GridFunction) -> CatalogFunction {
    CatalogFunction::Tabulated(g)
}

/// `𝒟^α L^α f` on the inversion mesh.
pub fn derivative_of_integral(side: Side, f: &CatalogFunction, alpha: f64) -> Result<GridFunction> {
    let op = FractionalIntegral::laguerre(side, alpha)?;
    let out = mesh(INVERSION_MESH)?;
    match side {
        Side::Left => laguerre_d_left(&tabulated(op.tabulate(f, &mesh(LEFT_TABLE)?)?), alpha, &out),
        Side::Right => laguerre_d_right(&tabulated(op.tabulate(f, &mesh(RIGHT_TABLE)?)?), alpha, &out),
    }
}

/// `L^α 𝒟^α f` on the inversion mesh.
pub fn integral_of_derivative(side: Side, f: &CatalogFunction, alpha: f64) -> Result<GridFunction> {
    let op = FractionalIntegral::laguerre(side, alpha)?;
    let out = mesh(INVERSION_MESH)?;
    let derivative = match side {
        Side::Left => laguerre_d_left(f, alpha, &out)?,
        Side::Right => laguerre_d_right(f, alpha, &mesh(RIGHT_TABLE)?)?,
    };
    op.tabulate(&tabulated(derivative), &out)
}

fn inversion() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let out = mesh(INVERSION_MESH)?;
    let linear = CatalogFunction::monomial(1.0);
    let exp = CatalogFunction::exp_decay(1.0)?;
    for n in 1..=2u32 {
        let op = FractionalIntegral::laguerre(Side::Left, n as f64)?;
        for (name, f) in [("x", &linear), ("e^-x", &exp)] {
            let got = theta_of(&op.image(f), &out, n)?;
            checks.push(Check::new(format!("θ^{n} L^{n} {name}"), interior_error(&got, f)?, 1e-4));
        }
    }
    for alpha in [0.6, 1.3] {
        let got = derivative_of_integral(Side::Left, &linear, alpha)?;
        checks.push(Check::new(format!("𝒟₀₊ L₀₊ x, α={alpha}"), interior_error(&got, &linear)?, 1e-4));
        let got = integral_of_derivative(Side::Left, &linear, alpha)?;
        checks.push(Check::new(format!("L₀₊ 𝒟₀₊ x, α={alpha}"), interior_error(&got, &linear)?, 1e-4));
        let got = derivative_of_integral(Side::Right, &exp, alpha)?;
        checks.push(Check::new(format!("𝒟₋ L₋ e^-x, α={alpha}"), interior_error(&got, &exp)?, 1e-4));
        let got = integral_of_derivative(Side::Right, &exp, alpha)?;
        checks.push(Check::new(format!("L₋ 𝒟₋ e^-x, α={alpha}"), interior_error(&got, &exp)?, 1e-4));
    }
    Ok(checks)
}

fn semigroup() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let f = CatalogFunction::monomial(1.0);
    let orders = [0.6, 0.9];
    for alpha in orders {
        for beta in orders {
            let outer = FractionalIntegral::laguerre(Side::Left, alpha)?;
            let inner = FractionalIntegral::laguerre(Side::Left, beta)?;
            let combined = FractionalIntegral::laguerre(Side::Left, alpha + beta)?;
            let mut err: f64 = 0.0;
            for x in [0.5, 1.0, 2.0] {
                let nested = outer.eval(&inner.image(&f), x)?;
                err = err.max(rel(nested, combined.eval(&f, x)?));
                err = err.max(rel(nested, monomial_image(1.0, alpha + beta, x)?));
            }
            checks.push(Check::new(format!("L^{alpha} L^{beta} x vs L^{}", alpha + beta), err, 1e-6));

            let ma = MultiplierDescriptor::new(MultiplierKind::LagIntLeft, alpha)?;
            let mb = MultiplierDescriptor::new(MultiplierKind::LagIntLeft, beta)?;
            let mab = MultiplierDescriptor::new(MultiplierKind::LagIntLeft, alpha + beta)?;
            let nu = 0.5 - alpha - beta;
            let mut err: f64 = 0.0;
            for k in -200..=200 {
                let s = Complex64::new(nu, 0.25 * k as f64);
                err = err.max(crel(ma.eval(s)? * mb.eval(s + alpha)?, mab.eval(s)?));
            }
            checks.push(Check::new(format!("multiplier product α={alpha} β={beta}"), err, 1e-12));
        }
    }
    for alpha in [0.6, 1.3] {
        let int = MultiplierDescriptor::new(MultiplierKind::LagIntLeft, alpha)?;
        let der = MultiplierDescriptor::new(MultiplierKind::LagDerLeft, alpha)?;
        let mut err: f64 = 0.0;
        for k in -200..=200 {
            let s = Complex64::new(0.2, 0.25 * k as f64);
            err = err.max((der.eval(s)? * int.eval(s - alpha)? - 1.0).norm());
        }
        checks.push(Check::new(format!("derivative·integral multiplier α={alpha}"), err, 1e-12));
    }
    Ok(checks)
}

fn kernel_mellin() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let one = Complex64::new(1.0, 0.0);
    for alpha in [0.6, 1.25] {
        let ke = KernelEval::from_alpha(alpha)?;
        for t in [0.0, 1.0, 5.0] {
            let s = Complex64::new(1.0 - alpha - 0.2, t);
            let want = gamma_ratio_sq(one - alpha - s, one - s)?;
            checks.push(Check::new(format!("k₊ α={alpha} s={s}"), crel(mellin_k_plus(&ke, s)?, want), 1e-6));
            let s = Complex64::new(0.3, t);
            let want = gamma_ratio_sq(s, s + alpha)?;
            checks.push(Check::new(format!("k₋ α={alpha} s={s}"), crel(mellin_k_minus(&ke, s)?, want), 1e-6));
        }
    }
    Ok(checks)
}

fn route_agreement() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let f = CatalogFunction::exp_decay(1.0)?;
    for alpha in [0.6, 1.0] {
        let md = MultiplierDescriptor::new(MultiplierKind::LagIntLeft, alpha)?;
        for x in [0.5, 1.0] {
            let contour = apply_multiplier(&f, &md, None, x)?;
            checks.push(Check::new(format!("α={alpha} x={x}"), rel(contour, laguerre_l_left(&f, alpha, x)?), 1e-6));
        }
    }
    Ok(checks)
}

fn integration_by_parts() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let near = CatalogFunction::bump(1.0, 2.0, 3)?;
    let (a, b) = integration_by_parts_check(&near, &near, 0.8)?;
    checks.push(Check::new("same bump, α=0.8", rel(a, b), 1e-7));
    let far = CatalogFunction::bump(3.0, 4.0, 1)?;
    let low = CatalogFunction::bump(1.0, 2.0, 1)?;
    let (a, b) = integration_by_parts_check(&far, &low, 1.0)?;
    checks.push(Check::new("disjoint bumps, α=1", rel(a, b), 1e-7));
    let (a, b) = integration_by_parts_check(&far, &near, 0.6)?;
    checks.push(Check::new("disjoint bumps, α=0.6", rel(a, b), 1e-7));

    let mesh = Mesh::new(2048, 4.0, 1.0)?;
    let f = CatalogFunction::bump(1.5, 3.0, 1)?;
    let g = CatalogFunction::bump(1.0, 2.0, 1)?;
    let (a, b) = derivative_ibp_check(&f, &g, 0.6, &mesh)?;
    checks.push(Check::new("derivatives, overlapping bumps, α=0.6", rel(a, b), 1e-3));
    let f = CatalogFunction::bump(2.5, 3.5, 1)?;
    let (a, b) = derivative_ibp_check(&f, &g, 0.6, &mesh)?;
    checks.push(Check::new("derivatives, disjoint bumps, α=0.6", rel(a, b), 1e-3));
    Ok(checks)
}

/// `I₀(2√z) = Σ zⁿ/(n!)²`.
pub fn bessel_i0_sqrt(z: f64) -> f64 {
    let (mut term, mut sum) = (1.0, 1.0);
    let mut n = 1.0;
    while term > 1e-17 * sum {
        term *= z / (n * n);
        sum += term;
        n += 1.0;
    }
    sum
}

fn max_difference(a: &GridFunction, b: &GridFunction) -> f64 {
    a.values().iter().zip(b.values()).fold(0.0, |m, (p, q)| m.max((p - q).abs()))
}

const ROUTE_GRID: usize = 512;

fn volterra_solvers() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let one = CatalogFunction::constant(1.0);
    for lambda in [0.5, 1.0] {
        let cfg = NeumannSolveConfig::with_default_nu(1.0, lambda, 1.0)?;
        let mesh = Mesh::new(1024, 1.0, 2.0)?;
        let bessel = |x: f64| bessel_i0_sqrt(lambda * x);
        for (name, tol, f) in [
            ("Neumann", 1e-6, neumann_solve(&one, &cfg, &mesh)?),
            ("resolvent", 1e-6, resolvent_solve(&one, &cfg, &mesh)?),
            ("direct", 1e-4, direct_solve(&one, &cfg, &mesh)?),
        ] {
            let err = f.nodes().iter().zip(f.values()).fold(0.0f64, |m, (&x, &v)| m.max(rel(v, bessel(x))));
            checks.push(Check::new(format!("{name} vs I₀, λ={lambda}"), err, tol));
            checks.push(Check::new(format!("{name} residual, λ={lambda}"), residual(&f, &one, &cfg)?, 10.0 * cfg.tol()));
        }
    }
    for (alpha, lambda, l) in [(1.0, 0.5, 1.0), (0.75, 0.2, 1.0), (0.6, 0.1, 0.5)] {
        let cfg = NeumannSolveConfig::with_default_nu(alpha, lambda, l)?;
        let mesh = Mesh::new(ROUTE_GRID, l, 2.0)?;
        for g in [CatalogFunction::constant(1.0), CatalogFunction::monomial(1.0), CatalogFunction::bump(0.2, 0.8, 1)?] {
            let tag = format!("α={alpha} λ={lambda} l={l} g={g}");
            let n = neumann_solve(&g, &cfg, &mesh)?;
            let r = resolvent_solve(&g, &cfg, &mesh)?;
            let d = direct_solve(&g, &cfg, &mesh)?;
            checks.push(Check::new(format!("Neumann vs resolvent, {tag}"), max_difference(&n, &r), 1e-4));
            checks.push(Check::new(format!("Neumann vs direct, {tag}"), max_difference(&n, &d), 1e-4));
            checks.push(Check::new(format!("resolvent vs direct, {tag}"), max_difference(&r, &d), 1e-4));
            for (name, f) in [("Neumann", &n), ("resolvent", &r), ("direct", &d)] {
                checks.push(Check::new(format!("{name} residual, {tag}"), residual(f, &g, &cfg)?, 10.0 * cfg.tol()));
            }
        }
    }
    Ok(checks)
}

/// Kernel of `L₀₊^β` at `(x, u)` through the hypergeometric function.
fn hypergeometric_kernel(x: f64, u: f64, order: f64) -> Result<f64> {
    let ke = KernelEval::from_alpha(order)?;
    Ok(x.powf(-order) * (x - u).powf(2.0 * order - 1.0) * ke.tau_factor(u / x)?)
}

fn resolvent_forms() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for alpha in [0.6, 0.75, 1.1] {
        let cfg = NeumannSolveConfig::with_default_nu(alpha, 0.2, 1.0)?;
        let resolvent = Resolvent::new(&cfg)?;
        let (mut forms, mut excess): (f64, f64) = (0.0, f64::NEG_INFINITY);
        for x in [0.2, 0.4, 0.6, 0.8, 1.0] {
            for t in [0.05, 0.25, 0.5, 0.75, 0.95] {
                let u = x * t;
                let single = resolvent.single(x, u)?;
                forms = forms.max(rel(resolvent.double(x, u)?, single));
                for after in [1, 2, 4] {
                    let tail = (single - resolvent.partial_sum(x, u, after)?).abs();
                    // allow for rounding in the difference of two sums
                    let slack = 1e-14 * single.abs();
                    excess = excess.max(tail - remainder_majorant(x, u, &cfg, after)? - slack);
                }
            }
        }
        checks.push(Check::new(format!("single vs double, α={alpha}"), forms, 1e-8));
        checks.push(Check::at_most(format!("tail within majorant, α={alpha}"), excess, 0.0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let x = rng.gen_range(0.1..5.0);
        let u = x * rng.gen_range(0.02..0.98);
        let order = rng.gen_range(0.55..2.5);
        let err = rel(legendre_kernel(x, u, order)?, hypergeometric_kernel(x, u, order)?);
        checks.push(Check::new(format!("Legendre integral x={x:.3} u={u:.3} β={order:.3}"), err, 1e-7));
    }
    Ok(checks)
}

/// A random function with `f(x) = O(x^{3/4})` at the origin.
fn random_catalog(rng: &mut ChaCha8Rng) -> Result<CatalogFunction> {
    Ok(match rng.gen_range(0..3) {
        0 => CatalogFunction::monomial(rng.gen_range(0.75..3.0)),
        1 => {
            let a = rng.gen_range(0.0..0.6);
            let b = rng.gen_range(a + 0.1..1.0);
            CatalogFunction::bump(a, b, rng.gen_range(1..4))?
        }
        _ => CatalogFunction::Polynomial(vec![0.0, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]),
    })
}

fn boundedness() -> Result<Vec<Check>> {
    let (alpha, nu, p, l) = (1.0, -0.5, 2.0, 1.0);
    let bound = c_plus(alpha, nu)?;
    let mut checks = vec![Check::new("C₊(1, −1/2) = 4", rel(bound, 4.0), 1e-8)];
    let op = FractionalIntegral::laguerre(Side::Left, alpha)?;
    let mesh = Mesh::new(1024, l, 2.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..20 {
        let f = random_catalog(&mut rng)?;
        let lhs = weighted_norm(&op.tabulate(&f, &mesh)?, nu, p)?;
        let rhs = bound * l.powf(alpha) * weighted_norm(&mesh.sample(&f)?, nu, p)?;
        checks.push(Check::at_most(format!("trial {trial}: {f}"), lhs, rhs));
    }
    Ok(checks)
}

/// `(1/k!) dᵏ/duᵏ [u]_α²` at `u = 0` by the Cauchy integral over `|u| = 1/2`.
pub fn ck_by_contour(alpha: f64, k: usize) -> Result<f64> {
    const POINTS: usize = 128;
    const RADIUS: f64 = 0.5;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..POINTS {
        let u = Complex64::from_polar(RADIUS, 2.0 * std::f64::consts::PI * j as f64 / POINTS as f64);
        let ratio = gamma_complex(u + 1.0)? / gamma_complex(u + 1.0 - alpha)?;
        sum += ratio * ratio / u.powi(k as i32);
    }
    Ok(sum.re / POINTS as f64)
}

fn stirling() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    // s(m+1, j) = s(m, j−1) − m s(m, j)
    let mut row = vec![1.0f64];
    for n in 1..=6u32 {
        let mut next = vec![0.0; n as usize + 1];
        for (j, v) in next.iter_mut().enumerate() {
            let up = if j > 0 { row[j - 1] } else { 0.0 };
            let same = row.get(j).copied().unwrap_or(0.0);
            *v = up - (n - 1) as f64 * same;
        }
        row = next;
        let mut mismatch: f64 = 0.0;
        for k in 0..=n {
            mismatch = mismatch.max((stirling_s(n as f64, k as usize)? - row[k as usize]).abs());
            mismatch = mismatch.max((stirling_first_kind(n, k)? - row[k as usize]).abs());
        }
        checks.push(Check::new(format!("s({n}, k) exact"), mismatch, 0.0));
        // relative to the largest entry of the row, since ∂s/∂α grows like it
        let scale = row.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let mut drift: f64 = 0.0;
        for alpha in [n as f64 - 1e-4, n as f64 + 1e-4] {
            for k in 0..=n as usize {
                drift = drift.max((stirling_s(alpha, k)? - row[k]).abs() / scale);
            }
        }
        checks.push(Check::new(format!("s({n} ± 1e-4, k) near integers"), drift, 1e-2));
    }
    for alpha in [0.3, 0.8, 1.7] {
        let mut err: f64 = 0.0;
        for k in 0..=5 {
            err = err.max((cauchy_ck(alpha, k)? - ck_by_contour(alpha, k)?).abs());
        }
        checks.push(Check::new(format!("c_k({alpha}), k ≤ 5"), err, 1e-7));
    }
    Ok(checks)
}
