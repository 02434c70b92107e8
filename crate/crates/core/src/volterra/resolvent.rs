//! The resolvent kernel `R(x, u) = Σ_{n≥1} λⁿ Kₙ(x, u)` of the Neumann
//! series, where `Kₙ(x, u) = x^{−αn} (x−u)^{2αn−1} ₂F₁(αn, αn; 2αn; 1 − u/x)/Γ(2αn)`
//! is the kernel of `L₀₊^{αn}`.
//!
//! The double series regroups the hypergeometric factors:
//!
//! `R = λ x^{−α} (x−u)^{2α−1} Σ_{n,k≥0} (a)ₖ² wᵏ zⁿ / (Γ(2a) (2a)ₖ k!)`
//!
//! with `a = α(n+1)`, `w = 1 − u/x` and `z = λ x^{−α} (x−u)^{2α}`.

use crate::error::{Error, Result};
use crate::function::{GridFunction, Mesh, RealFunction};
use crate::kernels::KernelEval;
use crate::operators::{FractionalIntegral, Side};
use crate::quad::SingularRule;
use crate::specfun::{beta, ln_gamma_abs, KernelHypergeometric};
use crate::volterra::config::NeumannSolveConfig;
use crate::volterra::neumann::check_mesh;

/// Above this `w` the inner sum of the double series is taken from the
/// logarithmic expansion about `w = 1`.
const LOG_SWITCH: f64 = 0.9;
const START: usize = 8;
const MAX_RECT: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolventForm {
    SingleSeries,
    DoubleSeries,
}

struct Order {
    kernel: KernelEval,
    hyp: KernelHypergeometric,
    ln_inv_gamma_2a: f64,
}

/// Per-order constants for repeated resolvent evaluation.
pub struct Resolvent {
    cfg: NeumannSolveConfig,
    orders: Vec<Order>,
    beta_const: f64,
}

impl Resolvent {
    pub fn new(cfg: &NeumannSolveConfig) -> Result<Self> {
        let alpha = cfg.alpha();
        let orders = (1..=cfg.n_max())
            .map(|n| {
                let a = alpha * n as f64;
                Ok(Order { kernel: KernelEval::from_alpha(a)?, hyp: KernelHypergeometric::new(a)?, ln_inv_gamma_2a: -ln_gamma_abs(2.0 * a)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { cfg: *cfg, orders, beta_const: beta(0.5, 0.5 * alpha)? })
    }

    pub fn config(&self) -> &NeumannSolveConfig {
        &self.cfg
    }

    fn check(&self, x: f64, u: f64) -> Result<()> {
        if !(0.0 < u && u < x) {
            return Err(Error::domain(format!("resolvent needs 0 < u < x, got x = {x}, u = {u}")));
        }
        Ok(())
    }

    /// `λⁿ Kₙ(x, u)`.
    fn term(&self, n: usize, x: f64, u: f64) -> Result<f64> {
        let a = self.cfg.alpha() * n as f64;
        let tau = u / x;
        let f = self.orders[n - 1].kernel.tau_factor(tau)?;
        if f == 0.0 {
            return Ok(0.0);
        }
        let lam = self.cfg.lambda();
        let mag = n as f64 * lam.abs().ln() + (a - 1.0) * x.ln() + (2.0 * a - 1.0) * (1.0 - tau).ln();
        let sign = if lam < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
        Ok(sign * mag.exp() * f)
    }

    /// Bound on `|λⁿ Kₙ(x, u)|` from the Legendre-integral representation.
    fn majorant_term(&self, n: usize, x: f64, u: f64) -> f64 {
        let alpha = self.cfg.alpha();
        let a = alpha * n as f64;
        let bracket = self.beta_const / (2f64.powf(1.0 + alpha) * (x * u).powf(0.5 * alpha))
            + x.powf(-a) * ((4.0 * self.cfg.length() + 1.0) / (x * u).sqrt()).ln();
        let ln_front = (2.0f64).ln() + n as f64 * self.cfg.lambda().abs().ln() + (2.0 * a - 1.0) * (x - u).ln()
            - 2.0 * ln_gamma_abs(a).unwrap_or(f64::INFINITY);
        ln_front.exp() * bracket
    }

    /// `Σ_{n>after} |λ|ⁿ` times the bound on `|Kₙ|`.
    pub fn majorant(&self, x: f64, u: f64, after: usize) -> Result<f64> {
        self.check(x, u)?;
        let mut sum = 0.0;
        for n in after + 1.. {
            let t = self.majorant_term(n, x, u);
            sum += t;
            if t <= 1e-18 * sum || t == 0.0 {
                return Ok(sum);
            }
            if n > after + MAX_RECT {
                break;
            }
        }
        Err(Error::TruncationBudget("remainder majorant did not converge".into()))
    }

    /// The first `terms` terms of the single series.
    pub fn partial_sum(&self, x: f64, u: f64, terms: usize) -> Result<f64> {
        self.check(x, u)?;
        if terms > self.orders.len() {
            return Err(Error::TruncationBudget(format!("{terms} terms exceed the cap {}", self.orders.len())));
        }
        (1..=terms).map(|n| self.term(n, x, u)).sum()
    }

    /// Single series, truncated once the remainder majorant drops below the
    /// tolerance relative to the partial sum.
    pub fn single(&self, x: f64, u: f64) -> Result<f64> {
        self.check(x, u)?;
        if self.cfg.lambda() == 0.0 {
            return Ok(0.0);
        }
        let mut sum = 0.0;
        for n in 1..=self.orders.len() {
            sum += self.term(n, x, u)?;
            let tail = self.majorant(x, u, n)?;
            if tail <= self.cfg.tol() * sum.abs() || tail == 0.0 {
                return Ok(sum);
            }
        }
        Err(Error::TruncationBudget(format!("single series needs more than {} terms", self.orders.len())))
    }

    /// Double series at `(x, u)`.
    pub fn double(&self, x: f64, u: f64) -> Result<f64> {
        self.check(x, u)?;
        let tau = u / x;
        Ok(self.cfg.lambda() * x.powf(self.cfg.alpha() - 1.0) * (1.0 - tau).powf(2.0 * self.cfg.alpha() - 1.0) * self.double_sum(x, tau)?)
    }

    /// `Σ_{n,k} (a)ₖ² wᵏ zⁿ / (Γ(2a)(2a)ₖ k!)` at `w = 1 − τ`.
    ///
    /// The rectangle `n < N`, `k < K` grows by doubling both sides until the
    /// added shell is negligible. Above the switch the sum over `k` is taken
    /// in closed form and only `N` grows.
    fn double_sum(&self, x: f64, tau: f64) -> Result<f64> {
        let lam = self.cfg.lambda();
        if lam == 0.0 {
            return Ok(0.0);
        }
        let alpha = self.cfg.alpha();
        let w = 1.0 - tau;
        let ln_z = lam.abs().ln() + alpha * x.ln() + 2.0 * alpha * (-tau).ln_1p();
        let cap = self.orders.len();
        let eps = 1e-2 * self.cfg.tol();
        let front = |n: usize| -> f64 {
            let sign = if lam < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
            sign * (n as f64 * ln_z + self.orders[n].ln_inv_gamma_2a).exp()
        };
        if w > LOG_SWITCH {
            let mut total = 0.0;
            let mut quiet = 0;
            for n in 0..cap {
                let f = front(n);
                let column = if f == 0.0 { 0.0 } else { f * self.orders[n].hyp.eval(w, tau)? };
                total += column;
                if column.abs() <= eps * total.abs() {
                    quiet += 1;
                    if quiet == 2 {
                        return Ok(total);
                    }
                } else {
                    quiet = 0;
                }
            }
            return Err(Error::TruncationBudget(format!("double series needs more than {cap} orders")));
        }
        // per column: prefactor, running inner sum, last inner term, next k
        struct Column {
            front: f64,
            a: f64,
            sum: f64,
            term: f64,
            k: usize,
        }
        let extend = |c: &mut Column, k_max: usize| -> f64 {
            let before = c.sum;
            while c.k < k_max {
                let kf = c.k as f64;
                c.term *= (c.a + kf) * (c.a + kf) / ((2.0 * c.a + kf) * (kf + 1.0)) * w;
                c.sum += c.term;
                c.k += 1;
            }
            c.front * (c.sum - before)
        };
        let new_column = |n: usize| Column { front: front(n), a: alpha * (n + 1) as f64, sum: 1.0, term: 1.0, k: 0 };
        let (mut n_max, mut k_max) = (START.min(cap), START);
        let mut columns: Vec<Column> = (0..n_max).map(new_column).collect();
        let mut total = 0.0;
        for c in columns.iter_mut() {
            total += c.front;
            total += extend(c, k_max);
        }
        loop {
            let (n_next, k_next) = ((2 * n_max).min(cap), 2 * k_max);
            if k_next > MAX_RECT {
                return Err(Error::TruncationBudget(format!("double series not converged at {n_max} × {k_max} terms")));
            }
            let mut shell = 0.0;
            for c in columns.iter_mut() {
                shell += extend(c, k_next);
            }
            for n in n_max..n_next {
                let mut c = new_column(n);
                shell += c.front + extend(&mut c, k_next);
                columns.push(c);
            }
            total += shell;
            (n_max, k_max) = (n_next, k_next);
            if shell.abs() <= eps * total.abs() || shell == 0.0 {
                return Ok(total);
            }
        }
    }

    pub fn eval(&self, x: f64, u: f64, form: ResolventForm) -> Result<f64> {
        match form {
            ResolventForm::SingleSeries => self.single(x, u),
            ResolventForm::DoubleSeries => self.double(x, u),
        }
    }

    /// `g(x) + ∫₀ˣ R(x, u) g(u) du` at `x`.
    pub fn solve_at<G: RealFunction + ?Sized>(&self, g: &G, x: f64, op: &FractionalIntegral, rule: &SingularRule) -> Result<f64> {
        let gx = g.eval(x)?;
        let lam = self.cfg.lambda();
        if lam == 0.0 {
            return Ok(gx);
        }
        let alpha = self.cfg.alpha();
        let Some(span) = op.left_span(g, x)? else {
            return Ok(gx);
        };
        // u = xτ: ∫₀ˣ R g du = λ x^α ∫₀¹ (1−τ)^{2α−1} S(1−τ) g(xτ) dτ
        let integral = rule.integrate(&span, |tau| {
            let v = g.eval(x * tau)?;
            if v == 0.0 {
                return Ok(0.0);
            }
            Ok(self.double_sum(x, tau)? * v)
        })?;
        Ok(gx + lam * x.powf(alpha) * integral)
    }
}

/// `R(x, u)` in the requested form.
pub fn resolvent_kernel(x: f64, u: f64, cfg: &NeumannSolveConfig, form: ResolventForm) -> Result<f64> {
    Resolvent::new(cfg)?.eval(x, u, form)
}

/// The first `terms` terms of the single series.
pub fn resolvent_partial_sum(x: f64, u: f64, cfg: &NeumannSolveConfig, terms: usize) -> Result<f64> {
    Resolvent::new(cfg)?.partial_sum(x, u, terms)
}

/// Bound on the single-series tail after `after` terms.
pub fn remainder_majorant(x: f64, u: f64, cfg: &NeumannSolveConfig, after: usize) -> Result<f64> {
    Resolvent::new(cfg)?.majorant(x, u, after)
}

/// `f(x) = g(x) + ∫₀ˣ R(x, u) g(u) du` on the nodes of `mesh`, with the
/// resolvent from the double series.
pub fn resolvent_solve<G: RealFunction + ?Sized>(g: &G, cfg: &NeumannSolveConfig, mesh: &Mesh) -> Result<GridFunction> {
    check_mesh(mesh, cfg)?;
    let res = Resolvent::new(cfg)?;
    let op = FractionalIntegral::laguerre(Side::Left, cfg.alpha())?;
    let rule = SingularRule::new(2.0 * cfg.alpha() - 1.0)?;
    let values = mesh.nodes().iter().map(|&x| res.solve_at(g, x, &op, &rule)).collect::<Result<Vec<_>>>()?;
    let out = GridFunction::new(values, mesh.length(), mesh.grading())?;
    let p = g.growth_at_zero();
    Ok(if p.is_finite() { out.with_growth(p) } else { out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_term_is_the_logarithmic_kernel() {
        // λ K₁(e, 1) = λ ln e
        let cfg = NeumannSolveConfig::with_default_nu(1.0, 0.5, 3.0).unwrap();
        let e = std::f64::consts::E;
        assert!((resolvent_partial_sum(e, 1.0, &cfg, 1).unwrap() - 0.5).abs() < 1e-13);
    }

    #[test]
    fn forms_agree() {
        let cfg = NeumannSolveConfig::with_default_nu(0.75, 0.2, 1.0).unwrap();
        let r = Resolvent::new(&cfg).unwrap();
        for &(x, u) in &[(1.0, 0.4), (0.5, 0.01), (0.9, 0.85)] {
            let s = r.single(x, u).unwrap();
            let d = r.double(x, u).unwrap();
            assert!((s - d).abs() <= 1e-9 * s.abs(), "({x}, {u}): {s} vs {d}");
        }
    }

    #[test]
    fn small_coupling_limit() {
        let lam = 1e-9;
        let cfg = NeumannSolveConfig::with_default_nu(0.75, lam, 1.0).unwrap();
        let (x, u): (f64, f64) = (1.0, 0.4);
        let kernel = KernelEval::from_alpha(0.75).unwrap();
        let bare = x.powf(-0.75) * (x - u).powf(0.5) * kernel.tau_factor(u / x).unwrap();
        let v = resolvent_kernel(x, u, &cfg, ResolventForm::SingleSeries).unwrap() / lam;
        assert!((v - bare).abs() < 1e-8 * bare);
    }

    #[test]
    fn majorant_bounds_the_tail() {
        let cfg = NeumannSolveConfig::with_default_nu(0.75, 0.5, 1.0).unwrap();
        let r = Resolvent::new(&cfg).unwrap();
        for &(x, u) in &[(1.0, 0.4), (0.3, 0.1), (0.8, 0.001)] {
            let full = r.single(x, u).unwrap();
            for n in 1..4 {
                let tail = (full - r.partial_sum(x, u, n).unwrap()).abs();
                assert!(tail <= r.majorant(x, u, n).unwrap());
            }
        }
    }

    #[test]
    fn rejects_points_off_the_triangle() {
        let cfg = NeumannSolveConfig::with_default_nu(0.75, 0.2, 1.0).unwrap();
        assert!(resolvent_kernel(0.5, 0.5, &cfg, ResolventForm::DoubleSeries).is_err());
    }
}
