use crate::error::{Error, Result};
use crate::function::{GridFunction, Interpolation, Mesh, RealFunction};
use crate::operators::{FractionalIntegral, Side};
use crate::volterra::config::NeumannSolveConfig;

pub(crate) fn check_mesh(mesh: &Mesh, cfg: &NeumannSolveConfig) -> Result<()> {
    if mesh.length() > cfg.length() * (1.0 + 1e-12) {
        return Err(Error::domain(format!("mesh length {} exceeds the interval length {}", mesh.length(), cfg.length())));
    }
    Ok(())
}

pub(crate) fn sup(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m: f64, v| m.max(v.abs()))
}

/// `f = g + Σ_{n≥1} λⁿ L₀₊^{αn} g` on the nodes of `mesh`, each term
/// evaluated directly at order `αn`; summation stops once a term's sup-norm
/// falls below the tolerance.
pub fn neumann_solve<G: RealFunction + ?Sized>(g: &G, cfg: &NeumannSolveConfig, mesh: &Mesh) -> Result<GridFunction> {
    check_mesh(mesh, cfg)?;
    let nodes = mesh.nodes();
    let mut values = nodes.iter().map(|&x| g.eval(x)).collect::<Result<Vec<_>>>()?;
    let lambda = cfg.lambda();
    if lambda != 0.0 {
        let mut converged = false;
        for n in 1..=cfg.n_max() {
            let op = FractionalIntegral::laguerre(Side::Left, cfg.alpha() * n as f64)?;
            let coeff = lambda.powi(n as i32);
            let term: Vec<f64> = op.eval_many(g, &nodes)?.into_iter().map(|v| coeff * v).collect();
            for (v, t) in values.iter_mut().zip(&term) {
                *v += t;
            }
            if sup(&term) < cfg.tol() {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::TruncationBudget(format!("Neumann series needs more than {} terms", cfg.n_max())));
        }
    }
    let out = GridFunction::new(values, mesh.length(), mesh.grading())?;
    let p = g.growth_at_zero();
    Ok(if p.is_finite() { out.with_growth(p) } else { out })
}

/// `max_i |f(xᵢ) − λ (L₀₊^α f)(xᵢ) − g(xᵢ)|`.
pub fn residual<G: RealFunction + ?Sized>(f: &GridFunction, g: &G, cfg: &NeumannSolveConfig) -> Result<f64> {
    Ok(sup(&residuals(f, g, cfg)?))
}

/// `f(xᵢ) − λ (L₀₊^α f)(xᵢ) − g(xᵢ)` at every node.
///
/// A piecewise-linear `f` is integrated as it stands. Otherwise `f` is split
/// as `g + h`, with `g` integrated exactly and `h` through its interpolant.
pub fn residuals<G: RealFunction + ?Sized>(f: &GridFunction, g: &G, cfg: &NeumannSolveConfig) -> Result<Vec<f64>> {
    let op = FractionalIntegral::laguerre(Side::Left, cfg.alpha())?;
    let lambda = cfg.lambda();
    let gv = f.nodes().iter().map(|&x| g.eval(x)).collect::<Result<Vec<_>>>()?;
    let image = if f.interpolation() == Interpolation::Linear {
        op.eval_many(f, f.nodes())?
    } else {
        let h = f.with_values(f.values().iter().zip(&gv).map(|(a, b)| a - b).collect())?;
        let p = g.growth_at_zero() + cfg.alpha();
        let h = if p.is_finite() { h.with_growth(p) } else { h.with_growth(0.0) };
        let lg = op.eval_many(g, f.nodes())?;
        let lh = op.eval_many(&h, f.nodes())?;
        lg.iter().zip(&lh).map(|(a, b)| a + b).collect()
    };
    Ok(f.values().iter().zip(image).zip(gv).map(|((fv, l), gx)| fv - lambda * l - gx).collect())
}
