//! Product integration: the solution is sought as a piecewise-linear function
//! on the mesh, and the kernel is integrated exactly against each hat
//! function by the same singular quadrature the operators use.

use crate::error::{Error, Result};
use crate::function::{Decay, GridFunction, Interpolation, Mesh, RealFunction};
use crate::operators::{FractionalIntegral, Side};
use crate::volterra::config::NeumannSolveConfig;
use crate::volterra::neumann::check_mesh;

/// Stand-in for a piecewise-linear function on the mesh, used only for the
/// quadrature layout.
struct Hats<'a> {
    nodes: &'a [f64],
}

impl RealFunction for Hats<'_> {
    fn eval(&self, _x: f64) -> Result<f64> {
        Err(Error::domain("hat layout has no values"))
    }

    fn support(&self) -> (f64, f64) {
        (0.0, *self.nodes.last().unwrap_or(&0.0))
    }

    fn decay(&self) -> Decay {
        Decay::Compact
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.nodes.to_vec()
    }
}

/// Solves `f = g + λ L₀₊^α f` by product integration with piecewise-linear
/// `f`, marching outward from `f(0) = g(0)`.
///
/// The returned grid interpolates linearly, with `g(0)` as its value at the
/// origin.
pub fn direct_solve<G: RealFunction + ?Sized>(g: &G, cfg: &NeumannSolveConfig, mesh: &Mesh) -> Result<GridFunction> {
    check_mesh(mesh, cfg)?;
    if g.growth_at_zero() < 0.0 {
        return Err(Error::domain("product integration needs g bounded at the origin"));
    }
    let nodes = mesh.nodes();
    let f0 = g.eval(0.0)?;
    let lambda = cfg.lambda();
    let op = FractionalIntegral::laguerre(Side::Left, cfg.alpha())?;
    let hats = Hats { nodes: &nodes };
    let mut values: Vec<f64> = Vec::with_capacity(nodes.len());
    let mut weights = vec![0.0; nodes.len() + 1];
    for (i, &x) in nodes.iter().enumerate() {
        let gx = g.eval(x)?;
        if lambda == 0.0 {
            values.push(gx);
            continue;
        }
        // weights[j] multiplies f at node j, with node 0 the origin
        weights[..=i + 1].iter_mut().for_each(|w| *w = 0.0);
        for (u, w) in op.left_nodes(&hats, x)? {
            let j = nodes[..=i].partition_point(|&t| t < u);
            let left = if j == 0 { 0.0 } else { nodes[j - 1] };
            let right = nodes[j.min(i)];
            let theta = if right > left { ((u - left) / (right - left)).clamp(0.0, 1.0) } else { 1.0 };
            weights[j] += w * (1.0 - theta);
            weights[j + 1] += w * theta;
        }
        let mut known = weights[0] * f0;
        for j in 1..=i {
            known += weights[j] * values[j - 1];
        }
        let diag = 1.0 - lambda * weights[i + 1];
        if diag.abs() < 1e-12 {
            return Err(Error::domain(format!("product-integration step is singular at x = {x}")));
        }
        values.push((gx + lambda * known) / diag);
    }
    Ok(GridFunction::new(values, mesh.length(), mesh.grading())?.with_interpolation(Interpolation::Linear).with_origin(f0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::CatalogFunction;
    use crate::volterra::neumann::residual;

    #[test]
    fn zero_coupling_is_exact() {
        let cfg = NeumannSolveConfig::with_default_nu(0.75, 0.0, 1.0).unwrap();
        let g = CatalogFunction::exp_decay(1.0).unwrap();
        let f = direct_solve(&g, &cfg, &Mesh::new(32, 1.0, 2.0).unwrap()).unwrap();
        for (x, v) in f.nodes().iter().zip(f.values()) {
            assert_eq!(*v, (-x).exp());
        }
    }

    #[test]
    fn discrete_equation_holds() {
        let cfg = NeumannSolveConfig::with_default_nu(0.75, 0.3, 1.0).unwrap();
        let g = CatalogFunction::monomial(1.0);
        let f = direct_solve(&g, &cfg, &Mesh::new(64, 1.0, 2.0).unwrap()).unwrap();
        assert!(residual(&f, &g, &cfg).unwrap() < 1e-12);
    }
}
