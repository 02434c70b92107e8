use crate::error::{Error, Result};
use crate::kernels::c_plus;

/// Parameters of one Volterra solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeumannSolveConfig {
    alpha: f64,
    nu: f64,
    lambda: f64,
    l: f64,
    c_plus: f64,
    n_max: usize,
    tol: f64,
}

impl NeumannSolveConfig {
    pub const DEFAULT_NU: f64 = -1.5;
    pub const DEFAULT_N_MAX: usize = 200;
    pub const DEFAULT_TOL: f64 = 1e-10;

    /// Validates `α > 1/2`, `ν < 1 − α/2`, `α + ν < 1` and
    /// `|λ| < (C₊ lᵅ)⁻¹`.
    pub fn new(alpha: f64, nu: f64, lambda: f64, l: f64) -> Result<Self> {
        if !(alpha > 0.5 && alpha.is_finite()) {
            return Err(Error::domain(format!("alpha > 1/2 required, got {alpha}")));
        }
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::domain(format!("interval length l > 0 required, got {l}")));
        }
        if !(nu < 1.0 - 0.5 * alpha) {
            return Err(Error::domain(format!("nu < 1 - alpha/2 required, got nu = {nu}, alpha = {alpha}")));
        }
        if !(alpha + nu < 1.0) {
            return Err(Error::domain(format!("alpha + nu < 1 required, got {}", alpha + nu)));
        }
        if !lambda.is_finite() {
            return Err(Error::domain(format!("lambda must be finite, got {lambda}")));
        }
        let c = c_plus(alpha, nu)?;
        let radius = 1.0 / (c * l.powf(alpha));
        if !(lambda.abs() < radius) {
            return Err(Error::domain(format!("|λ| < (C₊ lᵅ)⁻¹ = {radius} required, got |λ| = {}", lambda.abs())));
        }
        Ok(Self { alpha, nu, lambda, l, c_plus: c, n_max: Self::DEFAULT_N_MAX, tol: Self::DEFAULT_TOL })
    }

    /// As [`new`](Self::new) with `ν = −1.5`.
    pub fn with_default_nu(alpha: f64, lambda: f64, l: f64) -> Result<Self> {
        Self::new(alpha, Self::DEFAULT_NU, lambda, l)
    }

    pub fn with_n_max(mut self, n_max: usize) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::domain("term cap must be positive"));
        }
        self.n_max = n_max;
        Ok(self)
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Error::domain(format!("series tolerance must lie in (0, 1), got {tol}")));
        }
        self.tol = tol;
        Ok(self)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn length(&self) -> f64 {
        self.l
    }

    /// `C₊(α, ν)`.
    pub fn c_plus(&self) -> f64 {
        self.c_plus
    }

    /// Radius `(C₊ lᵅ)⁻¹` of the disk of guaranteed convergence.
    pub fn radius(&self) -> f64 {
        1.0 / (self.c_plus * self.l.powf(self.alpha))
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(NeumannSolveConfig::with_default_nu(1.0, 1.0, 1.0).is_ok());
        let msg = |r: Result<NeumannSolveConfig>| r.unwrap_err().to_string();
        assert!(msg(NeumannSolveConfig::new(0.5, -1.0, 0.1, 1.0)).contains("alpha > 1/2"));
        assert!(msg(NeumannSolveConfig::new(0.75, 0.7, 0.1, 1.0)).contains("1 - alpha/2"));
        assert!(msg(NeumannSolveConfig::new(0.75, 0.3, 0.1, 1.0)).contains("alpha + nu < 1"));
        // C₊(1, −1.5) = 1/2.25, so the radius at l = 1 is 2.25
        let cfg = NeumannSolveConfig::with_default_nu(1.0, 0.0, 1.0).unwrap();
        assert!((cfg.radius() - 2.25).abs() < 1e-8);
        assert!(msg(NeumannSolveConfig::with_default_nu(1.0, 2.3, 1.0)).contains("|λ| < (C₊ lᵅ)⁻¹"));
        assert!(NeumannSolveConfig::with_default_nu(1.0, -2.2, 1.0).is_ok());
    }
}
