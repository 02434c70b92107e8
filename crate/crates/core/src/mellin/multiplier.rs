//! Gamma-ratio multipliers of the Laguerre integrals and derivatives.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::gamma_ratio_sq;

/// Open interval `(lo, hi)` of admissible real parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Strip {
    pub lo: f64,
    pub hi: f64,
}

impl Strip {
    pub const ALL: Strip = Strip { lo: f64::NEG_INFINITY, hi: f64::INFINITY };

    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, nu: f64) -> bool {
        self.lo < nu && nu < self.hi
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo < self.hi)
    }

    pub fn intersect(&self, other: &Strip) -> Strip {
        Strip { lo: self.lo.max(other.lo), hi: self.hi.min(other.hi) }
    }

    /// The strip translated by `-shift`, i.e. `{s : s + shift ∈ self}`.
    pub fn shifted(&self, shift: f64) -> Strip {
        Strip { lo: self.lo - shift, hi: self.hi - shift }
    }

    /// A central abscissa: the midpoint, or half a unit inside the finite
    /// edge of a half-infinite strip.
    pub fn center(&self) -> Result<f64> {
        if self.is_empty() {
            return Err(Error::Strip(format!("empty strip ({}, {})", self.lo, self.hi)));
        }
        Ok(match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => 0.5 * (self.lo + self.hi),
            (true, false) => self.lo + 0.5,
            (false, true) => self.hi - 0.5,
            (false, false) => 0.5,
        })
    }

    /// Distance from `nu` to the nearest edge.
    pub fn margin(&self, nu: f64) -> f64 {
        (nu - self.lo).min(self.hi - nu)
    }
}

impl fmt::Display for Strip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiplierKind {
    LagIntLeft,
    LagIntRight,
    LagDerLeft,
    LagDerRight,
}

/// One operator in Mellin space: `(Tf)*(s) = M(s) f*(s + shift)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierDescriptor {
    kind: MultiplierKind,
    alpha: f64,
}

impl MultiplierDescriptor {
    pub fn new(kind: MultiplierKind, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::domain(format!("alpha > 0 required, got {alpha}")));
        }
        Ok(Self { kind, alpha })
    }

    pub fn kind(&self) -> MultiplierKind {
        self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Argument shift applied to the transform of the operand.
    pub fn shift(&self) -> f64 {
        match self.kind {
            MultiplierKind::LagIntLeft | MultiplierKind::LagIntRight => self.alpha,
            MultiplierKind::LagDerLeft | MultiplierKind::LagDerRight => -self.alpha,
        }
    }

    /// Where the multiplier is analytic.
    pub fn strip(&self) -> Strip {
        let a = self.alpha;
        match self.kind {
            MultiplierKind::LagIntLeft => Strip::new(f64::NEG_INFINITY, 1.0 - a),
            MultiplierKind::LagDerLeft => Strip::new(f64::NEG_INFINITY, 1.0 + a),
            MultiplierKind::LagIntRight | MultiplierKind::LagDerRight => Strip::new(0.0, f64::INFINITY),
        }
    }

    /// The first `count` poles, all on the real axis.
    pub fn poles(&self, count: usize) -> Vec<f64> {
        let a = self.alpha;
        (0..count)
            .map(|k| {
                let k = k as f64;
                match self.kind {
                    MultiplierKind::LagIntLeft => 1.0 - a + k,
                    MultiplierKind::LagDerLeft => 1.0 + a + k,
                    MultiplierKind::LagIntRight | MultiplierKind::LagDerRight => -k,
                }
            })
            .collect()
    }

    /// `M(s)` through log-gamma differences.
    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        let a = self.alpha;
        let one = Complex64::new(1.0, 0.0);
        match self.kind {
            MultiplierKind::LagIntLeft => gamma_ratio_sq(one - a - s, one - s),
            MultiplierKind::LagIntRight => gamma_ratio_sq(s, s + a),
            MultiplierKind::LagDerLeft => gamma_ratio_sq(one + a - s, one - s),
            MultiplierKind::LagDerRight => gamma_ratio_sq(s, s - a),
        }
    }
}

impl fmt::Display for MultiplierDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            MultiplierKind::LagIntLeft => "LagIntLeft",
            MultiplierKind::LagIntRight => "LagIntRight",
            MultiplierKind::LagDerLeft => "LagDerLeft",
            MultiplierKind::LagDerRight => "LagDerRight",
        };
        write!(f, "{name}({})", self.alpha)
    }
}
