//! Mellin transforms, their inversion along vertical lines and the gamma-ratio
//! multipliers by which the Laguerre operators act on transforms.

pub mod contour;
pub mod multiplier;
pub mod transform;

pub use contour::{mellin_inverse, Inversion, MellinContour};
pub use multiplier::{MultiplierDescriptor, MultiplierKind, Strip};
pub use transform::{admissible_strip, apply_chain, apply_multiplier, fundamental_strip, half_line_integral, mellin_forward, parseval_pair};
