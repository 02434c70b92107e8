//! Riemann–Liouville and Laguerre fractional integrals, the Laguerre
//! derivative `θ = D x D` and its fractional powers.

pub mod checks;
pub mod derivative;
pub mod integral;
pub mod norms;
pub mod theta;

pub use checks::{derivative_ibp_check, grid_pairing, integration_by_parts_check, pairing, rl_composition_check};
pub use derivative::{laguerre_d_left, laguerre_d_right};
pub use integral::{
    laguerre_l_left, laguerre_l_right, rl_integral_left, rl_integral_right, Family, FractionalIntegral, Image, Side,
};
pub use norms::weighted_norm;
pub use theta::{theta_apply, theta_of};
