//! Scalar special functions.

pub mod gamma;
pub mod hyp2f1;
pub mod polygamma;
pub mod stirling;

pub use gamma::{beta, cospi, gamma, gamma_complex, gamma_ratio_sq, ln_gamma, ln_gamma_abs, rgamma, sinpi, EULER_GAMMA};
pub use hyp2f1::{gauss_2f1, gauss_series, log_case, Hyp2F1Params, KernelHypergeometric, MAX_TERMS, SERIES_SWITCH};
pub use polygamma::{digamma, polygamma};
pub use stirling::{cauchy_ck, stirling_first_kind, stirling_s, stirling_series};
