//! Kernel functions and the mapping constants.

use lagfrac_core::volterra::legendre_kernel;
use lagfrac_core::{c_minus, c_plus, k_minus, k_plus, KernelEval};
use proptest::prelude::*;

fn rel(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

/// Geometric grid over `decades` decades starting at `start`.
fn log_grid(start: f64, decades: f64, points: usize) -> impl Iterator<Item = f64> {
    (0..points).map(move |i| start * 10f64.powf(decades * i as f64 / (points - 1) as f64))
}

#[test]
fn mapping_constants() {
    // quadrature of the defining integral in mpmath at 40 digits
    assert!(rel(c_plus(0.75, 0.1).unwrap(), 33.881700926309629575) < 1e-8);
    assert!(rel(c_minus(0.6, 0.5).unwrap(), 3.4711111830804832761) < 1e-8);
    assert!(rel(c_plus(1.0, -0.5).unwrap(), 4.0) < 1e-8);
    // ∫₀¹ u^{ν−1} ln(1/u) du = 1/ν²
    assert!(rel(c_minus(1.0, 1.0).unwrap(), 1.0) < 1e-10);
    assert!(rel(c_minus(1.0, 2.0).unwrap(), 0.25) < 1e-10);
}

#[test]
fn mapping_constants_outside_their_range() {
    assert!(c_plus(0.75, 0.25).is_err());
    assert!(c_minus(0.75, 0.0).is_err());
}

#[test]
fn kernels_are_positive_over_eight_decades() {
    for alpha in [0.55, 0.8, 1.3, 2.2] {
        let ke = KernelEval::from_alpha(alpha).unwrap();
        for d in log_grid(1e-4, 8.0, 400) {
            assert!(k_plus(&ke, 1.0 + d).unwrap() > 0.0, "k₊({}) at α = {alpha}", 1.0 + d);
        }
        for v in log_grid(1e-8, 8.0, 400).filter(|&v| v < 1.0) {
            assert!(k_minus(&ke, v).unwrap() > 0.0, "k₋({v}) at α = {alpha}");
        }
    }
}

#[test]
fn unit_order_kernels_are_logarithms() {
    let ke = KernelEval::from_alpha(1.0).unwrap();
    for v in log_grid(1.001, 6.0, 100) {
        assert!(rel(k_plus(&ke, v).unwrap(), v.ln()) < 1e-12);
    }
    for v in log_grid(1e-6, 5.99, 100) {
        assert!(rel(k_minus(&ke, v).unwrap(), -v.ln()) < 1e-12);
    }
}

#[test]
fn kernel_equals_legendre_integral() {
    for alpha in [0.75, 1.3] {
        let ke = KernelEval::from_alpha(alpha).unwrap();
        for x in [1.5, 4.0, 50.0] {
            let got = legendre_kernel(x, 1.0, alpha).unwrap();
            assert!(rel(k_plus(&ke, x).unwrap(), got) < 1e-7, "α = {alpha}, x = {x}");
        }
    }
}

proptest! {
    #[test]
    fn kernels_are_reflections_of_each_other(alpha in 0.55f64..2.5, v in 1.0001f64..1e4) {
        // k₊(v) = v^{α−1} k₋(1/v)
        let ke = KernelEval::from_alpha(alpha).unwrap();
        let plus = k_plus(&ke, v).unwrap();
        let minus = k_minus(&ke, 1.0 / v).unwrap();
        prop_assert!(rel(plus, minus * v.powf(alpha - 1.0)) < 1e-11, "α = {alpha}, v = {v}");
    }
}
