//! Mellin transforms, contour inversion and operator multipliers.

use std::f64::consts::PI;

use lagfrac_core::mellin::{
    apply_chain, apply_multiplier, mellin_forward, mellin_inverse, parseval_pair, MellinContour, MultiplierDescriptor,
    MultiplierKind, Strip,
};
use lagfrac_core::operators::laguerre_l_left;
use lagfrac_core::specfun::gamma_complex;
use lagfrac_core::{CatalogFunction, Error};
use num_complex::Complex64;
use proptest::prelude::*;

fn exp1() -> CatalogFunction {
    CatalogFunction::exp_decay(1.0).unwrap()
}

fn md(kind: MultiplierKind, alpha: f64) -> MultiplierDescriptor {
    MultiplierDescriptor::new(kind, alpha).unwrap()
}

fn crel(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm()
}

#[test]
fn forward_transform_values() {
    let one = mellin_forward(&exp1(), Complex64::new(2.0, 0.0)).unwrap();
    assert!(crel(one, Complex64::new(1.0, 0.0)) < 1e-12);
    let root_pi = mellin_forward(&exp1(), Complex64::new(0.5, 0.0)).unwrap();
    assert!(crel(root_pi, Complex64::new(PI.sqrt(), 0.0)) < 1e-12);
    // mpmath quadrature over the support of the bump
    let bump = CatalogFunction::bump(1.0, 2.0, 3).unwrap();
    let got = mellin_forward(&bump, Complex64::new(1.0, 3.0)).unwrap();
    let want = Complex64::new(0.14704245690032148602, 0.38041974325573887578);
    assert!(crel(got, want) < 1e-9, "{got}");
}

#[test]
fn forward_transform_rejects_points_outside_the_strip() {
    assert!(matches!(mellin_forward(&exp1(), Complex64::new(-0.5, 0.0)), Err(Error::Strip(_))));
}

#[test]
fn inverse_of_gamma_is_the_exponential() {
    let contour = MellinContour::new(1.0, 40.0, 0.1).unwrap();
    for x in [1.0, 2.0] {
        let got = mellin_inverse(gamma_complex, &contour, x).unwrap();
        assert!(((got.value - (-x).exp()) / (-x).exp()).abs() < 1e-9, "x = {x}");
    }
    let zero = mellin_inverse(|_| Ok(Complex64::new(0.0, 0.0)), &contour, 1.0).unwrap();
    assert_eq!(zero.value, 0.0);
}

#[test]
fn round_trip_recovers_the_function() {
    let contour = MellinContour::new(1.0, 40.0, 0.1).unwrap();
    for x in [0.5, 1.0, 2.0] {
        let got = mellin_inverse(|s| mellin_forward(&exp1(), s), &contour, x).unwrap();
        assert!((got.value - (-x).exp()).abs() < 1e-6 * (-x).exp());
    }
}

#[test]
fn contour_construction_limits() {
    assert!(MellinContour::new(0.5, 10.0, 0.5).is_err());
    assert!(MellinContour::new(0.5, 10.0, 0.2).is_ok());
    assert!(MellinContour::new(f64::NAN, 10.0, 0.1).is_err());
    assert!(MellinContour::at(1.0, &Strip::new(0.0, 0.5)).is_err());
}

#[test]
fn multiplier_strips_and_poles() {
    let left = md(MultiplierKind::LagIntLeft, 0.75);
    assert_eq!(left.poles(3), vec![0.25, 1.25, 2.25]);
    assert_eq!(left.shift(), 0.75);
    let right = md(MultiplierKind::LagIntRight, 0.75);
    assert_eq!(right.poles(3), vec![0.0, -1.0, -2.0]);
    assert_eq!(md(MultiplierKind::LagDerRight, 0.75).shift(), -0.75);
    assert!(MultiplierDescriptor::new(MultiplierKind::LagIntLeft, 0.0).is_err());
    let contour = MellinContour::new(0.25, 10.0, 0.1).unwrap();
    assert!(contour.check(&left).is_err());
}

#[test]
fn multipliers_agree_with_quadrature() {
    for alpha in [0.6, 1.0] {
        for x in [0.5, 1.0] {
            let by_contour = apply_multiplier(&exp1(), &md(MultiplierKind::LagIntLeft, alpha), None, x).unwrap();
            let direct = laguerre_l_left(&exp1(), alpha, x).unwrap();
            assert!(((by_contour - direct) / direct).abs() < 1e-6, "α = {alpha}, x = {x}");
        }
    }
    // γ + E₁(1) on the left, E₁(1) on the right
    let left = apply_multiplier(&exp1(), &md(MultiplierKind::LagIntLeft, 1.0), None, 1.0).unwrap();
    assert!((left - 0.79659959929705313428).abs() < 1e-7);
    let right = apply_multiplier(&exp1(), &md(MultiplierKind::LagIntRight, 1.0), None, 1.0).unwrap();
    assert!((right - 0.21938393439552027368).abs() < 1e-7);
}

#[test]
fn derivative_after_integral_is_the_identity() {
    let alpha = 0.6;
    let ops = [md(MultiplierKind::LagIntLeft, alpha), md(MultiplierKind::LagDerLeft, alpha)];
    for x in [0.5, 1.0, 2.0] {
        let got = apply_chain(&exp1(), &ops, None, x).unwrap().value;
        assert!((got - (-x).exp()).abs() < 1e-7 * (-x).exp());
    }
}

#[test]
fn empty_chain_strip_is_reported() {
    // the left multiplier of order 3 needs Re s < −2, the right one Re s > 0
    let ops = [md(MultiplierKind::LagIntLeft, 3.0), md(MultiplierKind::LagIntRight, 3.0)];
    let result = apply_chain(&exp1(), &ops, None, 1.0);
    assert!(matches!(result, Err(Error::Strip(_))));
}

#[test]
fn parseval_values() {
    let (a, b) = parseval_pair(&exp1(), &exp1(), Some(&MellinContour::new(0.5, 40.0, 0.1).unwrap())).unwrap();
    assert!((a - 0.5).abs() < 1e-10 && (b - 0.5).abs() < 1e-8);
    let (a, b) = parseval_pair(&exp1(), &CatalogFunction::exp_decay(2.0).unwrap(), None).unwrap();
    assert!((a - 1.0 / 3.0).abs() < 1e-10 && (b - 1.0 / 3.0).abs() < 1e-8);
    // mpmath quadrature of ∫₁² bump(x) e^{−x} dx
    let bump = CatalogFunction::bump(1.0, 2.0, 3).unwrap();
    let (a, b) = parseval_pair(&bump, &exp1(), None).unwrap();
    let want = 0.096469805682694871451;
    assert!((a - want).abs() < 1e-10 * want && (b - want).abs() < 1e-7 * want);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplier_semigroup(a in 0.2f64..1.5, b in 0.2f64..1.5, tau in -50.0f64..50.0) {
        let s = Complex64::new(-a - b - 0.3, tau);
        let product = md(MultiplierKind::LagIntLeft, a).eval(s).unwrap() * md(MultiplierKind::LagIntLeft, b).eval(s + a).unwrap();
        let joint = md(MultiplierKind::LagIntLeft, a + b).eval(s).unwrap();
        prop_assert!(crel(product, joint) < 1e-12);
    }

    #[test]
    fn derivative_multiplier_cancels_integral(a in 0.2f64..2.5, nu in -2.0f64..0.0, tau in -100.0f64..100.0) {
        let s = Complex64::new(nu - a, tau);
        let d = md(MultiplierKind::LagDerLeft, a).eval(s + a).unwrap();
        let i = md(MultiplierKind::LagIntLeft, a).eval(s).unwrap();
        prop_assert!((d * i - 1.0).norm() < 1e-12);
    }
}

#[test]
fn multiplier_decays_like_a_power() {
    // |M(ν + iτ)| |τ|^{2α} → 1 by Stirling
    for alpha in [0.6, 1.25] {
        let m = md(MultiplierKind::LagIntLeft, alpha);
        let nu = (1.0 - alpha) / 2.0 - 0.5;
        let scaled: Vec<f64> = [100.0, 200.0, 500.0, 1000.0]
            .iter()
            .map(|&t: &f64| m.eval(Complex64::new(nu, t)).unwrap().norm() * t.powf(2.0 * alpha))
            .collect();
        for w in scaled.windows(2) {
            assert!((w[1] / w[0] - 1.0).abs() < 0.02, "{scaled:?}");
        }
        assert!(scaled.iter().all(|v| (v - 1.0).abs() < 0.05), "{scaled:?}");
    }
}
