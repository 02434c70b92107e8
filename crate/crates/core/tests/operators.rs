//! Fractional integrals and derivatives against closed forms and
//! high-precision reference values.

use std::f64::consts::E;

use lagfrac_core::operators::{
    integration_by_parts_check, laguerre_d_left, laguerre_d_right, laguerre_l_left, laguerre_l_right, rl_composition_check,
    rl_integral_left, rl_integral_right, theta_apply, theta_of, weighted_norm,
};
use lagfrac_core::specfun::gamma;
use lagfrac_core::verify::{derivative_of_integral, interior_error, monomial_image};
use lagfrac_core::{CatalogFunction, Error, FractionalIntegral, GridFunction, Mesh, RealFunction, Side};
use proptest::prelude::*;

fn rel(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

fn exp1() -> CatalogFunction {
    CatalogFunction::exp_decay(1.0).unwrap()
}

/// `E₁(1) = ∫₁^∞ e^{−u}/u du = ∫₁^∞ ln u e^{−u} du`.
const E1_OF_ONE: f64 = 0.21938393439552027368;

#[test]
fn riemann_liouville_left_values() {
    assert!(rel(rl_integral_left(&CatalogFunction::monomial(1.0), 1.0, 2.0).unwrap(), 2.0) < 1e-12);
    let want = gamma(2.0).unwrap() / gamma(2.5).unwrap();
    assert!(rel(rl_integral_left(&CatalogFunction::monomial(1.0), 0.5, 1.0).unwrap(), want) < 1e-9);
    assert!(rel(rl_integral_left(&exp1(), 1.0, 1.0).unwrap(), 1.0 - (-1.0f64).exp()) < 1e-9);
}

#[test]
fn riemann_liouville_right_values() {
    assert!(rel(rl_integral_right(&exp1(), 1.0, 1.0).unwrap(), (-1.0f64).exp()) < 1e-9);
    // mpmath quadrature of (1/Γ(1/2)) ∫₂^∞ (t−2)^{−1/2} e^{−t} dt
    assert!(rel(rl_integral_right(&exp1(), 0.5, 2.0).unwrap(), 0.13533528323661269189) < 1e-9);
    let bump = CatalogFunction::bump(1.0, 2.0, 3).unwrap();
    assert_eq!(rl_integral_right(&bump, 1.0, 3.0).unwrap(), 0.0);
    assert!(matches!(rl_integral_right(&CatalogFunction::monomial(1.0), 0.5, 1.0), Err(Error::Divergence(_))));
}

#[test]
fn laguerre_left_values() {
    assert!(rel(laguerre_l_left(&CatalogFunction::monomial(1.0), 1.0, 1.0).unwrap(), 0.25) < 1e-8);
    assert!(rel(laguerre_l_left(&CatalogFunction::monomial(2.0), 1.0, 2.0).unwrap(), 8.0 / 9.0) < 1e-8);
    assert!(rel(laguerre_l_left(&CatalogFunction::constant(1.0), 1.0, 1.0).unwrap(), 1.0) < 1e-8);
    // mpmath quadrature of the defining integral
    assert!(rel(laguerre_l_left(&exp1(), 0.6, 0.5).unwrap(), 0.68632913809812349982) < 1e-8);
    assert!(rel(laguerre_l_left(&exp1(), 0.6, 1.0).unwrap(), 0.87997088519519548237) < 1e-8);
    // ∫₀¹ ln(1/u) e^{−u} du = γ + E₁(1)
    assert!(rel(laguerre_l_left(&exp1(), 1.0, 1.0).unwrap(), 0.79659959929705313428) < 1e-8);
}

#[test]
fn laguerre_right_values() {
    assert!(rel(laguerre_l_right(&exp1(), 1.0, 1.0).unwrap(), E1_OF_ONE) < 1e-8);
    let bump = CatalogFunction::bump(2.0, 3.0, 1).unwrap();
    assert_eq!(laguerre_l_right(&bump, 0.8, 4.0).unwrap(), 0.0);
    let f = CatalogFunction::exp_decay(2.0).unwrap();
    assert!(rel(laguerre_l_right(&f, 0.75, 0.5).unwrap(), 0.16000080274864948802) < 1e-8);
    assert!(rel(laguerre_l_right(&exp1(), 0.7, 1.0).unwrap(), 0.27895456515151547927) < 1e-8);
}

#[test]
fn non_integrable_growth_is_rejected() {
    let f = CatalogFunction::monomial(-1.2);
    assert!(matches!(laguerre_l_left(&f, 0.8, 1.0), Err(Error::Divergence(_))));
    assert!(laguerre_l_left(&CatalogFunction::monomial(1.0), -0.5, 1.0).is_err());
    assert!(laguerre_l_left(&CatalogFunction::monomial(1.0), 0.8, 0.0).is_err());
}

#[test]
fn theta_of_sampled_powers() {
    let sq = GridFunction::sample(&CatalogFunction::monomial(2.0), 512, 1.0, 2.0).unwrap();
    let t = theta_apply(&sq, 1).unwrap();
    let want = CatalogFunction::Polynomial(vec![0.0, 4.0]);
    assert!(interior_error(&t, &want).unwrap() < 1e-5);
    let lin = GridFunction::sample(&CatalogFunction::monomial(1.0), 512, 1.0, 2.0).unwrap();
    assert!(interior_error(&theta_apply(&lin, 1).unwrap(), &CatalogFunction::constant(1.0)).unwrap() < 1e-5);
}

#[test]
fn integer_order_derivatives() {
    let mesh = Mesh::new(512, 1.0, 2.0).unwrap();
    let d = laguerre_d_left(&CatalogFunction::monomial(2.0), 1.0, &mesh).unwrap();
    assert!(interior_error(&d, &CatalogFunction::Polynomial(vec![0.0, 4.0])).unwrap() < 1e-6);
    let d = laguerre_d_left(&CatalogFunction::monomial(1.0), 1.0, &mesh).unwrap();
    assert!(interior_error(&d, &CatalogFunction::constant(1.0)).unwrap() < 1e-6);

    // unit order uses θ twice: θ²E₁ = θe^{−x} = (x − 1)e^{−x}
    let mesh = Mesh::new(512, 4.0, 2.0).unwrap();
    let d = laguerre_d_right(&exp1(), 1.0, &mesh).unwrap();
    let want = |x: f64| (x - 1.0) * (-x).exp();
    for (&x, &v) in d.nodes().iter().zip(d.values()).take(d.len() - 4) {
        if x >= 4.0 / 32.0 {
            assert!((v - want(x)).abs() < 1e-6, "x = {x}");
        }
    }
    // a single θ inverts the log kernel: θE₁ = e^{−x}, so e⁻¹ at x = 1
    let op = FractionalIntegral::laguerre(Side::Right, 1.0).unwrap();
    let t = theta_of(&op.image(exp1()), &mesh, 1).unwrap();
    let at_one = t.nodes().iter().position(|&x| (x - 1.0).abs() < 1e-12).expect("x = 1 is a node");
    assert!(rel(t.values()[at_one], 1.0 / E) < 1e-6, "{}", t.values()[at_one]);
}

#[test]
fn fractional_derivative_of_a_monomial() {
    let (mu, alpha) = (2.0, 0.6);
    let mesh = Mesh::new(1024, 1.0, 2.0).unwrap();
    let d = laguerre_d_left(&CatalogFunction::monomial(mu), alpha, &mesh).unwrap();
    let c = (gamma(1.0 + mu).unwrap() / gamma(1.0 + mu - alpha).unwrap()).powi(2);
    let mut err: f64 = 0.0;
    for (&x, &v) in d.nodes().iter().zip(d.values()).skip(3).take(d.len() - 6) {
        err = err.max(rel(v, c * x.powf(mu - alpha)));
    }
    assert!(err < 1e-4, "{err}");
}

#[test]
fn right_derivative_vanishes_beyond_support() {
    let mesh = Mesh::new(512, 6.0, 2.0).unwrap();
    let d = laguerre_d_right(&CatalogFunction::bump(1.0, 2.0, 2).unwrap(), 0.6, &mesh).unwrap();
    for (&x, &v) in d.nodes().iter().zip(d.values()) {
        if x > 2.5 {
            assert_eq!(v, 0.0, "x = {x}");
        }
    }
}

#[test]
fn derivatives_invert_integrals() {
    let got = derivative_of_integral(Side::Left, &CatalogFunction::monomial(1.0), 0.6).unwrap();
    assert!(interior_error(&got, &CatalogFunction::monomial(1.0)).unwrap() < 1e-4);
    let got = derivative_of_integral(Side::Right, &exp1(), 0.7).unwrap();
    assert!(interior_error(&got, &exp1()).unwrap() < 1e-4);
}

#[test]
fn integer_composition_values() {
    let (a, b) = rl_composition_check(&CatalogFunction::monomial(1.0), 1, 1.0).unwrap();
    assert!(rel(a, 0.25) < 1e-10 && rel(b, 0.25) < 1e-10);
    let (a, b) = rl_composition_check(&CatalogFunction::monomial(0.0), 1, 1.0).unwrap();
    assert!(rel(a, 1.0) < 1e-10 && rel(b, 1.0) < 1e-10);
    let (a, b) = rl_composition_check(&CatalogFunction::monomial(2.0), 2, 1.0).unwrap();
    assert!(rel(a, 1.0 / 144.0) < 1e-10 && rel(b, 1.0 / 144.0) < 1e-10);
    assert!(rl_composition_check(&CatalogFunction::monomial(1.0), 4, 1.0).is_err());
}

#[test]
fn integration_by_parts_values() {
    // mpmath double integral ∫₃⁴ f(x) ∫₁² ln(x/u) g(u) du dx
    let f = CatalogFunction::bump(3.0, 4.0, 1).unwrap();
    let g = CatalogFunction::bump(1.0, 2.0, 1).unwrap();
    let (a, b) = integration_by_parts_check(&f, &g, 1.0).unwrap();
    assert!(rel(a, 0.31121604445652207733) < 1e-9 && rel(b, 0.31121604445652207733) < 1e-9);
    let same = CatalogFunction::bump(1.0, 2.0, 3).unwrap();
    let (a, b) = integration_by_parts_check(&same, &same, 0.8).unwrap();
    assert!(rel(a, b) < 1e-7);
    let zero = CatalogFunction::constant(0.0);
    assert_eq!(integration_by_parts_check(&same, &zero, 0.8).unwrap(), (0.0, 0.0));
}

#[test]
fn weighted_norm_bound_on_monomials() {
    // L x^μ = x^{μ+1}/(1+μ)² at α = 1, well inside the C₊ = 4 bound
    let op = FractionalIntegral::laguerre(Side::Left, 1.0).unwrap();
    let mesh = Mesh::new(1024, 1.0, 2.0).unwrap();
    for mu in [0.75, 1.0, 2.0] {
        let f = CatalogFunction::monomial(mu);
        let lhs = weighted_norm(&op.tabulate(&f, &mesh).unwrap(), -0.5, 2.0).unwrap();
        let rhs = weighted_norm(&mesh.sample(&f).unwrap(), -0.5, 2.0).unwrap();
        assert!(lhs <= 4.0 * rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monomial_eigenrelation(alpha in 0.55f64..2.5, excess in 0.05f64..3.0, x in 0.1f64..5.0) {
        let mu = alpha - 1.0 + excess;
        let got = laguerre_l_left(&CatalogFunction::monomial(mu), alpha, x).unwrap();
        prop_assert!(rel(got, monomial_image(mu, alpha, x).unwrap()) < 1e-7, "α={alpha} μ={mu} x={x}");
    }

    #[test]
    fn linearity(alpha in 0.55f64..2.0, c0 in -2.0f64..2.0, c1 in -2.0f64..2.0, x in 0.1f64..3.0) {
        let p = CatalogFunction::Polynomial(vec![c0, c1]);
        let got = laguerre_l_left(&p, alpha, x).unwrap();
        let want = c0 * monomial_image(0.0, alpha, x).unwrap() + c1 * monomial_image(1.0, alpha, x).unwrap();
        prop_assert!((got - want).abs() < 1e-9 * (c0.abs() + c1.abs() + 1.0) * want.abs().max(monomial_image(0.0, alpha, x).unwrap()));
    }

    #[test]
    fn positive_functions_have_positive_images(alpha in 0.55f64..2.0, a in 0.1f64..1.0, width in 0.1f64..1.0, x in 0.05f64..3.0) {
        let f = CatalogFunction::bump(a, a + width, 1).unwrap();
        let left = laguerre_l_left(&f, alpha, x).unwrap();
        let right = laguerre_l_right(&f, alpha, x).unwrap();
        prop_assert!(left >= 0.0 && right >= 0.0);
        prop_assert!((left > 0.0) == (x > a) && (right > 0.0) == (x < a + width));
    }

    #[test]
    fn unit_order_is_a_log_kernel(x in 0.2f64..4.0) {
        // α = 1: (L₋ f)(x) = ∫ₓ^∞ ln(u/x) e^{−u} du = E₁(x)
        let got = laguerre_l_right(&exp1(), 1.0, x).unwrap();
        let e1 = lagfrac_core::mellin::half_line_integral(|t| Ok((-t).exp() / t), (x, f64::INFINITY), 0.0, lagfrac_core::Decay::Exponential { rate: 1.0 }).unwrap();
        prop_assert!(rel(got, e1) < 1e-9);
    }
}

#[test]
fn tabulated_functions_vanish_beyond_the_mesh() {
    let g = GridFunction::sample(&exp1(), 256, 1.0, 2.0).unwrap();
    let t = CatalogFunction::Tabulated(g);
    assert_eq!(t.eval(1.5).unwrap(), 0.0);
    assert_eq!(t.support(), (0.0, 1.0));
}
