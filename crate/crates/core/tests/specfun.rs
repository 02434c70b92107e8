//! Special functions against high-precision reference values.

use std::f64::consts::PI;

use lagfrac_core::specfun::{
    cauchy_ck, gamma, gauss_2f1, gauss_series, log_case, stirling_first_kind, stirling_s, Hyp2F1Params, SERIES_SWITCH,
};
use lagfrac_core::verify::ck_by_contour;
use proptest::prelude::*;

fn rel(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

// (1/k!) dᵏ/duᵏ (Γ(u+1)/Γ(u+1−α))² at u = 0, k = 0..5, from mpmath at 40 digits
const CK_03: [f64; 6] = [
    0.59349024998438723469,
    0.76300042922742533492,
    -0.21526551687070800845,
    0.10031601096005933305,
    -0.029624127502933203845,
    -0.029715710609684122001,
];
const CK_08: [f64; 6] = [
    0.047447680181826249439,
    0.44713025843647481227,
    0.93852137908875217014,
    -0.4522011228561985966,
    0.4078772465341788551,
    -0.4130244154270680461,
];
const CK_17: [f64; 6] = [
    0.054751753822351875664,
    0.16389796561768777332,
    -0.44681826265536975487,
    -0.60362216632360045412,
    1.6441843482803813016,
    -1.4102554861695274435,
];

// Taylor coefficients of Γ(u+1)/Γ(u+1−α) at α = 6 ∓ 1e-4
const STIRLING_6M: [f64; 7] = [
    -0.011997952646957373953,
    -119.95212741474734335,
    273.96804356693161069,
    -225.03846211877981333,
    85.080321091261336611,
    -15.083376025302517005,
    1.0777000673492194951,
];
const STIRLING_6P: [f64; 7] = [
    0.012002047329317701514,
    -120.04787423701966176,
    274.03193372685054018,
    -224.96149565769770118,
    84.919637914257532325,
    -14.916590358508368318,
    0.92227043431237991576,
];

#[test]
fn squared_stirling_coefficients_match_reference() {
    for (alpha, table) in [(0.3, CK_03), (0.8, CK_08), (1.7, CK_17)] {
        for (k, &want) in table.iter().enumerate() {
            let got = cauchy_ck(alpha, k).unwrap();
            assert!((got - want).abs() < 1e-7, "c_{k}({alpha}) = {got}, want {want}");
            assert!((ck_by_contour(alpha, k).unwrap() - want).abs() < 1e-10);
        }
    }
}

#[test]
fn leading_squared_stirling_coefficient() {
    assert!(rel(cauchy_ck(0.5, 0).unwrap(), 1.0 / PI) < 1e-13);
    for n in 1..=4 {
        assert_eq!(cauchy_ck(n as f64, 0).unwrap(), 0.0);
    }
}

#[test]
fn stirling_functions_near_integers() {
    for (alpha, table) in [(6.0 - 1e-4, STIRLING_6M), (6.0 + 1e-4, STIRLING_6P)] {
        for (k, &want) in table.iter().enumerate() {
            let got = stirling_s(alpha, k).unwrap();
            assert!((got - want).abs() < 1e-9 * want.abs().max(1.0), "s({alpha}, {k}) = {got}, want {want}");
        }
    }
}

#[test]
fn classical_stirling_numbers() {
    let rows: [&[f64]; 6] = [
        &[0.0, 1.0],
        &[0.0, -1.0, 1.0],
        &[0.0, 2.0, -3.0, 1.0],
        &[0.0, -6.0, 11.0, -6.0, 1.0],
        &[0.0, 24.0, -50.0, 35.0, -10.0, 1.0],
        &[0.0, -120.0, 274.0, -225.0, 85.0, -15.0, 1.0],
    ];
    for (i, row) in rows.iter().enumerate() {
        let n = i as u32 + 1;
        for (k, &want) in row.iter().enumerate() {
            assert_eq!(stirling_first_kind(n, k as u32).unwrap(), want);
            assert_eq!(stirling_s(n as f64, k).unwrap(), want);
        }
    }
}

#[test]
fn hypergeometric_reference_values() {
    let v = gauss_2f1(Hyp2F1Params::new(0.75, 0.75, 1.5, -50.0)).unwrap();
    assert!(rel(v, 0.15453008337047371954) < 1e-12, "{v}");
    let v = gauss_2f1(Hyp2F1Params::new(1.25, 1.25, 2.5, -3.0)).unwrap();
    assert!(rel(v, 0.37835583420739959723) < 1e-12, "{v}");
}

#[test]
fn hypergeometric_logarithm() {
    let mut z = -100.0;
    while z <= -0.01 {
        let v = gauss_2f1(Hyp2F1Params::new(1.0, 1.0, 2.0, z)).unwrap();
        assert!(rel(v * z, -(1.0 - z).ln()) < 1e-12, "z = {z}");
        z *= 0.93;
    }
}

#[test]
fn hypergeometric_branches_agree_at_switch() {
    for a in [0.6, 0.75, 1.25] {
        let w = SERIES_SWITCH;
        let series = gauss_series(a, a, 2.0 * a, w).unwrap();
        let log = log_case(a, a, w, 1.0 - w).unwrap();
        assert!(rel(series, log) < 1e-10, "a = {a}");
    }
}

#[test]
fn gamma_rejects_poles() {
    for z in [0.0, -1.0, -7.0] {
        assert!(gamma(z).is_err());
    }
}

proptest! {
    #[test]
    fn gamma_reflection(z in -4.99f64..4.99) {
        prop_assume!((z - z.round()).abs() > 1e-3);
        let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * (PI * z).sin();
        prop_assert!(rel(lhs, PI) < 1e-12, "z = {z}: {lhs}");
    }

    #[test]
    fn gamma_recurrence(x in 0.1f64..40.0) {
        prop_assert!(rel(gamma(x + 1.0).unwrap(), x * gamma(x).unwrap()) < 1e-13);
    }

    #[test]
    fn hypergeometric_pfaff_symmetry(a in 0.55f64..2.0, z in -30.0f64..0.7) {
        // ₂F₁(a, a; 2a; z) = (1−z)^{−a} ₂F₁(a, a; 2a; z/(z−1))
        let direct = gauss_2f1(Hyp2F1Params::new(a, a, 2.0 * a, z)).unwrap();
        let mapped = (1.0 - z).powf(-a) * gauss_2f1(Hyp2F1Params::new(a, a, 2.0 * a, z / (z - 1.0))).unwrap();
        prop_assert!(rel(direct, mapped) < 1e-11, "a = {a}, z = {z}");
    }
}
