#![allow(clippy::excessive_precision)]

use num_complex::Complex64;
use proptest::prelude::*;
use raux_core::calibration::Calibration;
use raux_core::expansion::frames::{left_frame, saddle_frame};
use raux_core::expansion::regions::{classify_region, phi_of_r, phi_series, RegionTag};
use raux_core::expansion::*;
use raux_core::oracle::{r_quad_origin, r_quad_saddle};
use raux_core::ScaledComplex;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// mpmath, 30 digits, by direct integration along the origin path
const REFS: [(f64, f64, f64, f64); 10] = [
    (0.5, 10.0, 0.79399947737103199941, 0.23101216503772365948),
    (2.0, 0.0, -0.82246703342411321824, -PI / 2.0),
    (0.5, 30.0, 0.9408637535391796264, -0.49877905654109427366),
    (10.0, 5.0, 1.0415344805059220514, 0.014184526914776832225),
    (-30.0, 3.0, -18.049766433855925688, 307.79547883368009652),
    (3.0, -20.0, -20302187568.10129292, 1201246863.3934409529),
    (-5.0, -12.0, 6681470.0123633412909, 2249420.539446846004),
    (0.5, -8.0, 1604.4271772019597303, 5530.5061388668976879),
    (1.5, 0.7, -0.39092843906581212297, -0.93946418112989613924),
    (-20.5, 1.0, 0.055981072829491909478, 0.18185582601289888001),
];

#[test]
fn auto_evaluation_matches_reference_values() {
    let cal = Calibration::default();
    for (x, y, re, im) in REFS {
        let got = eval_auto(c(x, y), 1e-10, &cal).unwrap().value;
        let want = ScaledComplex::from_complex(c(re, im));
        assert!(got.rel_diff(&want) < 1e-9, "{x}+{y}i: {:?}", got.to_complex());
    }
}

#[test]
fn auto_evaluation_beyond_double_range_in_modulus() {
    // (log|R|, arg R) from mpmath
    let refs = [
        (-200.0, -50.0, 346.220798147985, 0.865773131860033),
        (-200.0, -10.0, 256.272699646407, 1.66702692928063),
        (-100.0, -3.0, 86.0511227072437, 0.737050807228298),
        (-200.0, -100.0, 453.342805522671, -0.121676734817745),
    ];
    let cal = Calibration::default();
    for (x, y, lm, ph) in refs {
        let got = eval_auto(c(x, y), 1e-10, &cal).unwrap().value;
        assert!(got.rel_diff(&ScaledComplex::new(lm, ph)) < 1e-8, "{x}+{y}i: {got:?}");
    }
}

#[test]
fn frame_examples() {
    let f = saddle_frame(c(0.0, 50.0)).unwrap();
    assert!((f.xi - c(5.0 / PI.sqrt(), 0.0)).norm() < 1e-14);
    assert_eq!(f.ell, 2);
    assert!((f.q.re - 0.64190).abs() < 1e-5 && f.q.im.abs() < 1e-14);
    let f = saddle_frame(c(8.0 * PI, 0.0)).unwrap();
    assert!((f.xi - 2.0 * Complex64::from_polar(1.0, -PI / 4.0)).norm() < 1e-14);
    assert_eq!(f.ell, 2);
    assert!(saddle_frame(c(-3.0, 0.0)).is_err());

    // the left frame at s is the conjugate of the right frame at 1 − conj(s)
    let l = left_frame(c(1.0, -50.0)).unwrap();
    let r = saddle_frame(c(0.0, -50.0)).unwrap();
    assert!((l.eta - r.xi.conj()).norm() < 1e-13);
    assert!((l.p - r.q.conj()).norm() < 1e-13);
    let l = left_frame(c(1.0, 8.0 * PI)).unwrap();
    assert!((l.eta - c(2.0, 0.0)).norm() < 1e-14);
    assert_eq!(l.m, 2);
    let l = left_frame(c(1.0 - 8.0 * PI, 0.0)).unwrap();
    assert!((l.eta - 2.0 * Complex64::from_polar(1.0, PI / 4.0)).norm() < 1e-14);
    assert!(left_frame(c(4.0, 0.0)).is_err());
}

#[test]
fn region_examples() {
    assert_eq!(classify_region(c(100.0, 100.0), 0.5).tag, RegionTag::L);
    assert_eq!(classify_region(c(-500.0, -500.0), 0.5).tag, RegionTag::M);
    assert_eq!(classify_region(c(-1e4, 10.0), 0.5).tag, RegionTag::N);
}

#[test]
fn phi_root_and_series() {
    for r in [1e3, 1e6, 1e9] {
        let phi = phi_of_r(r).unwrap();
        assert!(phi > 0.0 && phi < PI / 4.0);
        assert!(regions::u_function(r, phi).abs() < 1e-12);
    }
    let r = 1e9f64;
    let gap = (phi_of_r(r).unwrap() - phi_series(r).unwrap()).abs();
    assert!(gap < 1.0 / r.ln().powi(4));
    assert!(phi_of_r(2.0).is_err());
}

#[test]
fn right_expansion_on_the_critical_line() {
    let s = c(0.5, 200.0);
    let got = expand_right(s, 3).unwrap();
    let want = r_quad_saddle(s).unwrap();
    assert!(got.value.rel_diff(&want) < 1e-6);
    let coarse = expand_right(c(10.0, 5.0), 2).unwrap().value.to_complex();
    assert!((coarse - 1.0).norm() <= 0.75);
}

#[test]
fn left_expansion_against_the_origin_integral() {
    let s = c(-30.0, 3.0);
    let got = expand_left(s, 10).unwrap().value;
    let want = r_quad_origin(s).unwrap();
    assert!(got.rel_diff(&want) < 1e-8, "{:?} vs {:?}", got.to_complex(), want.to_complex());
}

#[test]
fn trivial_zeros_are_exact() {
    for n in 5..=10 {
        let v = expand_left(c(-2.0 * n as f64, 0.0), 6).unwrap().value;
        assert!(v.is_zero(), "-{}: {:?}", 2 * n, v);
    }
}

#[test]
fn unevaluable_points_are_reported() {
    assert!(expand_right(c(-50.0, 0.0), 3).is_err());
    assert!(expand_right(c(0.5, 200.0), 0).is_err() || expand_right(c(0.5, 200.0), 10_000).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn both_expansions_agree_where_both_apply(t in 200.0f64..2000.0, x in -8.0f64..8.0) {
        let s = c(x, t);
        let r = expand_right(s, 6).unwrap();
        let l = expand_left(s, 6).unwrap();
        let tol = 10.0 * (r.err_estimate + l.err_estimate) + 1e-10;
        prop_assert!(r.value.rel_diff(&l.value) < tol, "{} vs {}", r.value.rel_diff(&l.value), tol);
    }
}
