#![allow(clippy::excessive_precision)]

use num_complex::Complex64;
use raux_core::oracle::*;
use raux_core::ScaledComplex;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn the_two_quadratures_agree_with_mpmath() {
    let refs = [
        (0.5, 10.0, 0.79399947737103199941, 0.23101216503772365948),
        (10.0, 5.0, 1.0415344805059220514, 0.014184526914776832225),
        (3.0, -20.0, -20302187568.10129292, 1201246863.3934409529),
        (-5.0, -12.0, 6681470.0123633412909, 2249420.539446846004),
    ];
    for (x, y, re, im) in refs {
        let want = ScaledComplex::from_complex(c(re, im));
        let o = r_quad_origin(c(x, y)).unwrap();
        let s = r_quad_saddle(c(x, y)).unwrap();
        assert!(o.rel_diff(&want) < 1e-10, "origin at {x}+{y}i");
        assert!(s.rel_diff(&want) < 1e-10, "saddle at {x}+{y}i");
    }
}

#[test]
fn origin_path_reaches_the_far_saddle() {
    // the second saddle sits at |x| ≈ 2.9; stopping the scan early loses a factor e^{50π}
    let got = r_quad_origin_unchecked(c(-200.0, -50.0)).unwrap().value;
    assert!(got.rel_diff(&ScaledComplex::new(346.220798147985, 0.865773131860033)) < 1e-9);
}

#[test]
fn ill_conditioned_origin_integral_is_refused() {
    assert!(r_quad_origin(c(-5.0, 300.0)).is_err());
    assert!(r_quad_origin_unchecked(c(0.5, 1e3)).is_err());
}

#[test]
fn real_axis_values() {
    let r0 = r_quad_origin(c(0.0, 0.0)).unwrap().to_complex();
    assert!((r0 - c(-0.5, 0.0)).norm() < 1e-13);
    let r2 = r_quad_origin(c(2.0, 0.0)).unwrap().to_complex();
    assert!((r2 - c(-0.82246703342411321824, -std::f64::consts::FRAC_PI_2)).norm() < 1e-12);
}

#[test]
fn inequality_scans_hold() {
    let rep = inequality_scans();
    assert!(rep.passed);
    assert!(rep.f_max.0 < 0.0);
    assert!(rep.du_min.0 > 0.0);
}
