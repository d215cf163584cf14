#![allow(clippy::excessive_precision, clippy::type_complexity)]

use num_complex::Complex64;
use proptest::prelude::*;
use raux_core::gfunc::*;
use raux_core::oracle::d0_quad;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// Taylor coefficients G^(n)(q)/n! from 60-digit evaluation of the closed form
// (Cauchy sums on a circle at the half-odd points).
const REF: &[(f64, f64, &[(usize, f64, f64)])] = &[
    (
        0.3,
        -0.2,
        &[
            (0, -0.35648336641330989, -0.57586834886329894),
            (1, -0.13448295667458423, -0.32882807699991132),
            (2, 0.094242248558806453, -0.59028022034827746),
            (3, 0.16726074676772908, -0.27498296188034376),
            (9, -0.012011727479170048, 0.011816506627272436),
            (20, -1.2173775439944882e-6, 5.7884280891147982e-8),
            (30, -1.5805310910421867e-11, -6.7497169852592884e-12),
            (48, -7.9842203533143739e-22, -2.9168962262135541e-22),
        ],
    ),
    (
        0.5,
        0.0,
        &[
            (0, -0.27059805007309849, -0.65328148243818826),
            (1, 0.19134171618254489, -0.46193976625564338),
            (2, 0.39177632479390131, -0.50539485933559229),
            (3, 0.44149277085689704, -0.039685682115367077),
            (9, -0.017621826164554361, -0.012622142722267452),
            (20, 7.0525167912403389e-7, -1.3010094861302736e-6),
            (30, 2.0919974917270577e-11, -2.6849752572958403e-12),
            (48, 8.981650788058468e-22, 5.3882685054143688e-22),
        ],
    ),
    (
        0.5003,
        0.0002,
        &[
            (0, -0.27044817937094625, -0.65338177426074413),
            (1, 0.19177902039989849, -0.46208613960269489),
            (3, 0.44178199772205814, -0.039298208382353775),
            (20, 7.0916180418831204e-7, -1.300110615741171e-6),
            (48, 8.9684469620468184e-22, 5.4308582915298645e-22),
        ],
    ),
    (
        -7.283199846221439,
        -6.858935777509511,
        &[
            (0, -2.1999942765090202e-5, 1.981719186495707e-5),
            (1, 3.112877219521779e-5, 3.455742924482315e-5),
            (3, -1.2801194492121253e-5, -1.421117295811026e-5),
            (9, 3.1795001282759771e-9, 3.5296563961447729e-9),
            (20, 7.8052316838761676e-20, 9.236961394582398e-20),
            (30, -7.619564658847554e-27, -1.2139923227391624e-27),
            (48, 2.3351450466082755e-42, 3.6697897774677685e-42),
        ],
    ),
    (
        -0.7,
        0.2,
        &[
            (0, -0.37532076481465762, -0.82256683720237793),
            (1, -0.11923094641756624, 0.96180782663648886),
            (2, 0.70472715579012794, -1.0082275053970726),
            (9, 0.080978340987491283, 0.04071238855394884),
            (30, 2.93390385837102e-10, -8.4009564525263023e-11),
            (48, 2.8915083094142009e-20, 1.1834148162300491e-20),
        ],
    ),
    (
        1.5,
        0.0,
        &[
            (0, 1.035964914803278, -1.1944775825843852),
            (1, 3.0937948683219759, 0.74029569351304916),
            (9, 0.22353690043079347, 0.97464782406189929),
            (30, 1.8439499792728873e-8, 1.050694227966629e-8),
            (48, -6.3588901652683484e-18, 9.5993398485924786e-19),
        ],
    ),
];

#[test]
fn jet_coefficients_match_high_precision_reference() {
    for &(re, im, rows) in REF {
        let q = c(re, im);
        let jet = g_jet(q, 48);
        for &(n, a, b) in rows {
            let want = c(a, b);
            let got = jet.coeffs()[n];
            let rel = (got - want).norm() / want.norm();
            assert!(rel < 1e-9, "q={q} n={n} got {got} want {want} rel {rel:e}");
        }
        let g0 = g_eval(q);
        let want = c(rows[0].1, rows[0].2);
        assert!((g0 - want).norm() / want.norm() < 1e-13, "g_eval q={q}: {g0} vs {want}");
    }
}

#[test]
fn removable_point_value_is_the_limit() {
    let at = g_eval(c(0.5, 0.0));
    let near = g_eval(c(0.5 + 2e-3, 0.0));
    let slope = g_jet(c(0.5, 0.0), 1).coeffs()[1];
    assert!((near - at - slope * 2e-3).norm() < 1e-5);
    let num =
        Complex64::from_polar(1.0, PI / 8.0) - 2f64.sqrt() * Complex64::from_polar(1.0, PI / 8.0) * (PI / 4.0).cos();
    assert!(num.norm() < 1e-15);
}

#[test]
fn derivative_matches_finite_difference() {
    let h = 1e-5;
    let fd = (g_eval(c(h, 0.0)) - g_eval(c(-h, 0.0))) / (2.0 * h);
    let d1 = g_jet(c(0.0, 0.0), 2).derivative(1);
    assert!((fd - d1).norm() < 1e-8);
    let q = c(0.3, 0.1);
    let fd = (g_eval(q + h) - g_eval(q - h)) / (2.0 * h);
    assert!((fd - g_jet(q, 3).derivative(1)).norm() < 1e-8);
}

fn cauchy_coefficient(q: Complex64, k: usize, r: f64, m: usize) -> Complex64 {
    let mut acc = c(0.0, 0.0);
    for j in 0..m {
        let w = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64);
        acc += g_eval(q + w * r) * w.powi(-(k as i32));
    }
    acc / (m as f64 * r.powi(k as i32))
}

#[test]
fn second_derivative_matches_cauchy_integral() {
    let g2 = g_jet(c(0.0, 0.0), 4).derivative(2);
    let oracle = cauchy_coefficient(c(0.0, 0.0), 2, 1.0, 256) * 2.0;
    assert!((g2 - oracle).norm() < 1e-10);
    let q = c(0.3, 0.0);
    let jet = g_jet(q, 8);
    for k in 0..=8 {
        let oracle = cauchy_coefficient(q, k, 1.3, 256);
        assert!((jet.coeffs()[k] - oracle).norm() < 1e-9, "k={k}");
    }
}

#[test]
fn asymptotic_form() {
    let q = Complex64::from_polar(10.0, PI / 4.0);
    let r = g_eval(q) / g_asymptotic(q).unwrap();
    assert!((r - 1.0).norm() < 1e-9);
    let q = Complex64::from_polar(3.0, PI / 4.0);
    let err3 = (g_eval(q) / g_asymptotic(q).unwrap() - 1.0).norm();
    assert!(err3 < 10.0 * (-3.0 * PI / 2f64.sqrt()).exp(), "{err3}");
    // rate −π/√2 per unit μ
    let err = |mu: f64| {
        let q = from_strip(mu, 0.2);
        (g_eval(q) / g_asymptotic(q).unwrap() - 1.0).norm().ln()
    };
    let (e2, e4) = (err(2.0), err(4.0));
    let rate = (e4 - e2) / 2.0;
    assert!((rate + PI / 2f64.sqrt()).abs() < 0.3, "rate {rate}");
    assert!((e4 / e2 - 2.0).abs() < 0.5, "{e2} {e4}");
}

#[test]
fn certificate() {
    let cert = nonvanishing_certificate(0.01).unwrap();
    assert_eq!(cert.winding, 0);
    assert!(cert.min_abs > 0.05, "{cert:?}");
    assert!(cert.tail_ok);
    assert!(nonvanishing_certificate(0.1).is_err());
}

#[test]
fn modulus_bounds_on_strip() {
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for i in 0..=240 {
        let mu = -12.0 + 0.1 * i as f64;
        for j in 0..=10 {
            let nu = -0.7 + 0.14 * j as f64;
            let r = g_eval(from_strip(mu, nu)).norm() * (PI * mu.abs() / (2.0 * 2f64.sqrt())).exp();
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    assert!(lo > 0.0 && hi / lo < 100.0, "c0={lo} C0={hi}");
}

#[test]
fn matches_integral_representation() {
    let a = 1.0 / 2f64.sqrt();
    let mut pts = vec![c(0.5, 0.0), c(0.0, 0.0), c(-0.5, 0.0)];
    for i in 0..17 {
        let mu = -3.0 + 6.0 * i as f64 / 16.0;
        let nu = a * ((i as f64 * 1.7).sin());
        pts.push(from_strip(mu, nu));
    }
    for q in pts {
        let g = g_eval(q);
        let d0 = d0_quad(q).unwrap();
        assert!((g - d0).norm() / g.norm() < 1e-10, "q={q} {g} {d0}");
    }
}

proptest! {
    #[test]
    fn even(mu in -2.0f64..2.0, nu in -1.4f64..1.4) {
        let q = from_strip(mu, nu);
        let (a, b) = (g_eval(q), g_eval(-q));
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn strip_round_trip(re in -50.0f64..50.0, im in -50.0f64..50.0) {
        let q = c(re, im);
        let s = strip_coords(q);
        prop_assert!((from_strip(s.mu, s.nu) - q).norm() < 1e-13 * q.norm().max(1.0));
    }
}
