#![allow(clippy::excessive_precision, clippy::type_complexity)]

use num_complex::Complex64;
use proptest::prelude::*;
use raux_core::special::*;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// mpmath at 30 digits
const LOG_GAMMA: &[((f64, f64), (f64, f64))] = &[
    ((0.3, 0.2), (0.8894083505732667354, -0.62026100688248293096)),
    ((-2.5, 1e-3), (-0.056248486112882071756, -9.4236748041107004641)),
    ((-7.3, 4.1), (-19.146838884439437866, -15.905387270574618437)),
    ((-7.3, -4.1), (-19.146838884439437866, 15.905387270574618437)),
    ((3.0, -40.0), (-52.689155060822636631, -111.4051324154599655)),
    ((1e5, 3e5), (791702.65625685960284, 3624169.3561568646221)),
    ((-1e4, 10.0), (-82138.500886534666917, -31325.393426846799279)),
    ((0.25, 500.0), (-786.03287685759916528, 2606.9113709627316958)),
    ((-0.5, 200.0), (-318.5386473173129222, 858.09038532165790785)),
];

const CHI: &[((f64, f64), (f64, f64))] = &[
    ((0.3, 2.0), (0.27193444413311717103, -0.74496186778554561993)),
    ((-1.0, 0.0), (-0.050660591821168885722, 0.0)),
    ((20.0, -7.0), (-9.4442442343073936992e-7, 4.2369010088316759054e-6)),
    ((-33.3, 12.0), (-87843824228851724.408, 178599452330646754.35)),
];

const THETA: &[(f64, f64)] = &[
    (1.0, -1.767547952812290388302),
    (14.1347, -1.728680435965396013458),
    (100.0, 87.97216523178721962548),
    (1000.0, 2034.546428038031608703),
    (5000.0, 14197.89761760219780997),
];

const ZETA: &[((f64, f64), (f64, f64))] = &[
    ((0.5, 100.0), (2.6926198856813240905, -0.020386029602598161771)),
    ((0.5, 1000.0), (0.35633436719439605507, 0.93199783123299366512)),
    ((2.0, 50.0), (0.77395093315669076018, 0.12594471582633419672)),
    ((-3.5, 7.0), (-0.41333307121788821695, 1.8418264619701228248)),
    ((0.5, 5000.0), (0.40684271363543255898, -0.69376415919808510245)),
    ((-20.5, 3.0), (2011.7042743440201249, -6579.7565382521518323)),
    ((1.5, -30.0), (0.69085573152281282784, 0.36714274737472117117)),
];

#[test]
fn log_gamma_reference() {
    for &((a, b), (x, y)) in LOG_GAMMA {
        let got = gamma_log(c(a, b)).unwrap();
        let want = c(x, y);
        assert!((got - want).norm() <= 1e-13 * want.norm().max(1.0), "{a}+{b}i: {got} vs {want}");
    }
}

#[test]
fn log_gamma_on_the_negative_axis_is_the_limit_from_above() {
    let on = gamma_log(c(-2.5, 0.0)).unwrap();
    let above = gamma_log(c(-2.5, 1e-12)).unwrap();
    assert!((on - above).norm() < 1e-10);
    assert!((on.im + 3.0 * PI).abs() < 1e-14);
}

#[test]
fn chi_reference() {
    for &((a, b), (x, y)) in CHI {
        let got = chi(c(a, b)).unwrap().to_complex();
        let want = c(x, y);
        assert!((got - want).norm() <= 1e-12 * want.norm(), "{a}+{b}i: {got} vs {want}");
    }
    let s = c(0.3, 2.0);
    let prod = chi(s).unwrap() * chi(1.0 - s).unwrap();
    assert!((prod.to_complex() - 1.0).norm() < 1e-12);
}

#[test]
fn theta_reference_and_asymptotic() {
    for &(t, want) in THETA {
        assert!((theta_rs(t) - want).abs() <= 1e-12 * want.abs().max(1.0), "t={t}");
    }
    assert_eq!(theta_rs(0.0), 0.0);
    assert_eq!(theta_rs(-5.0), -theta_rs(5.0));
    let t = 1000.0;
    let approx = t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0;
    assert!((theta_rs(t) - approx).abs() < 1e-4);
}

#[test]
fn zeta_reference() {
    for &((a, b), (x, y)) in ZETA {
        let got = zeta_em(c(a, b)).unwrap();
        let want = c(x, y);
        assert!((got - want).norm() <= 1e-11 * want.norm(), "{a}+{b}i: {got} vs {want}");
    }
    assert!(zeta_em(c(1.0, 0.0)).is_err());
}

#[test]
fn tail_keeps_relative_accuracy() {
    // Σ_{n>3} n^-40 is dominated by 4^-40
    let t = zeta_tail(c(40.0, 0.0), 3).unwrap();
    let want = (1..200).map(|n| ((n + 3) as f64).powi(-40)).sum::<f64>();
    assert!((t.to_complex().re / want - 1.0).abs() < 1e-13);
    let w = c(0.2, 30.0);
    let direct = zeta_em(w).unwrap() - (1..=5).map(|n| (-w * (n as f64).ln()).exp()).sum::<Complex64>();
    assert!((zeta_tail(w, 5).unwrap().to_complex() - direct).norm() < 1e-12);
}

proptest! {
    #[test]
    fn gamma_recurrence(re in -30.0f64..30.0, im in 0.5f64..60.0) {
        let z = c(re, im);
        let lhs = gamma_log(z + 1.0).unwrap() - gamma_log(z).unwrap() - z.ln();
        // equal up to a multiple of 2πi
        let k = (lhs.im / (2.0 * PI)).round();
        prop_assert!(lhs.re.abs() < 1e-11 * (1.0 + z.norm()));
        prop_assert!((lhs.im - 2.0 * PI * k).abs() < 1e-10 * (1.0 + z.norm()));
    }

    #[test]
    fn chi_reflection(re in -20.0f64..20.0, im in 1.0f64..80.0) {
        let s = c(re, im);
        let p = chi(s).unwrap() * chi(1.0 - s).unwrap();
        prop_assert!(p.log_mod.abs() < 1e-10);
        prop_assert!(raux_core::scaled::wrap_phase(p.phase).abs() < 1e-10);
    }
}
