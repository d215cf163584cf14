//! The first-term function G(q) = (e^(πiq²/2) − √2 e^(πi/8) cos(πq/2)) / cos(πq).
//!
//! G is even and entire; the zeros of cos(πq) at half-odd integers are
//! cancelled by the numerator.

use crate::contour::{winding_number, WindingOptions};
use crate::jets::Jet;
use crate::{c, Error, Result, PI, SQRT_2};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Distance to a half-odd integer below which the removable quotient is
/// evaluated through a jet at that integer.
pub const NEAR_HALF: f64 = 1e-3;
const RECENTER_EXTRA: usize = 10;
/// Below this imaginary part (after reflecting to Im q ≤ 0) the poles of
/// 1/cos(πq) carry residues of size e^(2π Im q) and direct series division is safe.
const DIRECT_BELOW: f64 = -3.0;
const CAUCHY_RADII: [f64; 5] = [0.5, 1.0, 1.6, 2.3, 3.0];
const CAUCHY_NODES: usize = 128;

/// Rotated coordinates: q = (mu + i·nu)·e^(iπ/4).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripPoint {
    pub q: Complex64,
    pub mu: f64,
    pub nu: f64,
}

pub fn strip_coords(q: Complex64) -> StripPoint {
    StripPoint { q, mu: (q.re + q.im) / SQRT_2, nu: (q.im - q.re) / SQRT_2 }
}

pub fn from_strip(mu: f64, nu: f64) -> Complex64 {
    c(mu, nu) * c(1.0, 1.0) / SQRT_2
}

fn e_i_pi_8() -> Complex64 {
    Complex64::from_polar(1.0, PI / 8.0)
}

fn nearest_half_odd(q: Complex64) -> f64 {
    (q.re - 0.5).round() + 0.5
}

/// Jet of e^(c0 + c1·h).
fn exp_linear(c0: Complex64, c1: Complex64, order: usize) -> Jet {
    let mut v = Vec::with_capacity(order + 1);
    let mut t = c0.exp();
    v.push(t);
    for k in 1..=order {
        t = t * c1 / k as f64;
        v.push(t);
    }
    Jet::new(v)
}

/// Numerator and denominator of the stable form, valid for Im q ≤ 0:
/// G = [2e^(πiq²/2 − iπq) − √2 e^(iπ/8) e^(−iπq/2)(1 + v)] / (1 + v²), v = e^(−iπq).
fn num_den_jets(q: Complex64, order: usize) -> (Jet, Jet) {
    let i = c(0.0, 1.0);
    let mut quad = Jet::constant(i * PI * q * q / 2.0 - i * PI * q, order);
    if order >= 1 {
        quad.coeffs_mut()[1] = i * PI * q - i * PI;
    }
    if order >= 2 {
        quad.coeffs_mut()[2] = i * PI / 2.0;
    }
    let a = quad.exp().scale(c(2.0, 0.0));
    let b = exp_linear(-i * PI * q / 2.0, -i * PI / 2.0, order);
    let v = exp_linear(-i * PI * q, -i * PI, order);
    let v2 = exp_linear(-2.0 * i * PI * q, -2.0 * i * PI, order);
    let mut one_v = v;
    one_v.coeffs_mut()[0] += 1.0;
    let bv = b.try_mul(&one_v).expect("same order").scale(-SQRT_2 * e_i_pi_8());
    let num = a.try_add(&bv).expect("same order");
    let mut den = v2;
    den.coeffs_mut()[0] += 1.0;
    (num, den)
}

/// Jet at a half-odd integer, where numerator and denominator vanish.
fn removable_jet(center: f64, order: usize) -> Jet {
    let (mut num, mut den) = num_den_jets(c(center, 0.0), order + 1);
    num.coeffs_mut()[0] = c(0.0, 0.0);
    den.coeffs_mut()[0] = c(0.0, 0.0);
    num.try_div(&den).expect("removable zero of order one")
}

fn lower_half(q: Complex64) -> Complex64 {
    if q.im > 0.0 || (q.im == 0.0 && q.re < 0.0) {
        -q
    } else {
        q
    }
}

/// G(q).
pub fn g_eval(q: Complex64) -> Complex64 {
    let q = lower_half(q);
    let center = nearest_half_odd(q);
    let delta = q - center;
    if delta.norm() < NEAR_HALF {
        return removable_jet(center, RECENTER_EXTRA).eval(delta);
    }
    let (num, den) = num_den_jets(q, 0);
    num.coeffs()[0] / den.coeffs()[0]
}

fn reflect_jet(j: Jet) -> Jet {
    let mut j = j;
    for (k, a) in j.coeffs_mut().iter_mut().enumerate() {
        if k % 2 == 1 {
            *a = -*a;
        }
    }
    j
}

/// Taylor coefficients G^(k)(q)/k! for k ≤ n.
pub fn g_jet(q: Complex64, n: usize) -> Jet {
    if n == 0 {
        return Jet::constant(g_eval(q), 0);
    }
    let lq = lower_half(q);
    let jet = if lq.im < DIRECT_BELOW {
        let (num, den) = num_den_jets(lq, n);
        num.try_div(&den).expect("denominator bounded away from zero")
    } else {
        cauchy_jet(lq, n)
    };
    if lq == q {
        jet
    } else {
        reflect_jet(jet)
    }
}

/// Coefficients from samples on several circles; each coefficient is taken
/// from the radius with the smallest rounding estimate max|G|/r^k.
fn cauchy_jet(q: Complex64, n: usize) -> Jet {
    let m = CAUCHY_NODES;
    let roots: Vec<Complex64> = (0..m).map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64)).collect();
    let mut best: Vec<(f64, Complex64)> = vec![(f64::INFINITY, c(0.0, 0.0)); n + 1];
    for &r in &CAUCHY_RADII {
        let samples: Vec<Complex64> = roots.iter().map(|w| g_eval(q + w * r)).collect();
        let peak = samples.iter().map(|s| s.norm()).fold(0.0, f64::max);
        let mut rk = 1.0;
        for (k, slot) in best.iter_mut().enumerate() {
            let est = peak / rk;
            if est < slot.0 {
                let mut acc = c(0.0, 0.0);
                for (j, s) in samples.iter().enumerate() {
                    acc += s * roots[(j * k) % m].conj();
                }
                *slot = (est, acc / (m as f64 * rk));
            }
            rk *= r;
        }
    }
    Jet::new(best.into_iter().map(|(_, v)| v).collect())
}

/// Leading asymptotic term −√2 e^(πi/8) exp(−π/(2√2)·(μ + ν − i(μ − ν))), for μ > 0.
pub fn g_asymptotic(q: Complex64) -> Result<Complex64> {
    let sp = strip_coords(q);
    if sp.mu <= 0.0 {
        return Err(Error::Precondition(format!("asymptotic form needs mu > 0, got {}", sp.mu)));
    }
    let w = c(sp.mu + sp.nu, -(sp.mu - sp.nu)) * (-PI / (2.0 * SQRT_2));
    Ok(-SQRT_2 * e_i_pi_8() * w.exp())
}

/// Lower bound for |G| on B₁ once |μ| ≥ 2:
/// sinh(πμ/(2√2) − π/4)/√2 − e^(π/4) e^(−πμ²/2).
pub fn tail_bound(mu: f64) -> f64 {
    (PI * mu / (2.0 * SQRT_2) - PI / 4.0).sinh() / SQRT_2 - (PI / 4.0).exp() * (-PI * mu * mu / 2.0).exp()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    /// Winding number of G around the border of |μ| ≤ 2, |ν| ≤ 1/√2.
    pub winding: i64,
    /// Accumulated phase divided by 2π before rounding.
    pub winding_raw: f64,
    pub boundary_evaluations: usize,
    pub min_abs: f64,
    pub min_at: Complex64,
    pub grid_points: usize,
    /// The tail bound is positive and increasing on μ ∈ [2, 10].
    pub tail_ok: bool,
}

pub fn nonvanishing_certificate(grid_step: f64) -> Result<Certificate> {
    if !(grid_step > 0.0 && grid_step <= 0.01) {
        return Err(Error::Precondition(format!("grid step {grid_step} must lie in (0, 0.01]")));
    }
    let a = 1.0 / SQRT_2;
    let vertices = [from_strip(-2.0, -a), from_strip(2.0, -a), from_strip(2.0, a), from_strip(-2.0, a)];
    let opts = WindingOptions { initial_step: grid_step, min_step: 1e-9, max_increment: PI / 2.0 };
    let w = winding_number(&vertices, |q| Ok(g_eval(q).arg()), &opts)?;

    let n_mu = (4.0 / grid_step).round() as usize;
    let n_nu = (2.0 * a / grid_step).ceil() as usize;
    let (min_abs, min_at) = (0..=n_mu)
        .into_par_iter()
        .map(|i| {
            let mu = -2.0 + 4.0 * i as f64 / n_mu as f64;
            (0..=n_nu)
                .map(|j| {
                    let nu = -a + 2.0 * a * j as f64 / n_nu as f64;
                    let q = from_strip(mu, nu);
                    (g_eval(q).norm(), q)
                })
                .fold((f64::INFINITY, c(0.0, 0.0)), |x, y| if y.0 < x.0 { y } else { x })
        })
        .reduce(|| (f64::INFINITY, c(0.0, 0.0)), |x, y| if y.0 < x.0 { y } else { x });

    let samples: Vec<f64> = (0..=800).map(|i| tail_bound(2.0 + 8.0 * i as f64 / 800.0)).collect();
    let tail_ok = samples[0] > 0.0 && samples.windows(2).all(|p| p[1] > p[0]);
    Ok(Certificate {
        winding: w.winding,
        winding_raw: w.total_phase / (2.0 * PI),
        boundary_evaluations: w.evaluations,
        min_abs,
        min_at,
        grid_points: (n_mu + 1) * (n_nu + 1),
        tail_ok,
    })
}

/// One sample of the image of the parallelogram border.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BorderPoint {
    pub mu: f64,
    pub nu: f64,
    pub g: Complex64,
}

/// The image under G of the border of |μ| ≤ mu_max, |ν| ≤ 1/√2, traversed counter-clockwise.
pub fn border_image(mu_max: f64, step: f64) -> Vec<BorderPoint> {
    let a = 1.0 / SQRT_2;
    let corners = [(-mu_max, -a), (mu_max, -a), (mu_max, a), (-mu_max, a), (-mu_max, -a)];
    let mut out = Vec::new();
    for w in corners.windows(2) {
        let (m0, n0) = w[0];
        let (m1, n1) = w[1];
        let len = ((m1 - m0).powi(2) + (n1 - n0).powi(2)).sqrt();
        let steps = (len / step).ceil().max(1.0) as usize;
        for k in 0..steps {
            let t = k as f64 / steps as f64;
            let (mu, nu) = (m0 + t * (m1 - m0), n0 + t * (n1 - n0));
            out.push(BorderPoint { mu, nu, g: g_eval(from_strip(mu, nu)) });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_zero() {
        let g = g_eval(c(0.0, 0.0));
        let expect = c(1.0, 0.0) - SQRT_2 * e_i_pi_8();
        assert!((g - expect).norm() < 1e-15);
        assert!((g - c(-0.306563, -0.541196)).norm() < 1e-6);
    }

    #[test]
    fn strip_examples() {
        let s = strip_coords(c(0.0, 0.0));
        assert_eq!((s.mu, s.nu), (0.0, 0.0));
        let s = strip_coords(Complex64::from_polar(1.0, PI / 4.0));
        assert!((s.mu - 1.0).abs() < 1e-15 && s.nu.abs() < 1e-15);
        let s = strip_coords(c(0.6419, 0.0));
        assert!((s.mu - 0.45389).abs() < 1e-5 && (s.nu + s.mu).abs() < 1e-15);
    }

    #[test]
    fn asymptotic_requires_positive_mu() {
        assert!(g_asymptotic(c(-1.0, -1.0)).is_err());
    }
}
