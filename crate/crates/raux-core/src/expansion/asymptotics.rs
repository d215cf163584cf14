//! Closed-form consequences of the expansions: the zeta-sum approximation,
//! leading terms in the third quadrant and the deep left plane, Z(t), and ζ
//! assembled from two right expansions.

use super::frames::{right_prefactor_log, saddle_frame, sign_over_2i};
use super::regions::{in_l, in_left_g, in_n};
use super::{eval_auto, expand_left_terms, expand_right, Calibration};
use crate::error::fmt_c;
use crate::gfunc::g_eval;
use crate::oracle::zeta_sum;
use crate::special::{chi, theta_rs};
use crate::{c, Error, Result, ScaledComplex, PI};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::E;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ZetaSumApprox {
    pub sum: ScaledComplex,
    /// log of the bound on |R(s) − sum|, up to a constant
    pub bound_log: f64,
}

/// Σ_{n≤ℓ} n^(−s) with its error scale: |s/2πe|^(−σ/2) above the real axis,
/// e^(−c√|s|/log|s|) below it.
pub fn zeta_sum_approx(s: Complex64, cal: &Calibration) -> Result<ZetaSumApprox> {
    if !in_l(s) {
        return Err(Error::Region { point: fmt_c(s), region: "L" });
    }
    let f = saddle_frame(s)?;
    let r = s.norm();
    let bound_log = if s.im > 0.0 { -0.5 * s.re * (r / (2.0 * PI * E)).ln() } else { -cal.l_lower * r.sqrt() / r.ln() };
    Ok(ZetaSumApprox { sum: zeta_sum(s, f.ell), bound_log })
}

/// ((−1)^ℓ/2i)·ξ^(−s)e^(πiξ²)·G(q), the leading term below the zero line.
pub fn leading_third_quadrant(s: Complex64) -> Result<ScaledComplex> {
    let a = s.arg();
    let xi_abs = (s.norm() / (2.0 * PI)).sqrt();
    let top = -PI / 2.0 + (PI / (2.0 * xi_abs.ln())).atan();
    if s.norm() <= 2.0 * PI * E * E || !(a > -PI && a < top) || s.im == 0.0 {
        return Err(Error::Region { point: fmt_c(s), region: "M" });
    }
    let f = saddle_frame(s)?;
    Ok(ScaledComplex::from_log(sign_over_2i(f.ell) + right_prefactor_log(&f)).mul_complex(g_eval(f.q)))
}

/// −(1/√2)(t/2π)^(−1/4)·exp{πt/2 − (πt/2)^(1/2)}·exp{i(t/2·log(t/2π) − t/2 + 3π/8)}.
pub fn half_line_neg_asymptotic(t: f64) -> Result<ScaledComplex> {
    if !(t >= 100.0) {
        return Err(Error::Precondition(format!("t = {t} is below 100")));
    }
    let x = t / (2.0 * PI);
    let log_mod = PI * t / 2.0 - (PI * t / 2.0).sqrt() - 0.25 * x.ln() - 0.5 * 2f64.ln();
    let phase = t / 2.0 * x.ln() - t / 2.0 + 3.0 * PI / 8.0 + PI;
    Ok(ScaledComplex::new(log_mod, phase))
}

/// 2 Re{e^(iϑ(t)) R(1/2 + it)} evaluated as written, at any real t.
pub fn z_direct(t: f64, cal: &Calibration) -> Result<f64> {
    let r = eval_auto(c(0.5, t), 1e-12, cal)?.value;
    let z = r.mul_complex(Complex64::from_polar(2.0, theta_rs(t)));
    Ok(z.to_complex().re)
}

/// Z(t), using evenness so that R is only evaluated above the real axis.
pub fn z_of_t(t: f64, cal: &Calibration) -> Result<f64> {
    z_direct(t.abs(), cal)
}

/// ζ(s) = R(s) + χ(s)·conj R(1 − conj s), both from the right expansion.
pub fn zeta_via_rs(s: Complex64, k: usize) -> Result<Complex64> {
    if s.im < 2.0 * PI {
        return Err(Error::Region { point: fmt_c(s), region: "wedge above t = 2π" });
    }
    let a = expand_right(s, k)?.value;
    let b = expand_right(c(1.0, 0.0) - s.conj(), k)?.value.conj();
    Ok(a.add(&(chi(s)? * b)).to_complex())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LeftBoundPoint {
    pub s: Complex64,
    pub eta_abs: f64,
    /// log |R(s)/χ(s)|
    pub log_ratio: f64,
    /// |R/χ| / log|s|, for σ < 0 in the left wedge
    pub oldcor: Option<f64>,
    /// |R/χ| / ((t/2π)^(σ/2)/|σ|), for t > 0 and 1 < 1 − σ < √t
    pub cor85: Option<f64>,
    /// |R/(χ·leading) − 1|, in N
    pub n_deviation: Option<f64>,
}

/// Size of R/χ against the growth rates of the left-plane bounds.
pub fn left_bound_scan(grid: &[Complex64], k: usize) -> Result<Vec<LeftBoundPoint>> {
    grid.iter()
        .map(|&s| {
            let (sigma, t) = (s.re, s.im);
            let wedge = in_left_g(s) && sigma < 0.0;
            let c85 = t > 0.0 && sigma < 0.0 && 1.0 - sigma < t.sqrt();
            let n = in_n(s);
            if !(wedge || c85 || n) {
                return Err(Error::Region { point: fmt_c(s), region: "left-plane bound regions" });
            }
            let terms = expand_left_terms(s, k)?;
            let inner = terms.inner(k);
            let ratio = inner.log_mod;
            let oldcor = wedge.then(|| (ratio - s.norm().ln().ln()).exp());
            let cor85 = c85.then(|| (ratio - (0.5 * sigma * (t / (2.0 * PI)).ln() - sigma.abs().ln())).exp());
            let n_deviation = n.then(|| {
                let lead = terms.prefactor.mul_complex(terms.terms[0]);
                ((inner / lead).to_complex() - 1.0).norm()
            });
            Ok(LeftBoundPoint { s, eta_abs: terms.frame.eta.norm(), log_ratio: ratio, oldcor, cor85, n_deviation })
        })
        .collect()
}
