//! Saddle-point coordinates for the right and left expansions.

use crate::error::fmt_c;
use crate::gfunc::{strip_coords, StripPoint};
use crate::{c, Error, Result, PI};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaddleFrame {
    pub s: Complex64,
    /// sqrt(s/2πi) with −3π/4 < arg < π/4
    pub xi: Complex64,
    pub ell: u64,
    pub q: Complex64,
    pub tau: Complex64,
    pub strip: StripPoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeftFrame {
    pub s: Complex64,
    /// sqrt((s−1)/2πi) with −π/4 < arg ≤ 3π/4
    pub eta: Complex64,
    pub m: u64,
    pub p: Complex64,
    /// strip coordinates of conj(p)
    pub strip: StripPoint,
}

pub fn saddle_frame(s: Complex64) -> Result<SaddleFrame> {
    if s.im == 0.0 && s.re <= 0.0 {
        return Err(Error::BranchCut(format!("s = {} lies on (−∞, 0]", fmt_c(s))));
    }
    let xi = Complex64::from_polar((s.norm() / (2.0 * PI)).sqrt(), 0.5 * (s.arg() - PI / 2.0));
    let ell = (xi.re - xi.im).floor().max(0.0) as u64;
    let q = 2.0 * xi - (2 * ell + 1) as f64;
    let tau = -1.0 / (4.0 * PI.sqrt() * xi);
    Ok(SaddleFrame { s, xi, ell, q, tau, strip: strip_coords(q) })
}

/// Angle of s − 1 measured in (0, 2π).
pub fn arg_from_one(s: Complex64) -> f64 {
    let a = (s - 1.0).arg();
    if a <= 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

pub fn left_frame(s: Complex64) -> Result<LeftFrame> {
    let w = s - 1.0;
    if w.im == 0.0 && w.re >= 0.0 {
        return Err(Error::BranchCut(format!("s = {} lies on [1, ∞)", fmt_c(s))));
    }
    let eta = Complex64::from_polar((w.norm() / (2.0 * PI)).sqrt(), 0.5 * (arg_from_one(s) - PI / 2.0));
    let m = (eta.re + eta.im).floor().max(0.0) as u64;
    let p = 2.0 * eta - (2 * m + 1) as f64;
    Ok(LeftFrame { s, eta, m, p, strip: strip_coords(p.conj()) })
}

/// exp(−s log ξ + πiξ²) as a complex exponent; πiξ² = s/2.
pub fn right_prefactor_log(f: &SaddleFrame) -> Complex64 {
    -f.s * f.xi.ln() + f.s * 0.5
}

/// exp((s−1) log η − πiη²) as a complex exponent; πiη² = (s−1)/2.
pub fn left_prefactor_log(f: &LeftFrame) -> Complex64 {
    (f.s - 1.0) * (f.eta.ln() - 0.5)
}

/// log of (−1)^n / 2i.
pub fn sign_over_2i(n: u64) -> Complex64 {
    c(-(2f64.ln()), if n % 2 == 0 { -PI / 2.0 } else { PI / 2.0 })
}
