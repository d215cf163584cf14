//! Validity regions of the expansions and the boundary angle φ(r).

use super::frames::arg_from_one;
use crate::{Error, Result, PI};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::E;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionTag {
    /// zeta-sum region on the right
    L,
    /// sub-sector of the fourth quadrant where the saddle term is at most 1 in modulus
    P,
    /// third-quadrant leading-term region
    M,
    /// deep left plane, χ-factored leading term
    N,
    /// left wedge above the critical line where R/χ is ζ(1−s) minus its partial sum up to O(1)
    LeftG,
    DeltaOnly,
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionLabel {
    pub tag: RegionTag,
    pub theta: f64,
}

/// u(r, φ) = 2 log r·sin 2φ − 2(π/2 − φ) cos 2φ − sin 2φ − sin φ / r.
pub fn u_function(r: f64, phi: f64) -> f64 {
    2.0 * r.ln() * (2.0 * phi).sin() - 2.0 * (PI / 2.0 - phi) * (2.0 * phi).cos() - (2.0 * phi).sin() - phi.sin() / r
}

pub fn du_dphi(r: f64, phi: f64) -> f64 {
    4.0 * r.ln() * (2.0 * phi).cos() + 4.0 * (PI / 2.0 - phi) * (2.0 * phi).sin() - phi.cos() / r
}

/// The root of u(r, ·) in [0, π/4].
pub fn phi_of_r(r: f64) -> Result<f64> {
    if !(r >= E) {
        return Err(Error::Precondition(format!("phi needs r ≥ e, got {r}")));
    }
    let (mut lo, mut hi) = (0.0, PI / 4.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if u_function(r, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-6 {
            break;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..8 {
        let step = u_function(r, x) / du_dphi(r, x);
        let next = (x - step).clamp(lo, hi);
        if (next - x).abs() < 1e-17 {
            break;
        }
        x = next;
    }
    Ok(x)
}

/// π/(4L) − π³/(48L³) + π³/(96L⁴) + π⁵/(320L⁵), L = log r.
pub fn phi_series(r: f64) -> Result<f64> {
    if !(r >= E) {
        return Err(Error::Precondition(format!("phi needs r ≥ e, got {r}")));
    }
    let l = r.ln();
    let p3 = PI.powi(3);
    Ok(PI / (4.0 * l) - p3 / (48.0 * l.powi(3)) + p3 / (96.0 * l.powi(4)) + PI.powi(5) / (320.0 * l.powi(5)))
}

pub fn in_delta(s: Complex64, theta: f64) -> bool {
    let a = s.arg();
    s.norm() >= 2.0 * PI && a >= -PI + theta && a <= PI - theta && !(s.im == 0.0 && s.re < 0.0)
}

fn xi_modulus(s: Complex64) -> f64 {
    (s.norm() / (2.0 * PI)).sqrt()
}

pub fn in_l(s: Complex64) -> bool {
    if s.norm() <= 2.0 * PI * E * E {
        return false;
    }
    let a = s.arg();
    match phi_of_r(xi_modulus(s)) {
        Ok(phi) => -PI / 2.0 + 2.0 * phi < a && a < PI / 2.0,
        Err(_) => false,
    }
}

/// Membership in P through its defining inequality
/// Re(−2πiξ² log ξ + πiξ² + πξ) ≤ 0, with −π/2 ≤ arg ξ ≤ −π/4 and |ξ| ≥ e.
pub fn in_p(s: Complex64) -> bool {
    let r = xi_modulus(s);
    let a = s.arg();
    if r < E || s.im > 0.0 || a < -PI / 2.0 {
        return false;
    }
    let xi = Complex64::from_polar(r, 0.5 * (a - PI / 2.0));
    let i = Complex64::i();
    let e = -2.0 * PI * i * xi * xi * xi.ln() + PI * i * xi * xi + PI * xi;
    e.re <= 0.0
}

pub fn in_m(s: Complex64, theta: f64) -> bool {
    if !(theta > 0.0 && theta < PI / 2.0) || s.norm() <= 2.0 * PI * E * E {
        return false;
    }
    let a = s.arg();
    let top = -PI / 2.0 + (PI / (2.0 * xi_modulus(s).ln())).atan();
    -PI + theta < a && a < top
}

pub fn in_n(s: Complex64) -> bool {
    if (s - 1.0).norm() <= 2.0 * PI * E * E || s.re >= 1.0 {
        return false;
    }
    let t = s.im;
    if t <= 2.0 * PI * E {
        return true;
    }
    let x = t / (2.0 * PI);
    s.re <= 1.0 - 8.0 * PI * (x * x.ln()).sqrt()
}

pub fn in_left_g(s: Complex64) -> bool {
    let w = (s - 1.0).norm();
    if w <= 2.0 * PI * E {
        return false;
    }
    let a = arg_from_one(s);
    a >= PI / 2.0 && a <= PI / 2.0 + 2.0 * (w / (2.0 * PI)).ln().sqrt().atan()
}

/// Most specific region containing s; precedence L, P, M, N, LeftG, DeltaOnly.
pub fn classify_region(s: Complex64, theta: f64) -> RegionLabel {
    let tag = if in_l(s) {
        RegionTag::L
    } else if in_p(s) {
        RegionTag::P
    } else if in_m(s, theta) {
        RegionTag::M
    } else if in_n(s) {
        RegionTag::N
    } else if in_left_g(s) {
        RegionTag::LeftG
    } else if in_delta(s, theta) {
        RegionTag::DeltaOnly
    } else {
        RegionTag::Outside
    };
    RegionLabel { tag, theta }
}
