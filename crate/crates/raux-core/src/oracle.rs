//! Ground truth by direct contour quadrature.
//!
//! Every integrand here decays like a Gaussian along a line of direction
//! e^(−3πi/4), so the truncated trapezoid rule converges geometrically.
//! Integrands are produced in scaled form and summed relative to their peak.

use crate::coeffs::pk_float;
use crate::error::fmt_c;
use crate::expansion::frames::{right_prefactor_log, saddle_frame, sign_over_2i, SaddleFrame};
use crate::special::{clog1p, NeumaierSum};
use crate::{c, Error, Result, ScaledComplex, PI};
use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::LazyLock;

/// e^(−3πi/4), the steepest-descent direction of e^(πix²).
pub fn path_direction() -> Complex64 {
    Complex64::from_polar(1.0, -0.75 * PI)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    GaussLike,
    TrapezoidExp,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Parameter range is [u_min, u_max]; half_width is the larger of |u_min|, |u_max|.
    pub half_width: f64,
    pub nodes: usize,
    pub scheme: Scheme,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: ScaledComplex,
    pub spec: QuadratureSpec,
    /// |last halving change| relative to the integral of |f|.
    pub change: f64,
    /// log of the largest integrand modulus seen.
    pub peak_log: f64,
    /// ∫|f| / |∫f|, the cancellation factor.
    pub cond: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct LineOptions {
    pub rel_tol: f64,
    /// Integrand below peak·e^(−tail_drop) is dropped.
    pub tail_drop: f64,
    pub max_half_width: f64,
    /// The scan never stops before this, so a later, larger peak is not missed.
    pub min_half_width: f64,
    pub initial_h: f64,
    pub max_levels: usize,
}

impl Default for LineOptions {
    fn default() -> Self {
        LineOptions {
            rel_tol: 1e-13,
            tail_drop: 46.0,
            max_half_width: 400.0,
            min_half_width: 0.0,
            initial_h: 0.125,
            max_levels: 14,
        }
    }
}

/// ∫ f(u) du over the real line, f given in scaled form.
pub fn integrate_line<F>(f: F, opts: &LineOptions) -> Result<QuadResult>
where
    F: Fn(f64) -> ScaledComplex,
{
    let scan = 0.25;
    let mut peak = f(0.0).log_mod;
    let mut bounds = [0.0f64; 2];
    for (side, dir) in [(0usize, -1.0f64), (1, 1.0)] {
        let mut u = 0.0;
        let mut below = 0;
        loop {
            u += dir * scan;
            if u.abs() > opts.max_half_width {
                return Err(Error::Quadrature(format!("integrand not decayed at u = {u}")));
            }
            let v = f(u).log_mod;
            if v > peak {
                peak = v;
                below = 0;
            } else if v < peak - opts.tail_drop || v == f64::NEG_INFINITY {
                below += 1;
                if below >= 4 && u.abs() >= opts.min_half_width {
                    break;
                }
            } else {
                below = 0;
            }
        }
        bounds[side] = u;
    }
    if !peak.is_finite() {
        return Err(Error::Quadrature("integrand has no finite peak".into()));
    }
    let (a, b) = (bounds[0], bounds[1]);
    let mut n = ((b - a) / opts.initial_h).ceil() as usize;
    let mut h = (b - a) / n as f64;
    let mut sum = NeumaierSum::default();
    let mut abs_sum = 0.0;
    for k in 0..=n {
        let w = if k == 0 || k == n { 0.5 } else { 1.0 };
        let v = f(a + k as f64 * h).to_complex_scaled(peak) * w;
        abs_sum += v.norm();
        sum.add(v);
    }
    let mut total = sum.total() * h;
    let mut change = f64::INFINITY;
    for level in 0..opts.max_levels {
        let mut mid = NeumaierSum::default();
        for k in 0..n {
            let v = f(a + (k as f64 + 0.5) * h).to_complex_scaled(peak);
            abs_sum += v.norm();
            mid.add(v);
        }
        let mut s = sum;
        s.add(mid.total());
        sum = s;
        n *= 2;
        h *= 0.5;
        let new_total = sum.total() * h;
        let l1 = abs_sum * h;
        change = (new_total - total).norm();
        total = new_total;
        if level >= 1 && (change <= opts.rel_tol * total.norm() || change <= 1e-15 * l1) {
            change /= l1.max(f64::MIN_POSITIVE);
            let cond = if total.norm() > 0.0 { l1 / total.norm() } else { f64::INFINITY };
            return Ok(QuadResult {
                value: ScaledComplex::from_complex(total).shifted(peak),
                spec: QuadratureSpec { half_width: a.abs().max(b.abs()), nodes: n + 1, scheme: Scheme::TrapezoidExp },
                change,
                peak_log: peak,
                cond,
            });
        }
    }
    Err(Error::Quadrature(format!("no convergence after {} levels (change {change:e})", opts.max_levels)))
}

/// log(e^(πix) − e^(−πix)), arranged so the exponential that is summed to 1 is the small one.
fn log_two_i_sin(x: Complex64) -> Complex64 {
    let i = c(0.0, 1.0);
    if x.im < 0.0 {
        i * PI * x + clog1p(-(-2.0 * i * PI * x).exp())
    } else {
        c(0.0, PI) - i * PI * x + clog1p(-(2.0 * i * PI * x).exp())
    }
}

/// log(2 cos(πv/2)).
fn log_two_cos_half(v: Complex64) -> Complex64 {
    let i = c(0.0, 1.0);
    let w = v * (PI / 2.0);
    if w.im < 0.0 {
        i * w + clog1p((-2.0 * i * w).exp())
    } else {
        -i * w + clog1p((2.0 * i * w).exp())
    }
}

/// log(1 + w) − w + w²/2.
pub fn tail3(w: Complex64) -> Complex64 {
    if w.norm() < 0.25 {
        let mut p = w * w * w;
        let mut acc = c(0.0, 0.0);
        for n in 3..40 {
            let t = p / n as f64;
            if n % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
            if t.norm() < 1e-18 * acc.norm() {
                break;
            }
            p *= w;
        }
        acc
    } else {
        clog1p(w) - w + w * w * 0.5
    }
}

/// Largest ∫|f|/|∫f| accepted on the origin path (about 1e−11 relative accuracy).
pub const MAX_ORIGIN_COND: f64 = 1e5;

/// R(s) along x = 1/2 + u·e^(−3πi/4).
pub fn r_quad_origin(s: Complex64) -> Result<ScaledComplex> {
    r_quad_origin_detail(s).map(|r| r.value)
}

pub fn r_quad_origin_detail(s: Complex64) -> Result<QuadResult> {
    let r = r_quad_origin_unchecked(s)?;
    if r.cond > MAX_ORIGIN_COND {
        return Err(Error::Quadrature(format!(
            "cancellation factor {:.1e} on the origin path at s = {}",
            r.cond,
            fmt_c(s)
        )));
    }
    Ok(r)
}

/// Same as [`r_quad_origin_detail`] without the cancellation limit; `cond`
/// tells how many digits were lost.
pub fn r_quad_origin_unchecked(s: Complex64) -> Result<QuadResult> {
    if s.norm() > 500.0 {
        return Err(Error::Precondition(format!("|s| = {} exceeds the origin-path limit 500", s.norm())));
    }
    let w = path_direction();
    let i = c(0.0, 1.0);
    let lw = w.ln();
    let f = |u: f64| {
        let x = c(0.5, 0.0) + w * u;
        ScaledComplex::from_log(-s * x.ln() + i * PI * x * x - log_two_i_sin(x) + lw)
    };
    // both saddles of the integrand sit at |x| = √(|s|/2π)
    let reach = (s.norm() / (2.0 * PI)).sqrt() + 3.0;
    integrate_line(f, &LineOptions { rel_tol: 1e-14, min_half_width: reach, ..Default::default() })
}

/// β = sin(θ/2)/3 with θ = π/2.
pub fn default_beta() -> f64 {
    (PI / 4.0).sin() / 3.0
}

/// Lateral shift keeping the path crossing of the real axis away from the poles ±1.
pub fn path_shift(q: Complex64, beta: f64) -> f64 {
    let cross = q.re - q.im;
    if (cross - 1.0).abs() < beta * std::f64::consts::SQRT_2 {
        -beta
    } else if (cross + 1.0).abs() < beta * std::f64::consts::SQRT_2 {
        beta
    } else {
        0.0
    }
}

/// The saddle integral ∫ e^(πi(v−q)²/2) g(τ, i√π(v−q)) / (2cos(πv/2)) dv
/// through q, so that R = Σ_{n≤ℓ} n^(−s) + ((−1)^ℓ/2i)·ξ^(−s)e^(πiξ²)·bracket.
pub fn saddle_bracket(frame: &SaddleFrame) -> Result<QuadResult> {
    let q = frame.q;
    let xi = frame.xi;
    let w = path_direction();
    let lw = w.ln();
    let i = c(0.0, 1.0);
    let gamma = path_shift(q, default_beta());
    let offset = Complex64::from_polar(gamma, -0.25 * PI);
    let g_coef = -2.0 * i * PI * xi * xi;
    let f = |u: f64| {
        let dv = w * u + offset;
        let v = q + dv;
        let e = i * PI * dv * dv * 0.5 - log_two_cos_half(v) + g_coef * tail3(dv / (2.0 * xi)) + lw;
        ScaledComplex::from_log(e)
    };
    integrate_line(f, &LineOptions::default())
}

/// Σ_{n≤ℓ} n^(−s) in scaled form.
pub fn zeta_sum(s: Complex64, ell: u64) -> ScaledComplex {
    if ell == 0 {
        return ScaledComplex::ZERO;
    }
    let top = if s.re < 0.0 { -s.re * (ell as f64).ln() } else { 0.0 };
    let mut acc = NeumaierSum::default();
    for n in 1..=ell {
        acc.add((-s * (n as f64).ln() - top).exp());
    }
    ScaledComplex::from_complex(acc.total()).shifted(top)
}

/// The factor ((−1)^ℓ/2i)·ξ^(−s)e^(πiξ²).
pub fn saddle_prefactor(frame: &SaddleFrame) -> ScaledComplex {
    ScaledComplex::from_log(sign_over_2i(frame.ell) + right_prefactor_log(frame))
}

/// R(s) via the saddle path, for s in Δ.
pub fn r_quad_saddle(s: Complex64) -> Result<ScaledComplex> {
    if s.norm() > 1e5 {
        return Err(Error::Precondition(format!("|s| = {} exceeds 1e5", s.norm())));
    }
    let frame = saddle_frame(s)?;
    let b = saddle_bracket(&frame)?;
    Ok(zeta_sum(s, frame.ell).add(&(saddle_prefactor(&frame) * b.value)))
}

fn d_integral(q: Complex64, weight: impl Fn(Complex64) -> Complex64) -> Result<Complex64> {
    let w = path_direction();
    let i = c(0.0, 1.0);
    let f = |u: f64| {
        let v = w * u;
        let e = i * PI * (v - q) * (v - q) * 0.5 - log_two_cos_half(v);
        ScaledComplex::from_log(e).mul_complex(weight(v) * w)
    };
    Ok(integrate_line(f, &LineOptions { rel_tol: 1e-14, ..Default::default() })?.value.to_complex())
}

/// D_0(q) = ∫_{0↙} e^(πi(v−q)²/2)/(2cos(πv/2)) dv; equals G(q).
pub fn d0_quad(q: Complex64) -> Result<Complex64> {
    d_integral(q, |_| c(1.0, 0.0))
}

/// D_k(q) = (−1/(4√π))^k ∫_{0↙} e^(πi(v−q)²/2) P_k(i√π(v−q)) / (2cos(πv/2)) dv.
pub fn dk_quad(q: Complex64, k: usize) -> Result<Complex64> {
    let p = pk_float(k)?;
    let sp = PI.sqrt();
    let val = d_integral(q, |v| {
        let z = c(0.0, sp) * (v - q);
        p.iter().rev().fold(c(0.0, 0.0), |acc, a| acc * z + a)
    })?;
    Ok(val * (-1.0 / (4.0 * sp)).powi(k as i32))
}

/// g(τ, z) = exp(−(i/8τ²)·(log(1 + 2iτz) − 2iτz + (2iτz)²/2)).
pub fn g_tau(tau: Complex64, z: Complex64) -> Result<Complex64> {
    let w = c(0.0, 2.0) * tau * z;
    if w.im == 0.0 && w.re <= -1.0 {
        return Err(Error::BranchCut(format!("1 + 2iτz = {}", fmt_c(w + 1.0))));
    }
    if tau == c(0.0, 0.0) {
        return Ok(c(1.0, 0.0));
    }
    Ok((c(0.0, -1.0) / (8.0 * tau * tau) * tail3(w)).exp())
}

/// Rg_K(τ, z) = g(τ, z) − Σ_{k≤K} P_k(z) τ^k.
pub fn rg_remainder_direct(tau: Complex64, z: Complex64, k: usize) -> Result<Complex64> {
    let g = g_tau(tau, z)?;
    let mut partial = c(0.0, 0.0);
    let mut tk = c(1.0, 0.0);
    for j in 0..=k {
        let p = pk_float(j)?;
        partial += p.iter().rev().fold(c(0.0, 0.0), |acc, a| acc * z + a) * tk;
        tk *= tau;
    }
    Ok(g - partial)
}

static GL32: LazyLock<Vec<(f64, f64)>> =
    LazyLock::new(|| GaussLegendre::new(32).expect("degree ≥ 2").as_node_weight_pairs().to_vec());

/// Composite Gauss–Legendre for a complex integrand on [a, b].
fn gl_complex(a: f64, b: f64, panels: usize, f: impl Fn(f64) -> Complex64) -> Complex64 {
    let mut acc = NeumaierSum::default();
    let h = (b - a) / panels as f64;
    for p in 0..panels {
        let (lo, hi) = (a + p as f64 * h, a + (p + 1) as f64 * h);
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        for &(x, w) in GL32.iter() {
            acc.add(f(mid + half * x) * (w * half));
        }
    }
    acc.total()
}

fn gl_real(a: f64, b: f64, panels: usize, f: impl Fn(f64) -> f64) -> f64 {
    gl_complex(a, b, panels, |x| c(f(x), 0.0)).re
}

/// Rg_K by the contour integral over the vertical line Re ζ = 1/2:
/// (−2izτ)^(K+1)/(2πi) ∫ e^(−iz²f(ζ)/2) / ((ζ + 2izτ) ζ^(K+1)) dζ,
/// f(ζ) = −log(1 − ζ)/ζ² − 1/ζ − 1/2.
pub fn rg_remainder_line(tau: Complex64, z: Complex64, k: usize) -> Result<Complex64> {
    let zeta0 = c(0.0, -2.0) * z * tau;
    if zeta0.re >= 0.5 - 1e-2 {
        return Err(Error::Precondition(format!("−2izτ = {} is not left of Re ζ = 1/2", fmt_c(zeta0))));
    }
    let fz = |zeta: Complex64| -> Complex64 { -clog1p(-zeta) / (zeta * zeta) - zeta.inv() - 0.5 };
    // ζ = 1/2 + i·tan θ, θ ∈ (−π/2, π/2)
    let integrand = |theta: f64| -> Complex64 {
        let y = theta.tan();
        let zeta = c(0.5, y);
        let dzeta = c(0.0, 1.0 + y * y);
        let e = (c(0.0, -0.5) * z * z * fz(zeta)).exp();
        e / ((zeta - zeta0) * zeta.powi(k as i32 + 1)) * dzeta
    };
    let lim = PI / 2.0 - 1e-9;
    let val = gl_complex(-lim, lim, 64, integrand);
    Ok(zeta0.powi(k as i32 + 1) / c(0.0, 2.0 * PI) * val)
}

/// Results of the appendix inequality scans.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InequalityReport {
    /// (a, sup over the λ-grid of I(a,λ)e^|λ|, argmax λ, analytic constant)
    pub i_scan: Vec<(f64, f64, f64, f64)>,
    /// (a, b, c, sup of J(a,b,c,λ)e^(c|λ|), analytic constant)
    pub j_scan: Vec<(f64, f64, f64, f64, f64)>,
    /// largest f(r, φ) on the grid (should be negative) and where
    pub f_max: (f64, f64, f64),
    /// smallest ∂u/∂φ on the grid (should be positive) and where
    pub du_min: (f64, f64, f64),
    pub passed: bool,
}

/// I(a, λ) = ∫ e^(−ax²) e^(−|λ−x|) dx.
pub fn i_integral(a: f64, lambda: f64) -> f64 {
    j_integral(a, 0.0, 1.0, lambda)
}

/// J(a, b, c, λ) = ∫ e^(−ax² + b|x|) e^(−c|λ−x|) dx.
pub fn j_integral(a: f64, b: f64, cc: f64, lambda: f64) -> f64 {
    let f = |x: f64| (-a * x * x + b * x.abs() - cc * (lambda - x).abs()).exp();
    // the integrand is smooth except at 0 and λ; its mass lies within a few
    // widths of the Gaussian peak, of λ, and of b/2a
    let width = (50.0 / a).sqrt() + 50.0 / cc;
    let lo = lambda.min(0.0) - width;
    let hi = lambda.max(0.0) + width;
    let mut cuts = vec![lo, hi, 0.0, lambda];
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();
    let panel = (0.2 / a.sqrt()).min(0.5);
    cuts.windows(2)
        .map(|w| {
            let n = ((w[1] - w[0]) / panel).ceil().max(1.0) as usize;
            gl_real(w[0], w[1], n, f)
        })
        .sum()
}

/// Explicit constant for I(a,λ)e^|λ|: the λ > 1 bound (√(π/a) + 1/(2a))e^(1/4a)
/// and the trivial bound e·√(π/a) for |λ| ≤ 1.
pub fn i_constant(a: f64) -> f64 {
    let big = ((PI / a).sqrt() + 1.0 / (2.0 * a)) * (0.25 / a).exp();
    big.max(std::f64::consts::E * (PI / a).sqrt())
}

/// Constant for J: 2e^(b²/4a)(1/c)C_I(a/c²)e^(cb/2a), from completing the
/// square in each of e^(±bx).
pub fn j_constant(a: f64, b: f64, cc: f64) -> f64 {
    2.0 * (b * b / (4.0 * a)).exp() / cc * i_constant(a / (cc * cc)) * (cc * b / (2.0 * a)).exp()
}

/// f(r, φ) whose negativity bounds the saddle contribution below region L.
pub fn f_function(r: f64, phi: f64) -> f64 {
    4.0 * r.ln() / (PI * r * r) - 2.0 * (2.0 * phi).sin() * (phi.cos() + phi.sin()).ln() + 2.0 * phi * (2.0 * phi).cos()
        - (2.0 * phi).sin()
        + phi.sin() / r
}

pub fn inequality_scans() -> InequalityReport {
    let lambdas: Vec<f64> = (0..=240).map(|k| -30.0 + 0.25 * k as f64).collect();
    let mut passed = true;
    let mut i_scan = Vec::new();
    for a in [0.1, 1.0, 10.0] {
        let (sup, arg) = lambdas.iter().map(|&l| (i_integral(a, l) * l.abs().exp(), l)).fold((0.0, 0.0), |x, y| {
            if y.0 > x.0 {
                y
            } else {
                x
            }
        });
        let bound = i_constant(a);
        passed &= sup.is_finite() && sup <= bound;
        i_scan.push((a, sup, arg, bound));
    }
    let mut j_scan = Vec::new();
    for a in [0.5, 1.0, 2.0] {
        for b in [0.5, 1.0, 2.0] {
            for cc in [0.5, 1.0, 2.0] {
                let sup = lambdas.iter().map(|&l| j_integral(a, b, cc, l) * (cc * l.abs()).exp()).fold(0.0, f64::max);
                let bound = j_constant(a, b, cc);
                passed &= sup.is_finite() && sup <= bound;
                j_scan.push((a, b, cc, sup, bound));
            }
        }
    }
    let mut f_max = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 0..=90 {
        let r = (1.0 + 1e-9 + 9.0 * i as f64 / 90.0).exp();
        let phi0 = (2.0 * r.ln()).sqrt() / r;
        for j in 0..=200 {
            let phi = phi0 + (PI / 2.0 - phi0) * j as f64 / 200.0;
            let v = f_function(r, phi);
            if v > f_max.0 {
                f_max = (v, r, phi);
            }
        }
    }
    passed &= f_max.0 < 0.0;
    let mut du_min = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=90 {
        let r = (1.0 + 9.0 * i as f64 / 90.0).exp();
        for j in 0..=200 {
            let phi = PI / 4.0 * j as f64 / 200.0;
            let v = crate::expansion::regions::du_dphi(r, phi);
            if v < du_min.0 {
                du_min = (v, r, phi);
            }
        }
    }
    passed &= du_min.0 > 0.0;
    InequalityReport { i_scan, j_scan, f_max, du_min, passed }
}
