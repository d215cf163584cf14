//! Saddle-point expansions of R(s) on both sides of the critical strip.

pub mod asymptotics;
pub mod frames;
pub mod regions;

use crate::calibration::Calibration;
use crate::coeffs::{assemble_dk, KMAX};
use crate::error::fmt_c;
use crate::gfunc::g_jet;
use crate::oracle::{r_quad_origin_detail, r_quad_origin_unchecked, r_quad_saddle, zeta_sum};
use crate::special::{chi, zeta_tail};
use crate::{c, Error, Result, ScaledComplex, PI, SQRT_2};
use frames::{arg_from_one, left_frame, left_prefactor_log, right_prefactor_log, saddle_frame, sign_over_2i};
use frames::{LeftFrame, SaddleFrame};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use asymptotics::*;
pub use regions::{classify_region, phi_of_r, phi_series, RegionLabel, RegionTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Right,
    Left,
    OracleOrigin,
    OracleSaddle,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Frame {
    Right(SaddleFrame),
    Left(LeftFrame),
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionResult {
    pub value: ScaledComplex,
    pub k_used: usize,
    /// estimated relative error
    pub err_estimate: f64,
    /// log of the estimated absolute error
    pub err_log: f64,
    pub method: Method,
    pub frame: Frame,
}

/// The pieces of the right expansion up to a maximal order.
#[derive(Clone, Debug)]
pub struct RightTerms {
    pub frame: SaddleFrame,
    pub zeta_sum: ScaledComplex,
    /// ((−1)^ℓ/2i)·ξ^(−s)e^(πiξ²)
    pub prefactor: ScaledComplex,
    /// D_k(q)/ξ^k
    pub terms: Vec<Complex64>,
}

impl RightTerms {
    pub fn partial(&self, k: usize) -> Complex64 {
        self.terms[..=k].iter().sum()
    }

    pub fn value(&self, k: usize) -> ScaledComplex {
        self.zeta_sum.add(&self.prefactor.mul_complex(self.partial(k)))
    }

    pub fn series_scale_log(&self) -> f64 {
        self.terms.iter().map(|t| t.norm()).fold(0.0, f64::max).ln()
    }

    /// log of e^(−π|μ|/(2√2))·|ξ|^(−K−1)·|prefactor|.
    pub fn model_log(&self, k: usize) -> f64 {
        -PI * self.frame.strip.mu.abs() / (2.0 * SQRT_2) - (k as f64 + 1.0) * self.frame.xi.norm().ln()
            + self.prefactor.log_mod
    }
}

fn check_order(k: usize) -> Result<()> {
    if k == 0 || k > KMAX {
        return Err(Error::OrderOutOfRange { k, max: KMAX });
    }
    Ok(())
}

/// Σ_{k≤kmax} D_k(q)/ξ^k with every term kept.
fn dk_terms(q: Complex64, inv: Complex64, kmax: usize) -> Result<Vec<Complex64>> {
    let jet = g_jet(q, 3 * kmax);
    let mut out = Vec::with_capacity(kmax + 1);
    let mut pw = c(1.0, 0.0);
    for k in 0..=kmax {
        out.push(assemble_dk(k, &jet)? * pw);
        pw *= inv;
    }
    Ok(out)
}

pub fn right_valid(s: Complex64) -> bool {
    s.norm() >= 2.0 * PI && !(s.im == 0.0 && s.re < 0.0)
}

pub fn expand_right_terms(s: Complex64, kmax: usize) -> Result<RightTerms> {
    if kmax > KMAX {
        return Err(Error::OrderOutOfRange { k: kmax, max: KMAX });
    }
    if !right_valid(s) {
        return Err(Error::Region { point: fmt_c(s), region: "Delta" });
    }
    let frame = saddle_frame(s)?;
    let terms = dk_terms(frame.q, frame.xi.inv(), kmax)?;
    let prefactor = ScaledComplex::from_log(sign_over_2i(frame.ell) + right_prefactor_log(&frame));
    Ok(RightTerms { frame, zeta_sum: zeta_sum(s, frame.ell), prefactor, terms })
}

fn estimate(value: &ScaledComplex, err_log: f64) -> f64 {
    if value.is_zero() {
        return if err_log == f64::NEG_INFINITY { 0.0 } else { f64::INFINITY };
    }
    (err_log - value.log_mod).exp()
}

fn c_log(cal: &Calibration, k: usize) -> f64 {
    cal.c(k).map(f64::ln).unwrap_or(f64::INFINITY)
}

/// log of e^(−π|t|)·|saddle term| on the side of the real axis where the
/// expansion has its cut: there a second saddle contributes at this relative
/// size and no truncation order removes it. Elsewhere −∞.
fn stokes_log(near_cut: bool, s: Complex64, prefactor: &ScaledComplex, lead: Complex64) -> f64 {
    if !near_cut {
        return f64::NEG_INFINITY;
    }
    -PI * s.im.abs() + prefactor.log_mod + lead.norm().ln()
}

fn log_add(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m.is_infinite() {
        return m;
    }
    m + ((a - m).exp() + (b - m).exp()).ln()
}

fn right_result(t: &RightTerms, k: usize, cal: &Calibration) -> ExpansionResult {
    let value = t.value(k);
    let err_log =
        log_add(c_log(cal, k) + t.model_log(k), stokes_log(t.frame.s.re < 0.0, t.frame.s, &t.prefactor, t.terms[0]));
    ExpansionResult {
        value,
        k_used: k,
        err_estimate: estimate(&value, err_log),
        err_log,
        method: Method::Right,
        frame: Frame::Right(t.frame),
    }
}

/// R(s) ≈ Σ_{n≤ℓ} n^(−s) + ((−1)^ℓ/2i)·ξ^(−s)e^(πiξ²)·Σ_{k≤K} D_k(q)/ξ^k.
pub fn expand_right(s: Complex64, k: usize) -> Result<ExpansionResult> {
    expand_right_with(s, k, &Calibration::default())
}

pub fn expand_right_with(s: Complex64, k: usize, cal: &Calibration) -> Result<ExpansionResult> {
    check_order(k)?;
    Ok(right_result(&expand_right_terms(s, k)?, k, cal))
}

/// The pieces of the left expansion: R = χ(s)·(tail + prefactor·Σ conj D_k(conj p)/η^k).
#[derive(Clone, Debug)]
pub struct LeftTerms {
    pub frame: LeftFrame,
    pub chi: ScaledComplex,
    /// ζ(1−s) − Σ_{n≤m} n^(s−1)
    pub tail: ScaledComplex,
    /// ((−1)^m/2i)·η^(s−1)e^(−πiη²)
    pub prefactor: ScaledComplex,
    pub terms: Vec<Complex64>,
}

impl LeftTerms {
    pub fn partial(&self, k: usize) -> Complex64 {
        self.terms[..=k].iter().sum()
    }

    /// R(s)/χ(s) with K correction terms.
    pub fn inner(&self, k: usize) -> ScaledComplex {
        self.tail.add(&self.prefactor.mul_complex(self.partial(k)))
    }

    pub fn value(&self, k: usize) -> ScaledComplex {
        self.chi * self.inner(k)
    }

    pub fn model_log(&self, k: usize) -> f64 {
        -PI * self.frame.strip.mu.abs() / (2.0 * SQRT_2) - (k as f64 + 1.0) * self.frame.eta.norm().ln()
            + self.prefactor.log_mod
            + self.chi.log_mod
    }
}

pub fn left_valid(s: Complex64) -> bool {
    (s - 1.0).norm() >= 2.0 * PI && !(s.im == 0.0 && s.re > 1.0)
}

pub fn expand_left_terms(s: Complex64, kmax: usize) -> Result<LeftTerms> {
    if kmax > KMAX {
        return Err(Error::OrderOutOfRange { k: kmax, max: KMAX });
    }
    if !left_valid(s) {
        return Err(Error::Region { point: fmt_c(s), region: "reflected Delta" });
    }
    let frame = left_frame(s)?;
    let chi = chi(s)?;
    let terms = dk_terms(frame.p.conj(), frame.eta.inv().conj(), kmax)?.into_iter().map(|d| d.conj()).collect();
    let prefactor = ScaledComplex::from_log(sign_over_2i(frame.m) + left_prefactor_log(&frame));
    let tail = zeta_tail(c(1.0, 0.0) - s, frame.m)?;
    Ok(LeftTerms { frame, chi, tail, prefactor, terms })
}

fn left_result(t: &LeftTerms, k: usize, cal: &Calibration) -> ExpansionResult {
    let value = t.value(k);
    let stokes = stokes_log(t.frame.s.re > 1.0, t.frame.s, &t.prefactor, t.terms[0]) + t.chi.log_mod;
    let err_log = log_add(c_log(cal, k) + t.model_log(k), stokes);
    ExpansionResult {
        value,
        k_used: k,
        err_estimate: if t.chi.is_zero() { 0.0 } else { estimate(&value, err_log) },
        err_log,
        method: Method::Left,
        frame: Frame::Left(t.frame),
    }
}

/// R(s) = χ(s)·(ζ(1−s) − Σ_{n≤m} n^(s−1) + ((−1)^m/2i)·η^(s−1)e^(−πiη²)·Σ_{k≤K} conj D_k(conj p)/η^k).
pub fn expand_left(s: Complex64, k: usize) -> Result<ExpansionResult> {
    expand_left_with(s, k, &Calibration::default())
}

pub fn expand_left_with(s: Complex64, k: usize, cal: &Calibration) -> Result<ExpansionResult> {
    check_order(k)?;
    Ok(left_result(&expand_left_terms(s, k)?, k, cal))
}

/// Angular margin kept from the branch cut of each expansion in automatic mode.
const AUTO_MARGIN: f64 = PI / 8.0;

fn best_k<F: Fn(usize) -> ExpansionResult>(kmax: usize, f: F) -> Option<ExpansionResult> {
    (1..=kmax).map(f).min_by(|a, b| a.err_estimate.total_cmp(&b.err_estimate))
}

/// Best available value: both expansions where they apply, truncated at the
/// order with the smallest estimate, with quadrature when neither meets `target`.
pub fn eval_auto(s: Complex64, target: f64, cal: &Calibration) -> Result<ExpansionResult> {
    let kmax = cal.max_k().min(KMAX);
    let mut best: Option<ExpansionResult> = None;
    let consider = |best: &mut Option<ExpansionResult>, r: Option<ExpansionResult>| {
        if let Some(r) = r {
            if best.map_or(true, |b| r.err_estimate < b.err_estimate) {
                *best = Some(r);
            }
        }
    };
    if kmax >= 1 {
        if right_valid(s) && s.arg().abs() <= PI - AUTO_MARGIN {
            let t = expand_right_terms(s, kmax)?;
            consider(&mut best, best_k(kmax, |k| right_result(&t, k, cal)));
        }
        let a = arg_from_one(s);
        let done = best.is_some_and(|b| b.err_estimate <= target);
        if !done && left_valid(s) && (AUTO_MARGIN..=2.0 * PI - AUTO_MARGIN).contains(&a) {
            let t = expand_left_terms(s, kmax)?;
            consider(&mut best, best_k(kmax, |k| left_result(&t, k, cal)));
        }
    }
    if let Some(b) = best {
        if b.err_estimate <= target {
            return Ok(b);
        }
    }
    if s.norm() <= 500.0 {
        if let Ok(q) = r_quad_origin_detail(s) {
            let err_estimate = q.cond * 1e-15;
            return Ok(ExpansionResult {
                value: q.value,
                k_used: 0,
                err_estimate,
                err_log: q.value.log_mod + err_estimate.ln(),
                method: Method::OracleOrigin,
                frame: Frame::None,
            });
        }
    }
    if right_valid(s) && s.norm() <= 1e5 {
        let value = r_quad_saddle(s)?;
        return Ok(ExpansionResult {
            value,
            k_used: 0,
            err_estimate: 1e-12,
            err_log: value.log_mod + (1e-12f64).ln(),
            method: Method::OracleSaddle,
            frame: Frame::Right(saddle_frame(s)?),
        });
    }
    if s.norm() <= 500.0 {
        // heavy cancellation, usually next to a zero; the estimate says so
        if let Ok(q) = r_quad_origin_unchecked(s) {
            let err_estimate = q.cond * 1e-15;
            if best.map_or(true, |b| err_estimate < b.err_estimate) && q.cond.is_finite() {
                return Ok(ExpansionResult {
                    value: q.value,
                    k_used: 0,
                    err_estimate,
                    err_log: q.value.log_mod + err_estimate.ln(),
                    method: Method::OracleOrigin,
                    frame: Frame::None,
                });
            }
        }
    }
    best.ok_or_else(|| Error::Region { point: fmt_c(s), region: "any evaluator" })
}

/// R(s) with default calibration and target 1e−10.
pub fn r_auto(s: Complex64) -> Result<ScaledComplex> {
    eval_auto(s, 1e-10, &Calibration::default()).map(|r| r.value)
}
