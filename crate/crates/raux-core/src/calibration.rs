//! Empirical error constants for the truncated expansions.
//!
//! The expansion error is modelled as c[K]·e^(−π|μ|/(2√2))·|ξ|^(−K−1)·|prefactor|,
//! with c[K] fitted against quadrature on a fixed grid of rays and radii.

use crate::error::fmt_c;
use crate::expansion::{expand_right_terms, RightTerms};
use crate::oracle::r_quad_saddle;
use crate::{Error, Result, PI, SQRT_2};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const CALIBRATION_VERSION: u32 = 1;

/// Largest K with a fitted constant.
pub const K_CALIBRATED: usize = 16;

pub const CAL_ARGS: [f64; 8] = [-2.6, -1.8, -0.8, 0.0, 0.7, 1.6, 2.4, 2.75];
pub const CAL_RADII: [f64; 6] = [50.0, 100.0, 200.0, 400.0, 800.0, 1600.0];

/// Fitted on [`CAL_ARGS`] × [`CAL_RADII`] with safety factor 2.
const DEFAULT_C: [f64; K_CALIBRATED + 1] = [
    0.0, 1.20e-1, 2.39e-2, 1.17e-2, 4.57e-3, 1.63e-3, 7.92e-4, 4.35e-4, 2.15e-4, 1.14e-4, 6.95e-5, 4.46e-5, 3.10e-5,
    2.22e-5, 1.70e-5, 0.0, 0.0,
];
/// c in e^(−c√|s|/log|s|) for the lower half of L.
const DEFAULT_L_LOWER: f64 = 2.61;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub version: u32,
    /// c[K] for K = 0..=K_CALIBRATED; index 0 is unused
    pub c_emp: Vec<f64>,
    pub l_lower: f64,
    pub args: Vec<f64>,
    pub radii: Vec<f64>,
    pub safety: f64,
}

impl Default for Calibration {
    fn default() -> Self {
        Calibration {
            version: CALIBRATION_VERSION,
            c_emp: DEFAULT_C.to_vec(),
            l_lower: DEFAULT_L_LOWER,
            args: CAL_ARGS.to_vec(),
            radii: CAL_RADII.to_vec(),
            safety: 2.0,
        }
    }
}

impl Calibration {
    /// Constant for order K, or None past the fitted range.
    pub fn c(&self, k: usize) -> Option<f64> {
        self.c_emp.get(k).copied().filter(|v| *v > 0.0 && v.is_finite())
    }

    pub fn max_k(&self) -> usize {
        (1..self.c_emp.len()).rev().find(|&k| self.c(k).is_some()).unwrap_or(0)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let cal: Calibration =
            serde_json::from_str(&text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        if cal.version != CALIBRATION_VERSION {
            return Err(Error::Io(format!("calibration version {} (expected {CALIBRATION_VERSION})", cal.version)));
        }
        Ok(cal)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

/// One grid point of a calibration run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CalPoint {
    pub s: Complex64,
    /// log of the model scale e^(−π|μ|/(2√2))·|ξ|^(−K−1)·|prefactor| per K
    pub model_log: Vec<f64>,
    /// log of the observed absolute error per K (−∞ at the noise floor)
    pub err_log: Vec<f64>,
}

/// Observed errors of the right expansion at one point, K = 0..=kmax.
pub fn measure(s: Complex64, kmax: usize) -> Result<CalPoint> {
    let terms: RightTerms = expand_right_terms(s, kmax)?;
    let truth = r_quad_saddle(s)?;
    let f = &terms.frame;
    let decay = -PI * f.strip.mu.abs() / (2.0 * SQRT_2);
    let lxi = f.xi.norm().ln();
    let mut model_log = Vec::with_capacity(kmax + 1);
    let mut err_log = Vec::with_capacity(kmax + 1);
    // rounding floor of the two pieces being added
    let floor_log = terms.zeta_sum.log_mod.max(terms.prefactor.log_mod + terms.series_scale_log()) + (1e-12f64).ln();
    for k in 0..=kmax {
        model_log.push(decay - (k as f64 + 1.0) * lxi + terms.prefactor.log_mod);
        let v = terms.value(k);
        let d = v.sub(&truth);
        err_log.push(if d.log_mod < floor_log { f64::NEG_INFINITY } else { d.log_mod });
    }
    Ok(CalPoint { s, model_log, err_log })
}

/// Fit c[K] = safety · max over the grid of observed / model.
pub fn fit(args: &[f64], radii: &[f64], safety: f64) -> Result<(Calibration, Vec<CalPoint>)> {
    let pts: Vec<Complex64> =
        args.iter().flat_map(|&a| radii.iter().map(move |&r| Complex64::from_polar(r, a))).collect();
    let points: Vec<CalPoint> = pts
        .par_iter()
        .map(|&s| {
            measure(s, K_CALIBRATED).map_err(|e| Error::NoConvergence(format!("calibration at {}: {e}", fmt_c(s))))
        })
        .collect::<Result<_>>()?;
    let mut c_emp = vec![0.0; K_CALIBRATED + 1];
    for (k, slot) in c_emp.iter_mut().enumerate().skip(1) {
        let worst = points
            .iter()
            .filter(|p| p.err_log[k].is_finite())
            .map(|p| p.err_log[k] - p.model_log[k])
            .fold(f64::NEG_INFINITY, f64::max);
        *slot = if worst.is_finite() { safety * worst.exp() } else { 0.0 };
    }
    let l_lower = fit_l_lower()?;
    Ok((
        Calibration {
            version: CALIBRATION_VERSION,
            c_emp,
            l_lower,
            args: args.to_vec(),
            radii: radii.to_vec(),
            safety,
        },
        points,
    ))
}

/// Largest c with |R − Σ n^(−s)| ≤ e^(−c√|s|/log|s|) on sample points of L below the real axis,
/// divided by the safety factor 2.
pub fn fit_l_lower() -> Result<f64> {
    let mut c = f64::INFINITY;
    for r in [200.0, 400.0, 800.0, 1600.0, 3200.0] {
        let xi = (r / (2.0 * PI)).sqrt();
        let phi = crate::expansion::regions::phi_of_r(xi)?;
        let lower = -PI / 2.0 + 2.0 * phi;
        for frac in [0.1, 0.3, 0.6, 0.9] {
            let s = Complex64::from_polar(r, lower * (1.0 - frac) + 1e-3);
            if !crate::expansion::regions::in_l(s) {
                continue;
            }
            let truth = r_quad_saddle(s)?;
            let f = crate::expansion::frames::saddle_frame(s)?;
            let diff = truth.sub(&crate::oracle::zeta_sum(s, f.ell));
            let scale = r.sqrt() / r.ln();
            c = c.min(-diff.log_mod / scale);
        }
    }
    Ok(if c.is_finite() { c / 2.0 } else { 0.0 })
}
