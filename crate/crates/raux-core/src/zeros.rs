//! Zeros of R(s) by the argument principle on rectangles, with Newton refinement.

use crate::calibration::Calibration;
use crate::contour::{winding_number, WindingOptions};
use crate::error::fmt_c;
use crate::expansion::eval_auto;
use crate::{c, Error, Result, ScaledComplex};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Relative accuracy requested from the evaluator along box edges.
const EDGE_TARGET: f64 = 1e-8;
/// Longest edge piece handed to one worker.
const PIECE: f64 = 20.0;
/// Inward shifts tried when an edge passes through or next to a zero.
const EDGE_SHIFTS: [f64; 4] = [0.0, 1e-4, 3e-4, 1e-3];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroBox {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub count: i64,
    pub zeros: Vec<Complex64>,
}

impl ZeroBox {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        ZeroBox { x0, x1, y0, y1, count: 0, zeros: Vec::new() }
    }

    fn quarters(&self) -> [ZeroBox; 4] {
        let xm = 0.5 * (self.x0 + self.x1);
        let ym = 0.5 * (self.y0 + self.y1);
        [
            ZeroBox::new(self.x0, xm, self.y0, ym),
            ZeroBox::new(xm, self.x1, self.y0, ym),
            ZeroBox::new(self.x0, xm, ym, self.y1),
            ZeroBox::new(xm, self.x1, ym, self.y1),
        ]
    }

    fn center(&self) -> Complex64 {
        c(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))
    }

    fn size(&self) -> f64 {
        (self.x1 - self.x0).max(self.y1 - self.y0)
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ZeroCount {
    pub count: i64,
    /// inward shift applied to every edge (0 when the box was used as given)
    pub shift: f64,
    pub evaluations: usize,
}

pub fn eval_r(s: Complex64, cal: &Calibration) -> Result<ScaledComplex> {
    eval_auto(s, EDGE_TARGET, cal).map(|r| r.value)
}

fn boundary(x0: f64, x1: f64, y0: f64, y1: f64) -> Vec<Complex64> {
    let corners = [c(x0, y0), c(x1, y0), c(x1, y1), c(x0, y1)];
    let mut out = Vec::new();
    for i in 0..4 {
        let (a, b) = (corners[i], corners[(i + 1) % 4]);
        let n = ((b - a).norm() / PIECE).ceil().max(1.0) as usize;
        for k in 0..n {
            out.push(a + (b - a) * (k as f64 / n as f64));
        }
    }
    out
}

/// Number of zeros inside the open box, counted with multiplicity.
pub fn count_zeros(b: &ZeroBox, cal: &Calibration) -> Result<ZeroCount> {
    let phase = |s: Complex64| -> Result<f64> {
        let v = eval_r(s, cal)?;
        if v.is_zero() {
            return Err(Error::EdgeZero(fmt_c(s)));
        }
        Ok(v.phase)
    };
    let mut last = None;
    for d in EDGE_SHIFTS {
        let verts = boundary(b.x0 + d, b.x1 - d, b.y0 + d, b.y1 - d);
        match winding_number(&verts, phase, &WindingOptions::default()) {
            Ok(w) => return Ok(ZeroCount { count: w.winding, shift: d, evaluations: w.evaluations }),
            Err(e @ Error::EdgeZero(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::EdgeZero("box".into())))
}

/// Newton's method with a central-difference derivative.
pub fn refine_zero(guess: Complex64, cal: &Calibration) -> Result<Complex64> {
    let h = 1e-4;
    let mut z = guess;
    for it in 0..50 {
        let f0 = eval_r(z, cal)?;
        if f0.is_zero() {
            return Ok(z);
        }
        let fp = eval_r(z + h, cal)?;
        let fm = eval_r(z - h, cal)?;
        let scale = f0.log_mod.max(fp.log_mod).max(fm.log_mod);
        let d = (fp.to_complex_scaled(scale) - fm.to_complex_scaled(scale)) / (2.0 * h);
        let step = f0.to_complex_scaled(scale) / d;
        if !step.re.is_finite() || !step.im.is_finite() || (it == 0 && step.norm() > 0.5) {
            return Err(Error::NoConvergence(format!("{} is outside the capture radius of a zero", fmt_c(guess))));
        }
        z -= step;
        if step.norm() < 1e-10 {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence(format!("Newton from {} did not settle in 50 steps", fmt_c(guess))))
}

/// Subdivide until each box holds one zero, then refine it.
pub fn census(b: &ZeroBox, cal: &Calibration) -> Result<Vec<ZeroBox>> {
    let n = count_zeros(b, cal)?.count;
    census_known(b.clone(), n, cal)
}

fn census_known(mut b: ZeroBox, n: i64, cal: &Calibration) -> Result<Vec<ZeroBox>> {
    b.count = n;
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 && b.size() <= 2.0 {
        if let Ok(z) = refine_zero(b.center(), cal) {
            if z.re > b.x0 && z.re < b.x1 && z.im > b.y0 && z.im < b.y1 {
                b.zeros.push(z);
                return Ok(vec![b]);
            }
        }
    }
    if b.size() < 1e-6 {
        // a multiple zero or a cluster below resolution
        if let Ok(z) = refine_zero(b.center(), cal) {
            b.zeros.extend(std::iter::repeat(z).take(n as usize));
        }
        return Ok(vec![b]);
    }
    let parts = b.quarters();
    let nested: Vec<Result<Vec<ZeroBox>>> = parts
        .into_par_iter()
        .map(|q| {
            let cnt = count_zeros(&q, cal)?.count;
            census_known(q, cnt, cal)
        })
        .collect();
    let mut out = Vec::new();
    for r in nested {
        out.extend(r?);
    }
    Ok(out)
}
