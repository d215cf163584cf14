//! Phase-accumulation winding numbers and sign grids.

use crate::scaled::wrap_phase;
use crate::{Error, Result, ScaledComplex, PI};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug)]
pub struct WindingOptions {
    /// Starting step length along each edge.
    pub initial_step: f64,
    /// Refinement gives up below this step.
    pub min_step: f64,
    /// Largest accepted phase change between neighbouring samples.
    pub max_increment: f64,
}

impl Default for WindingOptions {
    fn default() -> Self {
        WindingOptions { initial_step: 0.25, min_step: 1e-7, max_increment: PI / 2.0 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Winding {
    pub winding: i64,
    pub total_phase: f64,
    pub evaluations: usize,
}

/// Winding number of a function around the closed polygon `vertices`
/// (implicitly closed), given its phase at any point.
pub fn winding_number<F>(vertices: &[Complex64], phase: F, opts: &WindingOptions) -> Result<Winding>
where
    F: Fn(Complex64) -> Result<f64> + Sync,
{
    let n = vertices.len();
    let edges: Vec<(Complex64, Complex64)> = (0..n).map(|i| (vertices[i], vertices[(i + 1) % n])).collect();
    let parts: Vec<Result<(f64, usize)>> = edges.par_iter().map(|&(a, b)| edge_phase(a, b, &phase, opts)).collect();
    let mut total = 0.0;
    let mut evals = 0;
    for p in parts {
        let (ph, e) = p?;
        total += ph;
        evals += e;
    }
    let w = total / (2.0 * PI);
    let rounded = w.round();
    if (w - rounded).abs() > 0.1 {
        return Err(Error::EdgeZero(format!("accumulated phase {total} is not a multiple of 2π")));
    }
    Ok(Winding { winding: rounded as i64, total_phase: total, evaluations: evals })
}

/// Phase change of f along the segment a → b.
pub fn edge_phase<F>(a: Complex64, b: Complex64, phase: &F, opts: &WindingOptions) -> Result<(f64, usize)>
where
    F: Fn(Complex64) -> Result<f64>,
{
    let len = (b - a).norm();
    let steps = (len / opts.initial_step).ceil().max(1.0) as usize;
    let mut total = 0.0;
    let mut evals = 1;
    let mut t0 = 0.0;
    let mut p0 = phase(a)?;
    let mut stack: Vec<(f64, f64)> = Vec::new();
    for k in (1..=steps).rev() {
        let t = k as f64 / steps as f64;
        stack.push((t, f64::NAN));
    }
    while let Some((t1, cached)) = stack.pop() {
        let p1 = if cached.is_nan() {
            evals += 1;
            phase(a + (b - a) * t1)?
        } else {
            cached
        };
        let d = wrap_phase(p1 - p0);
        if d.abs() < opts.max_increment {
            total += d;
            t0 = t1;
            p0 = p1;
            continue;
        }
        if (t1 - t0) * len < opts.min_step {
            return Err(Error::EdgeZero(format!(
                "phase jump {d:.3} unresolved near {}",
                crate::error::fmt_c(a + (b - a) * t0)
            )));
        }
        let tm = 0.5 * (t0 + t1);
        stack.push((t1, p1));
        stack.push((tm, f64::NAN));
    }
    Ok((total, evals))
}

/// Sign grid of the real and imaginary parts of a function.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct XrayCell {
    pub x: f64,
    pub y: f64,
    pub sign_re: i8,
    pub sign_im: i8,
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Row-major grid over [x0, x1] × [y0, y1].
pub fn xray<F>(window: [f64; 4], step: f64, f: F) -> Vec<XrayCell>
where
    F: Fn(Complex64) -> Option<ScaledComplex> + Sync,
{
    let [x0, x1, y0, y1] = window;
    let nx = ((x1 - x0) / step).round() as usize + 1;
    let ny = ((y1 - y0) / step).round() as usize + 1;
    (0..nx * ny)
        .into_par_iter()
        .map(|idx| {
            let (iy, ix) = (idx / nx, idx % nx);
            let x = x0 + ix as f64 * step;
            let y = y0 + iy as f64 * step;
            let (sr, si) = match f(Complex64::new(x, y)) {
                Some(v) if !v.is_zero() => (sign(v.phase.cos()), sign(v.phase.sin())),
                _ => (0, 0),
            };
            XrayCell { x, y, sign_re: sr, sign_im: si }
        })
        .collect()
}
