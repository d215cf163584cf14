//! Riemann's auxiliary function R(s).
//!
//! R is the entire function with ζ(s) = R(s) + χ(s)·conj(R(1 − conj s)).
//! The crate evaluates it through saddle-point expansions on either side of
//! the critical strip, generates the expansion coefficients in exact
//! arithmetic, and checks everything against direct contour quadrature.

pub mod calibration;
pub mod coeffs;
pub mod contour;
pub mod error;
pub mod expansion;
pub mod gfunc;
pub mod jets;
pub mod oracle;
pub mod scaled;
pub mod special;
pub mod verify;
pub mod zeros;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use scaled::ScaledComplex;

pub(crate) const PI: f64 = std::f64::consts::PI;
pub(crate) const SQRT_2: f64 = std::f64::consts::SQRT_2;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
