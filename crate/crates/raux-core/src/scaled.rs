use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::ops::{Div, Mul, Neg};

/// A complex number stored as `exp(log_mod + i·phase)`.
///
/// Values of R(s) in the third quadrant grow like e^(π|t|/2), far past the
/// binary64 range, so every prefactor is carried in this form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaledComplex {
    pub log_mod: f64,
    pub phase: f64,
}

/// Reduce an angle to (−π, π].
pub fn wrap_phase(a: f64) -> f64 {
    if a > -PI && a <= PI {
        return a;
    }
    let r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

impl ScaledComplex {
    pub const ZERO: ScaledComplex = ScaledComplex { log_mod: f64::NEG_INFINITY, phase: 0.0 };
    pub const ONE: ScaledComplex = ScaledComplex { log_mod: 0.0, phase: 0.0 };

    pub fn new(log_mod: f64, phase: f64) -> Self {
        if log_mod == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        ScaledComplex { log_mod, phase: wrap_phase(phase) }
    }

    /// `exp(w)` for a complex exponent.
    pub fn from_log(w: Complex64) -> Self {
        Self::new(w.re, w.im)
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::ZERO;
        }
        let (m, a) = z.to_polar();
        if m.is_finite() && m > 0.0 && m.is_normal() {
            return ScaledComplex { log_mod: m.ln(), phase: a };
        }
        // subnormal or overflowing modulus: rescale first
        let s = z.re.abs().max(z.im.abs());
        let w = z / s;
        ScaledComplex { log_mod: s.ln() + w.norm().ln(), phase: w.arg() }
    }

    pub fn is_zero(&self) -> bool {
        self.log_mod == f64::NEG_INFINITY
    }

    /// Back to binary64; saturates to infinity or zero outside the range.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.log_mod.exp(), self.phase)
    }

    /// The value times e^(−shift), useful to compare numbers of similar size.
    pub fn to_complex_scaled(&self, shift: f64) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar((self.log_mod - shift).exp(), self.phase)
    }

    pub fn abs(&self) -> f64 {
        self.log_mod.exp()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.log_mod, -self.phase)
    }

    pub fn recip(&self) -> Self {
        Self::new(-self.log_mod, -self.phase)
    }

    pub fn mul_complex(&self, z: Complex64) -> Self {
        *self * Self::from_complex(z)
    }

    pub fn powf(&self, e: f64) -> Self {
        if self.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.log_mod * e, self.phase * e)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (big, small) = if self.log_mod >= other.log_mod { (self, other) } else { (other, self) };
        let ratio = Complex64::from_polar((small.log_mod - big.log_mod).exp(), small.phase - big.phase);
        let f = Complex64::new(1.0, 0.0) + ratio;
        if f.re == 0.0 && f.im == 0.0 {
            return Self::ZERO;
        }
        Self::new(big.log_mod + f.norm().ln(), big.phase + f.arg())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&-*other)
    }

    /// Sum of many scaled values, accumulated relative to the largest one.
    pub fn sum<'a, I: IntoIterator<Item = &'a ScaledComplex>>(items: I) -> Self {
        let v: Vec<&ScaledComplex> = items.into_iter().collect();
        let top = v.iter().map(|x| x.log_mod).fold(f64::NEG_INFINITY, f64::max);
        if top == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        let mut acc = crate::special::NeumaierSum::default();
        for x in v {
            acc.add(x.to_complex_scaled(top));
        }
        Self::from_complex(acc.total()).shifted(top)
    }

    /// Multiply by e^(d).
    pub fn shifted(&self, d: f64) -> Self {
        if self.is_zero() {
            return *self;
        }
        Self::new(self.log_mod + d, self.phase)
    }

    /// |a − b| / |b| computed without leaving log space for the scale.
    pub fn rel_diff(&self, other: &Self) -> f64 {
        if other.is_zero() {
            return if self.is_zero() { 0.0 } else { f64::INFINITY };
        }
        let a = self.to_complex_scaled(other.log_mod);
        let b = other.to_complex_scaled(other.log_mod);
        (a - b).norm() / b.norm()
    }
}

impl Mul for ScaledComplex {
    type Output = ScaledComplex;
    fn mul(self, o: ScaledComplex) -> ScaledComplex {
        if self.is_zero() || o.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.log_mod + o.log_mod, self.phase + o.phase)
    }
}

impl Div for ScaledComplex {
    type Output = ScaledComplex;
    fn div(self, o: ScaledComplex) -> ScaledComplex {
        self * o.recip()
    }
}

impl Neg for ScaledComplex {
    type Output = ScaledComplex;
    fn neg(self) -> ScaledComplex {
        if self.is_zero() {
            return self;
        }
        Self::new(self.log_mod, self.phase + PI)
    }
}

impl From<Complex64> for ScaledComplex {
    fn from(z: Complex64) -> Self {
        Self::from_complex(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let z = Complex64::new(-3.0, 4.0);
        let s = ScaledComplex::from_complex(z);
        assert!((s.to_complex() - z).norm() < 1e-14);
        assert!((s.log_mod - 5f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn huge_sum_keeps_phase() {
        let a = ScaledComplex::new(2000.0, 0.3);
        let b = ScaledComplex::new(2000.0, 0.3 + PI);
        assert!(a.add(&b).is_zero() || a.add(&b).log_mod < 2000.0 - 30.0);
        let c = a.add(&a);
        assert!((c.log_mod - 2000.0 - 2f64.ln()).abs() < 1e-13);
        assert!((c.phase - 0.3).abs() < 1e-15);
    }

    #[test]
    fn wrap() {
        assert_eq!(wrap_phase(PI), PI);
        assert!((wrap_phase(-PI) - PI).abs() < 1e-15);
        assert!((wrap_phase(7.0) - (7.0 - 2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn subnormal_input() {
        let z = Complex64::new(1e-310, -1e-310);
        let s = ScaledComplex::from_complex(z);
        assert!((s.log_mod - (1e-310f64 * 2f64.sqrt()).ln()).abs() < 1e-6);
    }
}
