//! Truncated power series over binary64 complex numbers, and exact
//! polynomials with Gaussian-rational coefficients.

use crate::{c, Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Truncated Taylor series Σ coeffs[k]·h^k, modulo h^(order+1).
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    coeffs: Vec<Complex64>,
}

impl Jet {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        Jet { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Jet::new(coeffs.iter().map(|&x| c(x, 0.0)).collect())
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut v = vec![c(0.0, 0.0); order + 1];
        v[0] = value;
        Jet { coeffs: v }
    }

    /// The jet of h ↦ x0 + h.
    pub fn variable(x0: Complex64, order: usize) -> Self {
        let mut j = Jet::constant(x0, order);
        if order >= 1 {
            j.coeffs[1] = c(1.0, 0.0);
        }
        j
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// The n-th derivative at the expansion point.
    pub fn derivative(&self, n: usize) -> Complex64 {
        let mut f = 1.0;
        for k in 2..=n {
            f *= k as f64;
        }
        self.coeffs[n] * f
    }

    pub fn truncate(&self, order: usize) -> Jet {
        Jet::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn scale(&self, k: Complex64) -> Jet {
        Jet::new(self.coeffs.iter().map(|&a| a * k).collect())
    }

    fn check_order(&self, other: &Jet) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Jet("operands have different orders"));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Jet) -> Result<Jet> {
        self.check_order(other)?;
        Ok(Jet::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect()))
    }

    pub fn try_sub(&self, other: &Jet) -> Result<Jet> {
        self.check_order(other)?;
        Ok(Jet::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect()))
    }

    pub fn try_mul(&self, other: &Jet) -> Result<Jet> {
        self.check_order(other)?;
        let n = self.coeffs.len();
        let mut out = vec![c(0.0, 0.0); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == c(0.0, 0.0) {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Jet::new(out))
    }

    /// Quotient. When both constant terms vanish exactly the common factor h
    /// is cancelled first, which lowers the order by one per cancellation.
    pub fn try_div(&self, other: &Jet) -> Result<Jet> {
        self.check_order(other)?;
        let zero = c(0.0, 0.0);
        if other.coeffs[0] == zero {
            if self.coeffs[0] != zero {
                return Err(Error::Jet("division by a jet vanishing at the origin"));
            }
            if self.order() == 0 {
                return Err(Error::Jet("removable division exhausted the jet order"));
            }
            let a = Jet::new(self.coeffs[1..].to_vec());
            let b = Jet::new(other.coeffs[1..].to_vec());
            return a.try_div(&b);
        }
        let n = self.coeffs.len();
        let b0inv = other.coeffs[0].inv();
        let mut out = vec![zero; n];
        for k in 0..n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= other.coeffs[j] * out[k - j];
            }
            out[k] = acc * b0inv;
        }
        Ok(Jet::new(out))
    }

    pub fn exp(&self) -> Jet {
        let n = self.coeffs.len();
        let mut out = vec![c(0.0, 0.0); n];
        out[0] = self.coeffs[0].exp();
        for k in 1..n {
            let mut acc = c(0.0, 0.0);
            for j in 1..=k {
                acc += self.coeffs[j] * out[k - j] * j as f64;
            }
            out[k] = acc / k as f64;
        }
        Jet::new(out)
    }

    pub fn ln(&self) -> Result<Jet> {
        let a0 = self.coeffs[0];
        if a0.im == 0.0 && a0.re <= 0.0 {
            return Err(Error::Jet("logarithm at a point of the branch cut"));
        }
        let n = self.coeffs.len();
        let mut out = vec![c(0.0, 0.0); n];
        out[0] = a0.ln();
        for k in 1..n {
            let mut acc = self.coeffs[k] * k as f64;
            for j in 1..k {
                acc -= out[j] * self.coeffs[k - j] * j as f64;
            }
            out[k] = acc / (a0 * k as f64);
        }
        Ok(Jet::new(out))
    }

    /// self ∘ inner, where inner has zero constant term.
    pub fn compose(&self, inner: &Jet) -> Result<Jet> {
        self.check_order(inner)?;
        if inner.coeffs[0] != c(0.0, 0.0) {
            return Err(Error::Jet("inner series must vanish at the origin"));
        }
        let mut acc = Jet::constant(*self.coeffs.last().unwrap(), self.order());
        for a in self.coeffs.iter().rev().skip(1) {
            acc = acc.try_mul(inner)?;
            acc.coeffs[0] += a;
        }
        Ok(acc)
    }

    /// Re-expand about x0 + delta.
    pub fn shift(&self, delta: Complex64) -> Jet {
        // Horner-style synthetic division, repeated
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = a[j + 1] * delta;
                a[j] += t;
            }
        }
        Jet::new(a)
    }

    /// Evaluate the truncated polynomial at h.
    pub fn eval(&self, h: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(c(0.0, 0.0), |acc, a| acc * h + a)
    }
}

/// Exact a + b·i with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational { re: rat(re, 1), im: rat(im, 1) }
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        GaussianRational { re: &self.re * r, im: &self.im * r }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        let den = &other.re * &other.re + &other.im * &other.im;
        if den.is_zero() {
            return Err(Error::Coeff("division by zero".into()));
        }
        let num = self * &other.conj();
        Ok(GaussianRational { re: num.re / &den, im: num.im / den })
    }

    pub fn to_complex(&self) -> Complex64 {
        c(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }
}

/// Correctly rounded enough for our purposes even when numerator and
/// denominator overflow binary64 separately.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = nb - db - 60;
    let (n, d) = if shift > 0 {
        (r.numer().clone(), r.denom().clone() << shift as usize)
    } else {
        (r.numer().clone() << (-shift) as usize, r.denom().clone())
    };
    let q = (n / d).to_f64().unwrap_or(f64::NAN);
    q * 2f64.powi(shift as i32)
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}i", self.re, sign, self.im.abs())
            }
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

/// Serialized form: numerator/denominator strings for both parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianRationalRepr {
    pub re_num: String,
    pub re_den: String,
    pub im_num: String,
    pub im_den: String,
}

impl From<&GaussianRational> for GaussianRationalRepr {
    fn from(g: &GaussianRational) -> Self {
        GaussianRationalRepr {
            re_num: g.re.numer().to_string(),
            re_den: g.re.denom().to_string(),
            im_num: g.im.numer().to_string(),
            im_den: g.im.denom().to_string(),
        }
    }
}

impl TryFrom<&GaussianRationalRepr> for GaussianRational {
    type Error = Error;
    fn try_from(r: &GaussianRationalRepr) -> Result<Self> {
        let p = |s: &str| s.parse::<BigInt>().map_err(|e| Error::Coeff(format!("bad integer {s:?}: {e}")));
        let (rd, id) = (p(&r.re_den)?, p(&r.im_den)?);
        if rd.is_zero() || id.is_zero() {
            return Err(Error::Coeff("zero denominator".into()));
        }
        Ok(GaussianRational { re: BigRational::new(p(&r.re_num)?, rd), im: BigRational::new(p(&r.im_num)?, id) })
    }
}

/// Polynomial with Gaussian-rational coefficients, lowest degree first,
/// trailing zeros trimmed (the zero polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<GaussianRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RationalPoly::new(vec![GaussianRational::one()])
    }

    pub fn monomial(coef: GaussianRational, deg: usize) -> Self {
        let mut v = vec![GaussianRational::zero(); deg + 1];
        v[deg] = coef;
        RationalPoly::new(v)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        RationalPoly::new(c.iter().map(|&x| GaussianRational::from_ints(x, 0)).collect())
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Some(0) if even, Some(1) if odd, None if mixed. The zero polynomial is both; reports 0.
    pub fn parity(&self) -> Option<usize> {
        let mut par = None;
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match par {
                None => par = Some(k % 2),
                Some(p) if p != k % 2 => return None,
                _ => {}
            }
        }
        Some(par.unwrap_or(0))
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_real())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        RationalPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        RationalPoly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![GaussianRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        RationalPoly::new(v)
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        RationalPoly::new(self.coeffs.iter().map(|a| a * k).collect())
    }

    pub fn derivative(&self) -> Self {
        RationalPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, a)| a.scale(&rat(k as i64, 1))).collect())
    }

    /// Antiderivative vanishing at 0.
    pub fn integral(&self) -> Self {
        let mut v = vec![GaussianRational::zero()];
        v.extend(self.coeffs.iter().enumerate().map(|(k, a)| a.scale(&rat(1, k as i64 + 1))));
        RationalPoly::new(v)
    }

    /// x ↦ p(k·x).
    pub fn dilate(&self, k: &GaussianRational) -> Self {
        let mut pw = GaussianRational::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(a * &pw);
            pw = &pw * k;
        }
        RationalPoly::new(v)
    }

    pub fn to_f64(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|a| a.to_complex()).collect()
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(c(0.0, 0.0), |acc, a| acc * x + a.to_complex())
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({a})")?,
                1 => write!(f, "({a})x")?,
                _ => write!(f, "({a})x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Physicists' Hermite polynomial H_n.
pub fn hermite_poly(n: usize) -> RationalPoly {
    let mut prev = RationalPoly::one();
    if n == 0 {
        return prev;
    }
    let two_x = RationalPoly::from_ints(&[0, 2]);
    let mut cur = two_x.clone();
    for k in 1..n {
        let next = two_x.mul(&cur).sub(&prev.scale(&GaussianRational::from_ints(2 * k as i64, 0)));
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jet_examples() {
        let e = Jet::from_real(&[0.0, 1.0, 0.0]).exp();
        assert_eq!(e, Jet::from_real(&[1.0, 1.0, 0.5]));
        let q = Jet::from_real(&[0.0, 1.0]).try_div(&Jet::from_real(&[0.0, 1.0])).unwrap();
        assert_eq!(q, Jet::from_real(&[1.0]));
        let m = Jet::from_real(&[1.0, 2.0]).try_mul(&Jet::from_real(&[3.0, 4.0])).unwrap();
        assert_eq!(m, Jet::from_real(&[3.0, 10.0]));
    }

    #[test]
    fn jet_errors() {
        let a = Jet::from_real(&[1.0, 1.0]);
        let b = Jet::from_real(&[0.0, 1.0]);
        assert!(a.try_div(&b).is_err());
        assert!(Jet::from_real(&[-1.0, 1.0]).ln().is_err());
        assert!(a.try_add(&Jet::from_real(&[1.0])).is_err());
    }

    #[test]
    fn shift_matches_reexpansion() {
        // exp about 0 shifted by 0.1 equals exp about 0.1, up to truncation
        let j = Jet::variable(c(0.0, 0.0), 30).exp();
        let s = j.shift(c(0.1, 0.0));
        let d = Jet::variable(c(0.1, 0.0), 30).exp();
        for k in 0..20 {
            assert!((s.coeffs()[k] - d.coeffs()[k]).norm() < 1e-15, "{k}");
        }
    }

    #[test]
    fn hermite_small() {
        assert_eq!(hermite_poly(0), RationalPoly::from_ints(&[1]));
        assert_eq!(hermite_poly(2), RationalPoly::from_ints(&[-2, 0, 4]));
        assert_eq!(hermite_poly(3), RationalPoly::from_ints(&[0, -12, 0, 8]));
    }
}
