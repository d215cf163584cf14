//! Log-Gamma, χ(s), the Riemann–Siegel theta function and an Euler–Maclaurin ζ.

use crate::error::fmt_c;
use crate::{c, Error, Result, ScaledComplex, PI};
use num_complex::Complex64;

/// B_2, B_4, …, B_60.
#[allow(clippy::excessive_precision)]
pub(crate) const BERNOULLI_EVEN: [f64; 30] = [
    1.66666666666666657e-01,
    -3.33333333333333329e-02,
    2.38095238095238082e-02,
    -3.33333333333333329e-02,
    7.57575757575757597e-02,
    -2.53113553113553102e-01,
    1.16666666666666674e+00,
    -7.09215686274509771e+00,
    5.49711779448621556e+01,
    -5.29124242424242425e+02,
    6.19212318840579701e+03,
    -8.65802531135531171e+04,
    1.42551716666666674e+06,
    -2.72982310678160936e+07,
    6.01580873900642395e+08,
    -1.51163157670921574e+10,
    4.29614643061166687e+11,
    -1.37116552050883320e+13,
    4.88332318973593188e+14,
    -1.92965793419400680e+16,
    8.41693047573682560e+17,
    -4.03380718540594545e+19,
    2.11507486380819926e+21,
    -1.20866265222965262e+23,
    7.50086674607696417e+24,
    -5.03877810148106885e+26,
    3.65287764848181223e+28,
    -2.84987693024508824e+30,
    2.38654274996836274e+32,
    -2.13999492572253349e+34,
];

const LN_2PI: f64 = 1.8378770664093454835606594728112;

/// Compensated (Neumaier) summation of complex terms.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier_step(acc: &mut (f64, f64), x: f64) {
    let (s, comp) = *acc;
    let t = s + x;
    let comp = if s.abs() >= x.abs() { comp + ((s - t) + x) } else { comp + ((x - t) + s) };
    *acc = (t, comp);
}

impl NeumaierSum {
    pub fn add(&mut self, z: Complex64) {
        neumaier_step(&mut self.re, z.re);
        neumaier_step(&mut self.im, z.im);
    }

    pub fn total(&self) -> Complex64 {
        c(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

/// log(1 + w) without cancellation for small w.
pub fn clog1p(w: Complex64) -> Complex64 {
    let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
    let im = w.im.atan2(1.0 + w.re);
    c(re, im)
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn stirling(z: Complex64) -> Complex64 {
    let mut acc = (z - 0.5) * z.ln() - z + 0.5 * LN_2PI;
    let zinv = z.inv();
    let z2inv = zinv * zinv;
    let mut p = zinv;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let n = 2.0 * (k as f64 + 1.0);
        let term = p * (b / (n * (n - 1.0)));
        acc += term;
        if term.norm() < 1e-18 * acc.norm().max(1.0) {
            break;
        }
        p *= z2inv;
    }
    acc
}

/// Principal branch of log Γ(z), continuous off the negative real axis and
/// taking the limit from above on it.
pub fn gamma_log(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Precondition(format!("non-finite argument {}", fmt_c(z))));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(fmt_c(z)));
    }
    if z.im < 0.0 {
        return gamma_log(z.conj()).map(|w| w.conj());
    }
    if z.re < 0.0 {
        // reflection, with the branch fixed by continuity in the upper half-plane
        let e = (c(0.0, 2.0 * PI) * z).exp();
        let one_minus = c(1.0, 0.0) - e;
        if one_minus.norm() == 0.0 {
            return Err(Error::Pole(fmt_c(z)));
        }
        let rest = gamma_log(c(1.0, 0.0) - z)?;
        return Ok(LN_2PI + c(0.0, PI) * (z - 0.5) - clog1p(-e) - rest);
    }
    let mut shift = c(0.0, 0.0);
    let mut zz = z;
    while zz.norm() < 10.0 {
        shift += zz.ln();
        zz += 1.0;
    }
    Ok(stirling(zz) - shift)
}

/// χ(s) = π^(s−1/2) Γ((1−s)/2) / Γ(s/2).
pub fn chi(s: Complex64) -> Result<ScaledComplex> {
    let a = (c(1.0, 0.0) - s) * 0.5;
    if is_nonpositive_integer(a) {
        return Err(Error::Pole(fmt_c(s)));
    }
    if is_nonpositive_integer(s * 0.5) {
        return Ok(ScaledComplex::ZERO);
    }
    let w = (s - 0.5) * PI.ln() + gamma_log(a)? - gamma_log(s * 0.5)?;
    Ok(ScaledComplex::from_log(w))
}

/// ϑ(t) = Im log Γ(1/4 + it/2) − (t/2) log π.
pub fn theta_rs(t: f64) -> f64 {
    // the argument is never a pole
    gamma_log(c(0.25, 0.5 * t)).map(|w| w.im).unwrap_or(f64::NAN) - 0.5 * t * PI.ln()
}

/// ζ(s) by Euler–Maclaurin summation, with the functional equation used for
/// Re s < 0.
pub fn zeta_em(s: Complex64) -> Result<Complex64> {
    if s == c(1.0, 0.0) {
        return Err(Error::Pole("1".into()));
    }
    if s.re < 0.0 {
        if is_nonpositive_integer(s * 0.5) {
            return Ok(c(0.0, 0.0));
        }
        let x = chi(s)?;
        let z = zeta_em(c(1.0, 0.0) - s)?;
        return Ok(x.mul_complex(z).to_complex());
    }
    let m_max = BERNOULLI_EVEN.len();
    let n_cut = (((s.norm() + 2.0 * m_max as f64) / PI).ceil() as usize + 1).max(10);
    let mut sum = NeumaierSum::default();
    for n in 1..n_cut {
        sum.add((-s * (n as f64).ln()).exp());
    }
    let nf = n_cut as f64;
    let ln_n = nf.ln();
    let n_pow = (-s * ln_n).exp();
    sum.add(n_pow * nf / (s - 1.0));
    sum.add(n_pow * 0.5);
    // Σ B_2j/(2j)! · s(s+1)…(s+2j−2) · N^(−s−2j+1)
    let mut rising = s;
    let mut fact = 2.0;
    let mut npow = n_pow / nf;
    let partial = sum.total().norm().max(1e-300);
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = rising * npow * (b / fact);
        sum.add(term);
        if term.norm() < 1e-17 * partial {
            break;
        }
        let k = 2.0 * (j as f64 + 1.0);
        rising *= (s + (k - 1.0)) * (s + k);
        fact *= (k + 1.0) * (k + 2.0);
        npow /= nf * nf;
    }
    Ok(sum.total())
}

/// Σ_{n>m} n^(−w) = ζ(w) − Σ_{n≤m} n^(−w), in scaled form.
///
/// For Re w ≥ 1/2 the tail is summed directly relative to (m+1)^(−w), so it
/// keeps full relative accuracy even when it is far smaller than ζ(w).
pub fn zeta_tail(w: Complex64, m: u64) -> Result<ScaledComplex> {
    if w == c(1.0, 0.0) {
        return Err(Error::Pole("1".into()));
    }
    if w.re < 0.5 {
        let mut acc = NeumaierSum::default();
        acc.add(zeta_em(w)?);
        for n in 1..=m {
            acc.add(-(-w * (n as f64).ln()).exp());
        }
        return Ok(ScaledComplex::from_complex(acc.total()));
    }
    let a = (m + 1) as f64;
    let la = a.ln();
    let term = |x: f64| (-w * (x.ln() - la)).exp();
    let m_max = BERNOULLI_EVEN.len();
    let n_cut = ((((w.norm() + 2.0 * m_max as f64) / PI).ceil() as u64 + 1).max(10)).max(m + 1);
    let mut sum = NeumaierSum::default();
    for n in (m + 1)..n_cut {
        sum.add(term(n as f64));
    }
    let nf = n_cut as f64;
    let n_pow = term(nf);
    sum.add(n_pow * nf / (w - 1.0));
    sum.add(n_pow * 0.5);
    let mut rising = w;
    let mut fact = 2.0;
    let mut npow = n_pow / nf;
    let partial = sum.total().norm().max(1e-300);
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let t = rising * npow * (b / fact);
        sum.add(t);
        if t.norm() < 1e-17 * partial {
            break;
        }
        let k = 2.0 * (j as f64 + 1.0);
        rising *= (w + (k - 1.0)) * (w + k);
        fact *= (k + 1.0) * (k + 2.0);
        npow /= nf * nf;
    }
    Ok(ScaledComplex::from_complex(sum.total()) * ScaledComplex::from_log(-w * la))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_trivial() {
        assert!(gamma_log(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        assert!((gamma_log(c(0.5, 0.0)).unwrap() - c(0.5 * PI.ln(), 0.0)).norm() < 1e-14);
        assert!((gamma_log(c(5.0, 0.0)).unwrap() - c(24f64.ln(), 0.0)).norm() < 1e-14);
        assert!(matches!(gamma_log(c(-3.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(gamma_log(c(0.0, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn chi_examples() {
        let x = chi(c(0.5, 0.0)).unwrap().to_complex();
        assert!((x - 1.0).norm() < 1e-15);
        let x = chi(c(-1.0, 0.0)).unwrap().to_complex();
        assert!((x + 1.0 / (2.0 * PI * PI)).norm() < 1e-15);
        assert!(chi(c(-6.0, 0.0)).unwrap().is_zero());
        assert!(chi(c(3.0, 0.0)).is_err());
    }

    #[test]
    fn zeta_trivial() {
        assert!((zeta_em(c(2.0, 0.0)).unwrap() - PI * PI / 6.0).norm() < 1e-15);
        assert!((zeta_em(c(0.0, 0.0)).unwrap() + 0.5).norm() < 1e-15);
        assert!((zeta_em(c(-1.0, 0.0)).unwrap() + 1.0 / 12.0).norm() < 1e-15);
        assert!(zeta_em(c(-4.0, 0.0)).unwrap().norm() < 1e-15);
    }
}
