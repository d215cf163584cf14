//! Exact expansion coefficients.
//!
//! The correction terms of the right-plane expansion are
//! D_k(q) = π^(−2k) Σ_j (π/2i)^j d[k][j] G^(3k−2j)(q), with rational d[k][j]
//! fixed by a three-term recurrence and, for even 3k, a closure relation
//! coming from U_k(0) = 0.

use crate::jets::{hermite_poly, rat, GaussianRational, GaussianRationalRepr, Jet, RationalPoly};
use crate::{Error, Result, PI};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::sync::LazyLock;

/// Largest truncation order the evaluators support.
pub const KMAX: usize = 24;

/// d[k][j] for 0 ≤ k ≤ kmax, 0 ≤ j ≤ ⌊3k/2⌋. Entries are real.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTable {
    rows: Vec<Vec<BigRational>>,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl CoeffTable {
    pub fn kmax(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, k: usize) -> &[BigRational] {
        &self.rows[k]
    }

    /// d[k][j], zero outside the stored triangle.
    pub fn get(&self, k: usize, j: usize) -> BigRational {
        self.rows.get(k).and_then(|r| r.get(j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn row_f64(&self, k: usize) -> Vec<f64> {
        self.rows[k].iter().map(crate::jets::ratio_to_f64).collect()
    }

    pub fn to_repr(&self) -> Vec<Vec<GaussianRationalRepr>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| GaussianRationalRepr::from(&GaussianRational::real(x.clone()))).collect())
            .collect()
    }

    pub fn from_repr(rows: &[Vec<GaussianRationalRepr>]) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for (k, r) in rows.iter().enumerate() {
            if r.len() != 3 * k / 2 + 1 {
                return Err(Error::Coeff(format!("row {k} has {} entries", r.len())));
            }
            let mut row = Vec::with_capacity(r.len());
            for e in r {
                let g = GaussianRational::try_from(e)?;
                if !g.is_real() {
                    return Err(Error::Coeff(format!("row {k} has a non-real entry")));
                }
                row.push(g.re);
            }
            out.push(row);
        }
        if out.first().map(|r| r[0].is_one()) != Some(true) {
            return Err(Error::Coeff("table must start with d[0][0] = 1".into()));
        }
        Ok(CoeffTable { rows: out })
    }
}

/// Fill the d-table by the recurrence
/// (6k − 4j) d[k][j] = −d[k−1][j]/2 − d[k−1][j−1] + 2(3k−2j)(3k−2j+1) d[k−1][j−2],
/// and for j = 3k/2 by the closure Σ_j d[k][j] H_{3k−2j}(0) = 0.
pub fn build_d_table(kmax: usize) -> CoeffTable {
    let mut rows: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
    let half = rat(1, 2);
    for k in 1..=kmax {
        let prev = &rows[k - 1];
        let at = |j: isize| -> BigRational {
            if j < 0 {
                BigRational::zero()
            } else {
                prev.get(j as usize).cloned().unwrap_or_else(BigRational::zero)
            }
        };
        let jmax = 3 * k / 2;
        let mut row = Vec::with_capacity(jmax + 1);
        for j in 0..=jmax {
            let lead = 6 * k as i64 - 4 * j as i64;
            if lead == 0 {
                // closure: H_{2n}(0) = (−1)^n (2n)!/n!
                let n_top = 3 * k / 2;
                let mut acc = BigRational::zero();
                for (jj, d) in row.iter().enumerate() {
                    let n = n_top - jj;
                    let h0 = BigRational::from_integer(factorial(2 * n) / factorial(n));
                    let term: BigRational = d * h0;
                    if n % 2 == 0 {
                        acc -= term;
                    } else {
                        acc += term;
                    }
                }
                row.push(acc);
                continue;
            }
            let ji = j as isize;
            let m = (3 * k - 2 * j) as i64;
            let rhs = -(&half * at(ji)) - at(ji - 1) + rat(2 * m * (m + 1), 1) * at(ji - 2);
            row.push(rhs / rat(lead, 1));
        }
        rows.push(row);
    }
    CoeffTable { rows }
}

/// P_k (Taylor coefficients of g in τ) and U_k (from the U-recurrence).
#[derive(Clone, Debug, PartialEq)]
pub struct PkTable {
    pub p: Vec<RationalPoly>,
    pub u: Vec<RationalPoly>,
}

impl PkTable {
    pub fn kmax(&self) -> usize {
        self.p.len() - 1
    }
}

/// Coefficient of τ^k (k ≥ 1) in the exponent of g(τ, z):
/// −(i/8)(−1)^(k+3)(2i)^(k+2) z^(k+2)/(k+2).
fn exponent_term(k: usize) -> RationalPoly {
    let two_i = GaussianRational::from_ints(0, 2);
    let sign = if (k + 3) % 2 == 0 { 1 } else { -1 };
    let coef = &GaussianRational::new(BigRational::zero(), rat(-sign, 8)) * &two_i.pow(k as u32 + 2);
    RationalPoly::monomial(coef.scale(&rat(1, k as i64 + 2)), k + 2)
}

/// U_k(x) = ((1 − i)/2)^k P_k((−1 + i)x).
pub fn u_from_p(p: &RationalPoly, k: usize) -> RationalPoly {
    let f = GaussianRational::new(rat(1, 2), rat(-1, 2)).pow(k as u32);
    p.dilate(&GaussianRational::from_ints(-1, 1)).scale(&f)
}

pub fn build_pk(kmax: usize) -> PkTable {
    let e: Vec<RationalPoly> =
        (0..=kmax).map(|k| if k == 0 { RationalPoly::zero() } else { exponent_term(k) }).collect();
    let mut p = vec![RationalPoly::one()];
    for k in 1..=kmax {
        let mut acc = RationalPoly::zero();
        for j in 1..=k {
            acc = acc.add(&e[j].mul(&p[k - j]).scale(&GaussianRational::from_ints(j as i64, 0)));
        }
        p.push(acc.scale(&GaussianRational::real(rat(1, k as i64))));
    }
    let mut u = vec![RationalPoly::one()];
    let x = RationalPoly::from_ints(&[0, 2]);
    let x2 = RationalPoly::from_ints(&[0, 0, -2]);
    for k in 1..=kmax {
        let prev = &u[k - 1];
        let du = x2.mul(prev).add(&x.mul(&prev.derivative()));
        u.push(du.integral());
    }
    PkTable { p, u }
}

/// Coefficients d_j with u = Σ_j d_j H_{3k−2j}.
pub fn hermite_decompose(u: &RationalPoly, k: usize) -> Result<Vec<GaussianRational>> {
    let n = 3 * k;
    if u.degree().is_some_and(|d| d > n) {
        return Err(Error::Coeff(format!("degree {:?} exceeds {n}", u.degree())));
    }
    if u.parity() != Some(n % 2) {
        return Err(Error::Coeff(format!("polynomial does not have the parity of {n}")));
    }
    let mut rem = u.clone();
    let mut out = Vec::with_capacity(n / 2 + 1);
    for j in 0..=n / 2 {
        let deg = n - 2 * j;
        let lead = rem.coeff(deg);
        let two_pow = BigRational::from_integer(BigInt::one() << deg);
        let d = lead.scale(&(BigRational::one() / two_pow));
        rem = rem.sub(&hermite_poly(deg).scale(&d));
        out.push(d);
    }
    if !rem.is_zero() {
        return Err(Error::Coeff("non-zero remainder after Hermite decomposition".into()));
    }
    Ok(out)
}

/// One term c·π^e·G^(n)(q) of the symbolic form of D_k.
#[derive(Clone, Debug, PartialEq)]
pub struct DkTerm {
    pub deriv: usize,
    pub coef: GaussianRational,
    pub pi_power: i32,
}

/// D_k written as Σ coef·π^pi_power·G^(deriv), highest derivative first.
pub fn dk_symbolic(table: &CoeffTable, k: usize) -> Vec<DkTerm> {
    let minus_i_half = GaussianRational::new(BigRational::zero(), rat(-1, 2));
    (0..=3 * k / 2)
        .map(|j| DkTerm {
            deriv: 3 * k - 2 * j,
            coef: minus_i_half.pow(j as u32).scale(&table.get(k, j)),
            pi_power: j as i32 - 2 * k as i32,
        })
        .collect()
}

/// Table rows as binary64, with the (π/2i)^j π^(−2k) weights folded in.
#[derive(Clone, Debug)]
pub struct FloatTable {
    /// weights[k][j] multiplies G^(3k−2j)(q)
    weights: Vec<Vec<Complex64>>,
}

impl FloatTable {
    pub fn new(table: &CoeffTable) -> Self {
        let mut weights = Vec::with_capacity(table.kmax() + 1);
        let mut fact = vec![1.0f64; 3 * table.kmax() + 2];
        for n in 1..fact.len() {
            fact[n] = fact[n - 1] * n as f64;
        }
        for k in 0..=table.kmax() {
            let row = table.row_f64(k);
            let w = row
                .iter()
                .enumerate()
                .map(|(j, d)| {
                    let base = Complex64::new(0.0, -PI / 2.0).powu(j as u32) * PI.powi(-2 * k as i32);
                    // the jet stores G^(n)/n!
                    base * *d * fact[3 * k - 2 * j]
                })
                .collect();
            weights.push(w);
        }
        FloatTable { weights }
    }

    pub fn kmax(&self) -> usize {
        self.weights.len() - 1
    }

    /// D_k(q) from a jet of G at q of order ≥ 3k.
    pub fn dk(&self, k: usize, g_jet: &Jet) -> Result<Complex64> {
        if k > self.kmax() {
            return Err(Error::OrderOutOfRange { k, max: self.kmax() });
        }
        if g_jet.order() < 3 * k {
            return Err(Error::Jet("jet order too small for D_k"));
        }
        let c = g_jet.coeffs();
        Ok(self.weights[k].iter().enumerate().map(|(j, w)| w * c[3 * k - 2 * j]).sum())
    }
}

static FLOAT_TABLE: LazyLock<FloatTable> = LazyLock::new(|| FloatTable::new(&build_d_table(KMAX)));

/// The shared binary64 table up to [`KMAX`].
pub fn float_table() -> &'static FloatTable {
    &FLOAT_TABLE
}

static PK_FLOAT: LazyLock<Vec<Vec<Complex64>>> =
    LazyLock::new(|| build_pk(KMAX).p.iter().map(RationalPoly::to_f64).collect());

/// Coefficients of P_k in binary64, lowest degree first.
pub fn pk_float(k: usize) -> Result<&'static [Complex64]> {
    PK_FLOAT.get(k).map(Vec::as_slice).ok_or(Error::OrderOutOfRange { k, max: KMAX })
}

/// D_k(q) = π^(−2k) Σ_j (π/2i)^j d[k][j] G^(3k−2j)(q).
pub fn assemble_dk(k: usize, g_jet: &Jet) -> Result<Complex64> {
    float_table().dk(k, g_jet)
}

/// Serializable dump of the tables.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CoeffDocument {
    pub kmax: usize,
    pub d: Vec<Vec<GaussianRationalRepr>>,
    pub p: Vec<Vec<GaussianRationalRepr>>,
    pub u: Vec<Vec<GaussianRationalRepr>>,
}

pub fn coeff_document(kmax: usize) -> CoeffDocument {
    let table = build_d_table(kmax);
    let pk = build_pk(kmax);
    let polys = |v: &[RationalPoly]| -> Vec<Vec<GaussianRationalRepr>> {
        v.iter().map(|p| p.coeffs().iter().map(GaussianRationalRepr::from).collect()).collect()
    };
    CoeffDocument { kmax, d: table.to_repr(), p: polys(&pk.p), u: polys(&pk.u) }
}

/// CSV with header `table,k,index,re_num,re_den,im_num,im_den`; index is j
/// for the d-table and the power of the variable for P_k and U_k.
pub fn coeff_csv(doc: &CoeffDocument) -> String {
    let mut out = String::from("table,k,index,re_num,re_den,im_num,im_den\n");
    for (name, rows) in [("d", &doc.d), ("P", &doc.p), ("U", &doc.u)] {
        for (k, row) in rows.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                out.push_str(&format!("{name},{k},{j},{},{},{},{}\n", e.re_num, e.re_den, e.im_num, e.im_den));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_rows() {
        let t = build_d_table(2);
        assert_eq!(t.get(0, 0), rat(1, 1));
        assert_eq!(t.row(1), &[rat(-1, 12), rat(-1, 2)]);
        assert_eq!(t.row(2), &[rat(1, 288), rat(1, 24), rat(-1, 8), rat(-1, 3)]);
    }

    #[test]
    fn small_polynomials() {
        let pk = build_pk(2);
        assert_eq!(pk.p[0], RationalPoly::one());
        let p1 = RationalPoly::monomial(GaussianRational::real(rat(-1, 3)), 3);
        assert_eq!(pk.p[1], p1);
        assert_eq!(pk.u[1], RationalPoly::monomial(GaussianRational::real(rat(-2, 3)), 3));
        assert_eq!(u_from_p(&pk.p[1], 1), pk.u[1]);
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(hermite_decompose(&RationalPoly::one(), 0).unwrap(), vec![GaussianRational::one()]);
        let u1 = RationalPoly::monomial(GaussianRational::real(rat(-2, 3)), 3);
        let d = hermite_decompose(&u1, 1).unwrap();
        assert_eq!(d, vec![GaussianRational::real(rat(-1, 12)), GaussianRational::real(rat(-1, 2))]);
        let h6 = hermite_decompose(&hermite_poly(6), 2).unwrap();
        assert_eq!(
            h6,
            vec![GaussianRational::one(), GaussianRational::zero(), GaussianRational::zero(), GaussianRational::zero()]
        );
        assert!(hermite_decompose(&hermite_poly(2), 1).is_err());
    }
}
