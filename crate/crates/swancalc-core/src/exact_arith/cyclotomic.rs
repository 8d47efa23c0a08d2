//! Cyclotomic integers `Z[zeta_m]` and the multiplicative lift from finite fields.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use super::field::{FieldDescriptor, FieldElement};
use crate::error::{Error, Result};

/// An element of `Z[zeta_m]` in the power basis `1, zeta, ..., zeta^(phi(m)-1)`.
#[derive(Clone)]
pub struct CyclotomicInt {
    m: u64,
    phi_poly: Arc<Vec<i64>>,
    coeffs: Vec<i64>,
}

impl PartialEq for CyclotomicInt {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.coeffs == other.coeffs
    }
}
impl Eq for CyclotomicInt {}

impl fmt::Debug for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[zeta_{}]{:?}", self.m, self.coeffs)
    }
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for top in (dd..r.len()).rev() {
        let c = r[top];
        q[top - dd] = c;
        for (i, &d) in den.iter().enumerate() {
            r[top - dd + i] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// The `m`-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn reduce(poly: &mut Vec<i64>, phi: &[i64]) {
    let deg = phi.len() - 1;
    for top in (deg..poly.len()).rev() {
        let c = poly[top];
        if c == 0 {
            continue;
        }
        for (i, &d) in phi.iter().enumerate() {
            poly[top - deg + i] -= c * d;
        }
    }
    poly.truncate(deg);
    poly.resize(deg, 0);
}

impl CyclotomicInt {
    fn with_coeffs(m: u64, phi_poly: Arc<Vec<i64>>, mut raw: Vec<i64>) -> Self {
        reduce(&mut raw, &phi_poly);
        CyclotomicInt { m, phi_poly, coeffs: raw }
    }

    pub fn from_int(m: u64, n: i64) -> Self {
        let phi = Arc::new(cyclotomic_polynomial(m));
        CyclotomicInt::with_coeffs(m, phi, vec![n])
    }

    pub fn zero(m: u64) -> Self {
        CyclotomicInt::from_int(m, 0)
    }

    pub fn one(m: u64) -> Self {
        CyclotomicInt::from_int(m, 1)
    }

    /// `zeta_m^k` for any integer `k`.
    pub fn zeta_pow(m: u64, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut raw = vec![0i64; e + 1];
        raw[e] = 1;
        let phi = Arc::new(cyclotomic_polynomial(m));
        CyclotomicInt::with_coeffs(m, phi, raw)
    }

    fn like(&self, raw: Vec<i64>) -> Self {
        CyclotomicInt::with_coeffs(self.m, self.phi_poly.clone(), raw)
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    fn same_ring(&self, other: &Self) {
        assert_eq!(self.m, other.m, "cyclotomic operands from different rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ring(other);
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicInt { m: self.m, phi_poly: self.phi_poly.clone(), coeffs: c }
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|a| -a).collect();
        CyclotomicInt { m: self.m, phi_poly: self.phi_poly.clone(), coeffs: c }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        let c = self.coeffs.iter().map(|a| a * k).collect();
        CyclotomicInt { m: self.m, phi_poly: self.phi_poly.clone(), coeffs: c }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ring(other);
        let n = self.coeffs.len();
        let mut raw = vec![0i64; 2 * n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        self.like(raw)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut r = self.like(vec![1]);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// Applies `zeta -> zeta^a` for `a` prime to `m`.
    pub fn galois(&self, a: i64) -> Self {
        let m = self.m as i64;
        let mut raw = vec![0i64; self.m as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            raw[((i as i64) * a).rem_euclid(m) as usize] += c;
        }
        self.like(raw)
    }

    /// Complex conjugation `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Image in `Z[zeta_n]` for a multiple `n` of `m`.
    pub fn embed(&self, n: u64) -> Result<Self> {
        if n % self.m != 0 {
            return Err(Error::InvalidInput("cyclotomic embedding needs m | n".into()));
        }
        let step = (n / self.m) as usize;
        let mut raw = vec![0i64; step * self.coeffs.len().max(1)];
        for (i, &c) in self.coeffs.iter().enumerate() {
            raw[i * step] += c;
        }
        Ok(CyclotomicInt::with_coeffs(n, Arc::new(cyclotomic_polynomial(n)), raw))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The integer this element equals, if it is rational.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then(|| self.coeffs[0])
    }

    /// Exact division by a rational integer inside `Z[zeta_m]`.
    pub fn div_exact(&self, k: i64) -> Option<Self> {
        if k == 0 || self.coeffs.iter().any(|c| !c.is_multiple_of(&k)) {
            return None;
        }
        let c = self.coeffs.iter().map(|a| a / k).collect();
        Some(CyclotomicInt { m: self.m, phi_poly: self.phi_poly.clone(), coeffs: c })
    }
}

/// Root of unity lifting a nonzero `a` of `F_{l^r}`, as an element of `Z[zeta_{q-1}]`.
///
/// The embedding sends the field's fixed generator to `zeta_{q-1}`.
pub fn teichmuller_lift(field: &FieldDescriptor, a: FieldElement) -> Result<CyclotomicInt> {
    let log = field.log(a)?;
    let n = (field.q() - 1).max(1);
    Ok(CyclotomicInt::zeta_pow(n, log as i64))
}

/// The same lift written in `Z[zeta_m]`, for `m` divisible by the order of `a`.
pub fn teichmuller_lift_into(field: &FieldDescriptor, a: FieldElement, m: u64) -> Result<CyclotomicInt> {
    let log = field.log(a)?;
    let n = (field.q() - 1).max(1);
    let ord = n / n.gcd(&log);
    if m % ord != 0 {
        return Err(Error::InvalidInput("lift target ring too small for the element order".into()));
    }
    let k = (log / (n / ord)) * (m / ord);
    Ok(CyclotomicInt::zeta_pow(m, k as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::field::make_field;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_sum_to_minus_one() {
        let s = (1..3).fold(CyclotomicInt::zero(3), |acc, i| acc.add(&CyclotomicInt::zeta_pow(3, i)));
        assert_eq!(s.as_integer(), Some(-1));
    }

    #[test]
    fn lift_of_one_is_one() {
        let f = make_field(7, 1).unwrap();
        assert_eq!(teichmuller_lift(&f, f.one()).unwrap(), CyclotomicInt::one(6));
    }

    #[test]
    fn lift_of_generator_has_order_six() {
        let f = make_field(7, 1).unwrap();
        let z = teichmuller_lift(&f, f.generator()).unwrap();
        assert_eq!(z, CyclotomicInt::zeta_pow(6, 1));
        for k in 1..6 {
            assert_ne!(z.pow(k), CyclotomicInt::one(6));
        }
        assert_eq!(z.pow(6), CyclotomicInt::one(6));
        let g2 = f.mul(f.generator(), f.generator());
        assert_eq!(teichmuller_lift(&f, g2).unwrap(), CyclotomicInt::zeta_pow(6, 2));
        assert_eq!(teichmuller_lift_into(&f, g2, 3).unwrap(), CyclotomicInt::zeta_pow(3, 1));
    }

    #[test]
    fn lift_of_zero_fails() {
        let f = make_field(7, 1).unwrap();
        assert_eq!(teichmuller_lift(&f, f.zero()).unwrap_err(), Error::ZeroInput);
    }

    #[test]
    fn conjugate_norm_of_zeta_is_one() {
        let z = CyclotomicInt::zeta_pow(5, 2);
        assert_eq!(z.mul(&z.conj()).as_integer(), Some(1));
    }
}
