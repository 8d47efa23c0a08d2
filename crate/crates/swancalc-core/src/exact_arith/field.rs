//! Finite fields `F_{p^k}` with a deterministic defining polynomial.
//!
//! Elements are packed base-`p` integers `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! standing for `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` modulo the defining
//! polynomial. Fields of order at most `2^21` carry discrete-log tables.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

const TABLE_LIMIT: u64 = 1 << 21;
const MAX_DEGREE: u32 = 12;

/// An element of some [`FieldDescriptor`], in packed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u64,
    k: u32,
    q: u64,
    /// Monic defining polynomial, low degree first, length `k + 1`.
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

/// The field `F_{p^k}` together with its defining polynomial.
#[derive(Clone)]
pub struct FieldDescriptor(Arc<Inner>);

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}
impl Eq for FieldDescriptor {}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.k, self.0.modulus)
    }
}

/// Deterministic primality for `u64` (Miller-Rabin with a fixed witness set).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Prime factors of `n` by trial division, ascending, without multiplicity.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p, low degree first, used only to find moduli.
mod fp_poly {
    use super::{mul_mod, pow_mod};
    use alloc::vec::Vec;

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = pow_mod(m[dm], p - 2, p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = mul_mod(r[top], lead_inv, p);
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                let sub = mul_mod(c, mi, p);
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = alloc::vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), m, p)
    }

    pub fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut r = alloc::vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(&r, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        r
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// Rabin's irreducibility test for a monic `f` of degree `k`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let k = (f.len() - 1) as u64;
        let x = alloc::vec![0u64, 1];
        let frob_iter = |times: u64| {
            let mut h = x.clone();
            for _ in 0..times {
                h = powmod(&h, p, f, p);
            }
            h
        };
        if !sub(&frob_iter(k), &x, p).is_empty() {
            return false;
        }
        for r in super::prime_factors(k) {
            let h = sub(&frob_iter(k / r), &x, p);
            let g = gcd(f, &h, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

impl FieldDescriptor {
    /// Builds `F_{p^k}`; the defining polynomial is the monic irreducible whose
    /// coefficient vector `(c_0, ..., c_{k-1})`, read as a base-`p` number with
    /// `c_0` least significant, is smallest.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(k));
        }
        let q = (p as u128).checked_pow(k).filter(|&q| q < (1u128 << 62)).ok_or(Error::FieldTooLarge)? as u64;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            let mut found = None;
            for code in 0..q {
                let mut c = Vec::with_capacity(k as usize + 1);
                let mut n = code;
                for _ in 0..k {
                    c.push(n % p);
                    n /= p;
                }
                if c[0] == 0 {
                    continue;
                }
                c.push(1);
                if fp_poly::is_irreducible(&c, p) {
                    found = Some(c);
                    break;
                }
            }
            found.expect("an irreducible polynomial of every degree exists")
        };
        let mut inner = Inner { p, k, q, modulus, tables: None };
        if q <= TABLE_LIMIT && q > 2 {
            let field = FieldDescriptor(Arc::new(inner));
            let g = field.find_generator();
            let mut exp = Vec::with_capacity((q - 1) as usize);
            let mut log = vec![0u32; q as usize];
            let mut x = FieldElement::ONE;
            for i in 0..(q - 1) {
                exp.push(x.0 as u32);
                log[x.0 as usize] = i as u32;
                x = field.mul_poly(x, g);
            }
            inner = Arc::try_unwrap(field.0).ok().expect("unique");
            inner.tables = Some(Tables { exp, log });
        }
        Ok(FieldDescriptor(Arc::new(inner)))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn k(&self) -> u32 {
        self.0.k
    }
    /// Number of elements.
    pub fn q(&self) -> u64 {
        self.0.q
    }
    /// Defining polynomial over `F_p`, low degree first, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.p as i64) as u64)
    }

    /// Element with the given coordinates in the power basis.
    pub fn from_digits(&self, digits: &[u64]) -> FieldElement {
        let mut v = 0u64;
        for &d in digits.iter().take(self.0.k as usize).rev() {
            v = v * self.0.p + d % self.0.p;
        }
        FieldElement(v)
    }

    pub fn digits(&self, x: FieldElement) -> [u64; MAX_DEGREE as usize] {
        let mut out = [0u64; MAX_DEGREE as usize];
        let mut n = x.0;
        for slot in out.iter_mut().take(self.0.k as usize) {
            *slot = n % self.0.p;
            n /= self.0.p;
        }
        out
    }

    /// The prime-field value of an element lying in `F_p`.
    pub fn prime_value(&self, x: FieldElement) -> Option<u64> {
        (x.0 < self.0.p).then_some(x.0)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.0.p;
        if self.0.k == 1 {
            return FieldElement(((a.0 as u128 + b.0 as u128) % p as u128) as u64);
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut out = [0u64; MAX_DEGREE as usize];
        for i in 0..self.0.k as usize {
            out[i] = (da[i] + db[i]) % p;
        }
        self.from_digits(&out[..self.0.k as usize])
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.0.p;
        let da = self.digits(a);
        let mut out = [0u64; MAX_DEGREE as usize];
        for i in 0..self.0.k as usize {
            out[i] = (p - da[i]) % p;
        }
        self.from_digits(&out[..self.0.k as usize])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    fn mul_poly(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.0.p;
        let k = self.0.k as usize;
        if k == 1 {
            return FieldElement(mul_mod(a.0, b.0, p));
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 2 * MAX_DEGREE as usize];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        let m = &self.0.modulus;
        for top in (k..2 * k - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..k {
                prod[top - k + i] = (prod[top - k + i] + (p - m[i]) * c) % p;
            }
        }
        self.from_digits(&prod[..k])
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        match &self.0.tables {
            Some(t) => {
                let s = t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64;
                FieldElement(t.exp[(s % (self.0.q - 1)) as usize] as u64)
            }
            None => self.mul_poly(a, b),
        }
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        if let Some(t) = &self.0.tables {
            let l = (t.log[a.0 as usize] as u128 * e as u128) % (self.0.q - 1) as u128;
            return FieldElement(t.exp[l as usize] as u64);
        }
        let mut r = FieldElement::ONE;
        let mut b = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Signed exponent: negative powers of nonzero elements are inverses.
    pub fn powi(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.0.tables {
            let l = t.log[a.0 as usize] as u64;
            let n = self.0.q - 1;
            return Ok(FieldElement(t.exp[((n - l) % n) as usize] as u64));
        }
        Ok(self.pow(a, self.0.q - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Absolute Frobenius `x -> x^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.0.p)
    }

    /// Unique `p`-th root (the field is perfect).
    pub fn pth_root(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.0.q / self.0.p)
    }

    /// Absolute trace to `F_p`, as an integer in `0..p`.
    pub fn trace(&self, a: FieldElement) -> u64 {
        let mut acc = FieldElement::ZERO;
        let mut x = a;
        for _ in 0..self.0.k {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        acc.0
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut n = self.0.q - 1;
        for r in prime_factors(self.0.q - 1) {
            while n % r == 0 && self.pow(a, n / r) == FieldElement::ONE {
                n /= r;
            }
        }
        Ok(n)
    }

    fn find_generator(&self) -> FieldElement {
        let n = self.0.q - 1;
        let factors = prime_factors(n);
        (1..self.0.q)
            .map(FieldElement)
            .find(|&g| factors.iter().all(|&r| self.pow_plain(g, n / r) != FieldElement::ONE))
            .expect("the multiplicative group is cyclic")
    }

    fn pow_plain(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut r = FieldElement::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_poly(r, b);
            }
            b = self.mul_poly(b, b);
            e >>= 1;
        }
        r
    }

    /// The fixed primitive element: the smallest packed element of order `q - 1`.
    pub fn generator(&self) -> FieldElement {
        match &self.0.tables {
            Some(t) if self.0.q > 2 => FieldElement(t.exp[1] as u64),
            _ if self.0.q == 2 => FieldElement::ONE,
            _ => self.find_generator(),
        }
    }

    /// Discrete logarithm to base [`generator`](Self::generator).
    pub fn log(&self, a: FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.0.q == 2 {
            return Ok(0);
        }
        if let Some(t) = &self.0.tables {
            return Ok(t.log[a.0 as usize] as u64);
        }
        let g = self.generator();
        let mut x = FieldElement::ONE;
        for i in 0..self.0.q - 1 {
            if x == a {
                return Ok(i);
            }
            x = self.mul(x, g);
        }
        unreachable!("generator spans the multiplicative group")
    }

    /// `generator^i`.
    pub fn exp(&self, i: u64) -> FieldElement {
        if self.0.q == 2 {
            return FieldElement::ONE;
        }
        match &self.0.tables {
            Some(t) => FieldElement(t.exp[(i % (self.0.q - 1)) as usize] as u64),
            None => self.pow(self.generator(), i % (self.0.q - 1)),
        }
    }

    /// All elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(FieldElement)
    }

    /// True when `a` lies in the subfield `F_p`.
    pub fn is_prime_field_element(&self, a: FieldElement) -> bool {
        a.0 < self.0.p
    }
}

/// Builds `F_{p^k}`; see [`FieldDescriptor::new`].
pub fn make_field(p: u64, k: u32) -> Result<FieldDescriptor> {
    FieldDescriptor::new(p, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_two() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.add(f.one(), f.one()), f.zero());
    }

    #[test]
    fn nine_elements_with_quadratic_modulus() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.q(), 9);
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), f.modulus());
    }

    #[test]
    fn generator_of_f125_has_order_124() {
        let f = make_field(5, 3).unwrap();
        let g = f.generator();
        // exhaustive: g^i != 1 for 0 < i < 124
        let mut x = g;
        let mut ord = 1;
        while x != f.one() {
            x = f.mul(x, g);
            ord += 1;
        }
        assert_eq!(ord, 124);
        assert_eq!(f.order(g).unwrap(), 124);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(make_field(3, 0).unwrap_err(), Error::DegreeOutOfRange(0));
        assert_eq!(make_field(3, 13).unwrap_err(), Error::DegreeOutOfRange(13));
    }

    #[test]
    fn table_and_polynomial_products_agree() {
        let f = make_field(3, 4).unwrap();
        for a in f.elements().step_by(7) {
            for b in f.elements().step_by(5) {
                assert_eq!(f.mul(a, b), f.mul_poly(a, b));
            }
        }
    }

    #[test]
    fn large_prime_field_without_tables() {
        let p = 1_000_000_007;
        let f = make_field(p, 1).unwrap();
        let a = f.from_int(123_456_789);
        assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        assert_eq!(f.trace(a), 123_456_789);
    }

    #[test]
    fn trace_is_frobenius_sum() {
        let f = make_field(2, 3).unwrap();
        let zero_trace = f.elements().filter(|&a| f.trace(a) == 0).count();
        assert_eq!(zero_trace, 4);
    }
}
