//! Dense univariate polynomials over a finite field.

use alloc::vec;
use alloc::vec::Vec;

use super::field::{FieldDescriptor, FieldElement};
use super::series::Series;
use crate::error::{Error, Result};

/// Polynomial with coefficients low degree first; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: FieldDescriptor,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: &FieldDescriptor, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Polynomial from integer coefficients, low degree first.
    pub fn from_ints(field: &FieldDescriptor, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &FieldDescriptor) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn constant(field: &FieldDescriptor, c: FieldElement) -> Poly {
        Poly::new(field, vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(field: &FieldDescriptor, c: FieldElement, k: usize) -> Poly {
        let mut v = vec![FieldElement::ZERO; k + 1];
        v[k] = c;
        Poly::new(field, v)
    }

    /// The monic linear factor `x - a`.
    pub fn linear(field: &FieldDescriptor, a: FieldElement) -> Poly {
        Poly::new(field, vec![field.neg(a), FieldElement::ONE])
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || o.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(&self.field, FieldElement::ONE), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(
            f,
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.mul(f.from_int(i as i64), c)).collect(),
        )
    }

    /// Euclidean division.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let f = &self.field;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(d.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut q = vec![FieldElement::ZERO; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = f.mul(r[top], lead_inv);
            q[top - dd] = c;
            if c.is_zero() {
                continue;
            }
            for (i, &x) in d.coeffs.iter().enumerate() {
                r[top - dd + i] = f.sub(r[top - dd + i], f.mul(c, x));
            }
        }
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Roots in the coefficient field by exhaustive search, ascending, with multiplicity.
    pub fn roots_with_multiplicity(&self) -> Vec<(FieldElement, u32)> {
        let f = &self.field;
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        for a in f.elements() {
            let mut mult = 0;
            let mut cur = self.clone();
            let lin = Poly::linear(f, a);
            while cur.eval(a).is_zero() && !cur.is_zero() {
                cur = cur.divrem(&lin).expect("linear divisor").0;
                mult += 1;
            }
            if mult > 0 {
                out.push((a, mult));
            }
        }
        out
    }

    /// Monic irreducible factors with multiplicity, sorted by degree then packed coefficients.
    ///
    /// Squarefree split (with `p`-th roots when the derivative vanishes), distinct-degree split,
    /// then a deterministic equal-degree split over a fixed enumeration of trial polynomials.
    pub fn factor(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if self.degree().is_none_or(|d| d == 0) {
            return out;
        }
        for (sq, m) in self.monic().squarefree() {
            for (block, d) in sq.distinct_degree() {
                for g in block.equal_degree(d) {
                    out.push((g, m));
                }
            }
        }
        out.sort_by(|a, b| {
            (a.0.coeffs.len(), a.0.coeffs.iter().rev().collect::<Vec<_>>())
                .cmp(&(b.0.coeffs.len(), b.0.coeffs.iter().rev().collect::<Vec<_>>()))
        });
        out
    }

    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElement::ONE
    }

    /// `self^e mod m`.
    fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.divrem(m).expect("nonzero modulus").1;
        let mut acc = Poly::constant(&self.field, FieldElement::ONE).divrem(m).expect("nonzero modulus").1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).divrem(m).expect("nonzero modulus").1;
            }
            base = base.mul(&base).divrem(m).expect("nonzero modulus").1;
            e >>= 1;
        }
        acc
    }

    /// Squarefree parts of a monic polynomial, `self = prod s_i^(m_i)`.
    fn squarefree(&self) -> Vec<(Poly, u32)> {
        let f = &self.field;
        let p = f.p() as u32;
        let mut out = Vec::new();
        let d = self.derivative();
        let mut c = self.gcd(&d);
        let mut w = self.divrem(&c).expect("nonzero gcd").0;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.divrem(&y).expect("nonzero gcd").0;
            if z.degree().is_some_and(|k| k > 0) {
                out.push((z.monic(), i));
            }
            i += 1;
            c = c.divrem(&y).expect("nonzero gcd").0;
            w = y;
        }
        if c.degree().is_some_and(|k| k > 0) {
            // c' = 0: c is a polynomial in x^p with p-th power coefficients
            let root: Vec<FieldElement> = c.coeffs.iter().step_by(p as usize).map(|&a| f.pth_root(a)).collect();
            for (g, m) in Poly::new(f, root).monic().squarefree() {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Splits a squarefree monic polynomial into products of irreducibles of equal degree.
    fn distinct_degree(&self) -> Vec<(Poly, usize)> {
        let f = &self.field;
        let q = f.q();
        let x = Poly::monomial(f, FieldElement::ONE, 1);
        let mut out = Vec::new();
        let mut rest = self.clone();
        let mut frob = x.clone();
        let mut d = 1;
        while rest.degree().is_some_and(|k| k >= 2 * d) {
            frob = frob.powmod(q, &rest);
            let g = rest.gcd(&frob.sub(&x));
            if !g.is_one() {
                rest = rest.divrem(&g).expect("nonzero gcd").0;
                frob = frob.divrem(&rest).expect("nonzero modulus").1;
                out.push((g, d));
            }
            d += 1;
        }
        if let Some(k) = rest.degree().filter(|&k| k > 0) {
            out.push((rest.monic(), k));
        }
        out
    }

    /// Irreducible factors of a squarefree product of degree-`d` irreducibles.
    fn equal_degree(&self, d: usize) -> Vec<Poly> {
        let n = self.degree().expect("nonzero");
        if n == d {
            return vec![self.clone()];
        }
        let f = &self.field;
        let (p, q) = (f.p(), f.q());
        let one = Poly::constant(f, FieldElement::ONE);
        // trial polynomials of degree < n, enumerated by packed index in base q
        for index in 1u64.. {
            let mut digits = Vec::new();
            let mut k = index;
            while k > 0 {
                digits.push(FieldElement(k % q));
                k /= q;
            }
            if digits.len() > n {
                break;
            }
            let a = Poly::new(f, digits);
            if a.degree().is_none_or(|k| k == 0) {
                continue;
            }
            let b = if p == 2 {
                // absolute trace to F_2 of a over F_(q^d)
                let m = f.k() as usize * d;
                let mut acc = Poly::zero(f);
                let mut cur = a.divrem(self).expect("nonzero modulus").1;
                for _ in 0..m {
                    acc = acc.add(&cur);
                    cur = cur.mul(&cur).divrem(self).expect("nonzero modulus").1;
                }
                acc
            } else {
                // a^((q^d - 1)/2) = prod_j (a^((q-1)/2))^(q^j)
                let mut t = a.powmod((q - 1) / 2, self);
                let mut acc = one.clone();
                for _ in 0..d {
                    acc = acc.mul(&t).divrem(self).expect("nonzero modulus").1;
                    t = t.powmod(q, self);
                }
                acc.sub(&one)
            };
            let g = self.gcd(&b);
            if g.degree().is_some_and(|k| k > 0 && k < n) {
                let h = self.divrem(&g).expect("nonzero gcd").0.monic();
                let mut out = g.equal_degree(d);
                out.extend(h.equal_degree(d));
                return out;
            }
        }
        unreachable!("equal-degree splitting always finds a splitting polynomial")
    }

    /// Expansion in the local parameter `u = x - a`, known to `u^abs_prec`.
    pub fn expand_at(&self, a: FieldElement, abs_prec: i64) -> Series {
        let f = &self.field;
        // Taylor shift by synthetic division
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                c[j] = f.add(c[j], f.mul(a, c[j + 1]));
            }
        }
        Series::from_poly(f, &c, abs_prec)
    }

    /// Expansion at infinity in `u = 1/x`, known to `u^abs_prec`.
    pub fn expand_at_infinity(&self, abs_prec: i64) -> Series {
        let f = &self.field;
        match self.degree() {
            None => Series::zero(f, abs_prec),
            Some(d) => {
                let rev: Vec<FieldElement> = self.coeffs.iter().rev().copied().collect();
                Series::from_coeffs(f, -(d as i64), &rev, abs_prec)
            }
        }
    }
}
