//! Truncated Laurent series over a finite field.
//!
//! A series is `t^val * (c_0 + c_1 t + ... + c_{N-1} t^{N-1}) + O(t^{val + N})`
//! with `c_0 != 0`. The zero series `O(t^m)` has no coefficients and `val = m`.
//! Results never report a coefficient beyond the joint precision of the inputs.

use alloc::vec;
use alloc::vec::Vec;

use super::field::{FieldDescriptor, FieldElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    field: FieldDescriptor,
    val: i64,
    coeffs: Vec<FieldElement>,
}

/// Binary operations exposed through [`series_op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Div,
    Compose,
}

/// Applies `op` to `a` and `b`; composition means `a(b(t))`.
pub fn series_op(a: &Series, b: &Series, op: SeriesOp) -> Result<Series> {
    match op {
        SeriesOp::Add => a.add(b),
        SeriesOp::Mul => a.mul(b),
        SeriesOp::Div => a.div(b),
        SeriesOp::Compose => a.compose(b),
    }
}

impl Series {
    /// Series with coefficients `coeffs[i]` at `t^(val + i)`, known up to `t^abs_prec`.
    pub fn from_coeffs(field: &FieldDescriptor, val: i64, coeffs: &[FieldElement], abs_prec: i64) -> Series {
        let len = (abs_prec - val).max(0) as usize;
        let mut c: Vec<FieldElement> = coeffs.iter().copied().take(len).collect();
        c.resize(len, FieldElement::ZERO);
        Series::normalized(field.clone(), val.min(abs_prec), c)
    }

    /// Polynomial `sum coeffs[i] t^i` known to `t^abs_prec`.
    pub fn from_poly(field: &FieldDescriptor, coeffs: &[FieldElement], abs_prec: i64) -> Series {
        Series::from_coeffs(field, 0, coeffs, abs_prec)
    }

    pub fn monomial(field: &FieldDescriptor, c: FieldElement, exp: i64, abs_prec: i64) -> Series {
        Series::from_coeffs(field, exp, &[c], abs_prec)
    }

    pub fn zero(field: &FieldDescriptor, abs_prec: i64) -> Series {
        Series { field: field.clone(), val: abs_prec, coeffs: Vec::new() }
    }

    pub fn one(field: &FieldDescriptor, abs_prec: i64) -> Series {
        Series::monomial(field, FieldElement::ONE, 0, abs_prec)
    }

    /// The uniformizer `t` known to `t^abs_prec`.
    pub fn t(field: &FieldDescriptor, abs_prec: i64) -> Series {
        Series::monomial(field, FieldElement::ONE, 1, abs_prec)
    }

    fn normalized(field: FieldDescriptor, mut val: i64, mut coeffs: Vec<FieldElement>) -> Series {
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        val += lead as i64;
        coeffs.drain(..lead);
        Series { field, val, coeffs }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact valuation, `None` for a zero series.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// Number of known coefficients from the valuation on.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// The series is known modulo `t^abs_precision`.
    pub fn abs_precision(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    /// Coefficient of `t^i`, or `None` when it lies beyond the precision.
    pub fn coeff(&self, i: i64) -> Option<FieldElement> {
        if i >= self.abs_precision() {
            None
        } else if i < self.val {
            Some(FieldElement::ZERO)
        } else {
            Some(self.coeffs[(i - self.val) as usize])
        }
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.first().copied()
    }

    /// Coefficients from the valuation on.
    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coeffs
    }

    fn check_field(&self, other: &Series) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Forgets every coefficient at or beyond `t^abs_prec`.
    pub fn truncate(&self, abs_prec: i64) -> Series {
        if abs_prec >= self.abs_precision() {
            return self.clone();
        }
        Series::from_coeffs(&self.field, self.val, &self.coeffs, abs_prec)
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_field(other)?;
        let f = &self.field;
        let abs = self.abs_precision().min(other.abs_precision());
        let lo = self.val.min(other.val).min(abs);
        let mut c = vec![FieldElement::ZERO; (abs - lo) as usize];
        for s in [self, other] {
            for (i, &x) in s.coeffs.iter().enumerate() {
                let pos = s.val + i as i64;
                if pos >= abs {
                    break;
                }
                let slot = &mut c[(pos - lo) as usize];
                *slot = f.add(*slot, x);
            }
        }
        Ok(Series::normalized(f.clone(), lo, c))
    }

    pub fn neg(&self) -> Series {
        let f = &self.field;
        Series { field: f.clone(), val: self.val, coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    /// Multiplies by the constant `c`.
    pub fn scale(&self, c: FieldElement) -> Series {
        let f = &self.field;
        if c.is_zero() {
            return Series::zero(f, self.abs_precision());
        }
        Series { field: f.clone(), val: self.val, coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect() }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Series {
        Series { field: self.field.clone(), val: self.val + k, coeffs: self.coeffs.clone() }
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_field(other)?;
        let f = &self.field;
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ok(Series::zero(f, self.val + other.val)),
            (true, false) => return Ok(Series::zero(f, self.val + other.val)),
            (false, true) => return Ok(Series::zero(f, self.val + other.val)),
            _ => {}
        }
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut c = vec![FieldElement::ZERO; n];
        for (i, &x) in self.coeffs.iter().take(n).enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in other.coeffs.iter().take(n - i).enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(x, y));
            }
        }
        Ok(Series::normalized(f.clone(), self.val + other.val, c))
    }

    pub fn inv(&self) -> Result<Series> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let n = self.coeffs.len();
        let lead_inv = f.inv(self.coeffs[0])?;
        let mut c = vec![FieldElement::ZERO; n];
        c[0] = lead_inv;
        for k in 1..n {
            let mut acc = FieldElement::ZERO;
            for i in 1..=k {
                acc = f.add(acc, f.mul(self.coeffs[i], c[k - i]));
            }
            c[k] = f.neg(f.mul(acc, lead_inv));
        }
        Ok(Series::normalized(f.clone(), -self.val, c))
    }

    pub fn div(&self, other: &Series) -> Result<Series> {
        self.check_field(other)?;
        let inv = other.inv()?;
        self.mul(&inv)
    }

    /// Integer power; negative exponents need a nonzero series.
    pub fn pow(&self, e: i64) -> Result<Series> {
        if e == 0 {
            return Ok(Series::one(&self.field, self.precision() as i64));
        }
        let mut b = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut r: Option<Series> = None;
        loop {
            if k & 1 == 1 {
                r = Some(match r {
                    None => b.clone(),
                    Some(x) => x.mul(&b)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            b = b.mul(&b)?;
        }
        Ok(r.expect("nonzero exponent"))
    }

    /// `self(b(t))`; `b` must have positive valuation.
    pub fn compose(&self, b: &Series) -> Result<Series> {
        self.check_field(b)?;
        let vb = match b.valuation() {
            Some(v) if v >= 1 => v,
            _ => return Err(Error::NonPositiveValuation),
        };
        let f = &self.field;
        let tail = Series::zero(f, vb.saturating_mul(self.abs_precision()));
        if self.is_zero() {
            return Ok(tail);
        }
        let last = self.coeffs.iter().rposition(|c| !c.is_zero()).expect("nonzero series");
        let mut power = b.pow(self.val)?;
        let mut acc = tail;
        for (i, &c) in self.coeffs.iter().enumerate().take(last + 1) {
            if !c.is_zero() {
                acc = acc.add(&power.scale(c))?;
            }
            if i < last {
                power = power.mul(b)?;
            }
        }
        Ok(acc)
    }

    /// Formal derivative `d/dt`.
    pub fn derivative(&self) -> Series {
        let f = &self.field;
        let abs = self.abs_precision() - 1;
        if self.is_zero() {
            return Series::zero(f, abs);
        }
        let c: Vec<FieldElement> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &x)| f.mul(f.from_int(self.val + i as i64), x))
            .collect();
        Series::normalized(f.clone(), self.val - 1, c)
    }

    /// Applies a field map to every coefficient.
    pub fn map_coeffs(&self, g: impl Fn(FieldElement) -> FieldElement) -> Series {
        Series::normalized(self.field.clone(), self.val, self.coeffs.iter().map(|&c| g(c)).collect())
    }

    /// The polar part together with the constant term, as `(exponent, coefficient)` pairs.
    pub fn principal_part(&self) -> Vec<(i64, FieldElement)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (self.val + i as i64, c))
            .take_while(|&(e, _)| e <= 0)
            .filter(|&(_, c)| !c.is_zero())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::field::make_field;

    #[test]
    fn t_plus_t_is_two_t() {
        let f3 = make_field(3, 1).unwrap();
        let t = Series::t(&f3, 10);
        let s = series_op(&t, &t, SeriesOp::Add).unwrap();
        assert_eq!(s.valuation(), Some(1));
        assert_eq!(s.leading(), Some(f3.from_int(2)));
        let f2 = make_field(2, 1).unwrap();
        let t = Series::t(&f2, 10);
        let s = series_op(&t, &t, SeriesOp::Add).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.abs_precision(), 10);
    }

    #[test]
    fn geometric_series_by_division() {
        let f = make_field(5, 1).unwrap();
        let n = 12;
        let one = Series::one(&f, n);
        let denom = Series::from_poly(&f, &[f.one(), f.from_int(-1)], n);
        let g = series_op(&one, &denom, SeriesOp::Div).unwrap();
        assert_eq!(g.abs_precision(), n);
        for i in 0..n {
            assert_eq!(g.coeff(i), Some(f.one()));
        }
        assert_eq!(g.coeff(n), None);
    }

    #[test]
    fn compose_with_cube() {
        let f = make_field(7, 1).unwrap();
        let a = Series::from_poly(&f, &[f.zero(), f.one(), f.one()], 20);
        let b = Series::monomial(&f, f.one(), 3, 20);
        let c = series_op(&a, &b, SeriesOp::Compose).unwrap();
        for i in 0..c.abs_precision() {
            let expect = if i == 3 || i == 6 { f.one() } else { f.zero() };
            assert_eq!(c.coeff(i), Some(expect));
        }
    }

    #[test]
    fn division_by_exact_zero_fails() {
        let f = make_field(3, 1).unwrap();
        let a = Series::one(&f, 5);
        let z = Series::zero(&f, 5);
        assert_eq!(series_op(&a, &z, SeriesOp::Div).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn compose_needs_positive_valuation() {
        let f = make_field(3, 1).unwrap();
        let a = Series::t(&f, 5);
        let b = Series::one(&f, 5);
        assert_eq!(series_op(&a, &b, SeriesOp::Compose).unwrap_err(), Error::NonPositiveValuation);
    }

    #[test]
    fn laurent_inverse_has_negative_valuation() {
        let f = make_field(3, 2).unwrap();
        let t = Series::t(&f, 8);
        let inv = t.inv().unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        assert_eq!(inv.precision(), t.precision());
    }

    #[test]
    fn derivative_kills_pth_powers() {
        let f = make_field(3, 1).unwrap();
        let s = Series::monomial(&f, f.one(), 3, 10);
        assert!(s.derivative().is_zero());
    }
}
