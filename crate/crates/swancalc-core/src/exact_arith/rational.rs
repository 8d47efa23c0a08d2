//! Rational functions on the projective line and their local expansions.

use alloc::vec::Vec;

use super::field::{FieldDescriptor, FieldElement};
use super::poly::Poly;
use super::series::Series;
use crate::error::{Error, Result};

/// A rational point of `P^1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Finite(FieldElement),
    Infinity,
}

/// `u^shift * num(u) / den(u)` in a local parameter `u`, with `num(0) != 0`
/// (unless `num = 0`) and `den(0) != 0`. Expandable to any precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFunction {
    num: Poly,
    den: Poly,
    shift: i64,
}

fn strip_u(p: &Poly) -> (Poly, i64) {
    let k = p.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
    (Poly::new(p.field(), p.coeffs()[k..].to_vec()), k as i64)
}

impl LocalFunction {
    pub fn new(num: Poly, den: Poly, shift: i64) -> Result<LocalFunction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (num, a) = strip_u(&num);
        let (den, b) = strip_u(&den);
        Ok(LocalFunction { num, den, shift: shift + a - b })
    }

    /// `c * u^k`.
    pub fn monomial(field: &FieldDescriptor, c: FieldElement, k: i64) -> LocalFunction {
        LocalFunction::new(Poly::constant(field, c), Poly::constant(field, FieldElement::ONE), k)
            .expect("nonzero denominator")
    }

    /// Laurent polynomial `sum coeffs[i] u^(low + i)`.
    pub fn laurent(field: &FieldDescriptor, low: i64, coeffs: &[FieldElement]) -> LocalFunction {
        LocalFunction::new(Poly::new(field, coeffs.to_vec()), Poly::constant(field, FieldElement::ONE), low)
            .expect("nonzero denominator")
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Exact order of vanishing at `u = 0`; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.num.is_zero()).then_some(self.shift)
    }

    /// Expansion with `rel_prec` known coefficients from the valuation on.
    pub fn expand(&self, rel_prec: usize) -> Series {
        let f = self.field();
        if self.num.is_zero() {
            return Series::zero(f, self.shift + rel_prec as i64);
        }
        let n = rel_prec as i64;
        let a = Series::from_poly(f, self.num.coeffs(), n);
        let b = Series::from_poly(f, self.den.coeffs(), n);
        a.div(&b).expect("unit denominator").shift(self.shift)
    }

    pub fn add(&self, o: &LocalFunction) -> Result<LocalFunction> {
        let lo = self.shift.min(o.shift);
        let lift = |g: &LocalFunction| {
            Poly::monomial(g.field(), FieldElement::ONE, (g.shift - lo) as usize).mul(&g.num)
        };
        let num = lift(self).mul(&o.den).add(&lift(o).mul(&self.den));
        LocalFunction::new(num, self.den.mul(&o.den), lo)
    }

    pub fn neg(&self) -> LocalFunction {
        LocalFunction { num: self.num.neg(), den: self.den.clone(), shift: self.shift }
    }

    pub fn mul(&self, o: &LocalFunction) -> Result<LocalFunction> {
        LocalFunction::new(self.num.mul(&o.num), self.den.mul(&o.den), self.shift + o.shift)
    }

    pub fn scale(&self, c: FieldElement) -> LocalFunction {
        LocalFunction { num: self.num.scale(c), den: self.den.clone(), shift: self.shift }
    }

    /// Leading coefficient at `u = 0`.
    pub fn leading(&self) -> FieldElement {
        let f = self.field();
        f.div(self.num.coeff(0), self.den.coeff(0)).unwrap_or(FieldElement::ZERO)
    }
}

/// A rational function `num(t) / den(t)` on `P^1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn polynomial(num: Poly) -> RationalFunction {
        let f = num.field().clone();
        RationalFunction { num, den: Poly::constant(&f, FieldElement::ONE) }
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.num.field()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Germ at a point in the local parameter `t - a`, or `1/t` at infinity.
    pub fn local(&self, at: Point) -> LocalFunction {
        let f = self.field();
        match at {
            Point::Finite(a) => LocalFunction::new(
                Poly::new(f, self.num.expand_at(a, self.num.coeffs().len() as i64).coefficients_from_zero()),
                Poly::new(f, self.den.expand_at(a, self.den.coeffs().len() as i64).coefficients_from_zero()),
                0,
            )
            .expect("nonzero denominator"),
            Point::Infinity => {
                let dn = self.num.degree().map_or(0, |d| d as i64);
                let dd = self.den.degree().map_or(0, |d| d as i64);
                let rev = |p: &Poly| Poly::new(f, p.coeffs().iter().rev().copied().collect());
                LocalFunction::new(rev(&self.num), rev(&self.den), dd - dn).expect("nonzero denominator")
            }
        }
    }

    /// Rational poles, ascending, with `Infinity` last.
    pub fn poles(&self) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::new();
        for a in self.field().elements() {
            if self.local(Point::Finite(a)).valuation().is_some_and(|v| v < 0) {
                out.push(Point::Finite(a));
            }
        }
        if self.local(Point::Infinity).valuation().is_some_and(|v| v < 0) {
            out.push(Point::Infinity);
        }
        out
    }

    /// Points where the order of vanishing is nonzero, with that order; exhaustive over rational points.
    pub fn divisor(&self) -> Vec<(Point, i64)> {
        let mut out = Vec::new();
        for a in self.field().elements() {
            let v = self.local(Point::Finite(a)).valuation().unwrap_or(0);
            if v != 0 {
                out.push((Point::Finite(a), v));
            }
        }
        let v = self.local(Point::Infinity).valuation().unwrap_or(0);
        if v != 0 {
            out.push((Point::Infinity, v));
        }
        out
    }
}

impl Series {
    /// Coefficients of `t^0, t^1, ...` up to the precision (the series must have no pole).
    pub fn coefficients_from_zero(&self) -> Vec<FieldElement> {
        (0..self.abs_precision().max(0)).map(|i| self.coeff(i).unwrap_or(FieldElement::ZERO)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::field::make_field;

    #[test]
    fn quadratic_at_infinity() {
        let f = make_field(3, 1).unwrap();
        let g = RationalFunction::polynomial(Poly::from_ints(&f, &[0, -1, 1]));
        let loc = g.local(Point::Infinity);
        assert_eq!(loc.valuation(), Some(-2));
        let s = loc.expand(4);
        assert_eq!(s.coeff(-2), Some(f.one()));
        assert_eq!(s.coeff(-1), Some(f.from_int(-1)));
        assert_eq!(g.poles(), alloc::vec![Point::Infinity]);
    }

    #[test]
    fn simple_pole_at_one() {
        let f = make_field(5, 1).unwrap();
        let g = RationalFunction::new(Poly::from_ints(&f, &[1]), Poly::from_ints(&f, &[-1, 1])).unwrap();
        assert_eq!(g.local(Point::Finite(f.one())).valuation(), Some(-1));
        assert_eq!(g.local(Point::Infinity).valuation(), Some(1));
        assert_eq!(g.divisor(), alloc::vec![(Point::Finite(f.one()), -1), (Point::Infinity, 1)]);
    }
}
