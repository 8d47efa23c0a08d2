//! Exact arithmetic substrate: finite fields, polynomials, truncated Laurent
//! series and cyclotomic integers.
//!
//! Local computations follow a doubling policy: they run at a precision `N`
//! and again at `2N`, and [`stable`] rejects results that moved.

pub mod cyclotomic;
pub mod field;
pub mod poly;
pub mod rational;
pub mod series;

pub use cyclotomic::{teichmuller_lift, teichmuller_lift_into, CyclotomicInt};
pub use field::{is_prime, make_field, FieldDescriptor, FieldElement};
pub use poly::Poly;
pub use rational::{LocalFunction, Point, RationalFunction};
pub use series::{series_op, Series, SeriesOp};

use crate::error::{Error, Result};

/// Runs `compute` at precision `n` and `2n`; both results must agree.
pub fn stable<T: PartialEq>(n: usize, compute: impl Fn(usize) -> Result<T>) -> Result<T> {
    let lo = compute(n)?;
    let hi = compute(2 * n)?;
    if lo == hi {
        Ok(lo)
    } else {
        Err(Error::UnstablePrecision)
    }
}
