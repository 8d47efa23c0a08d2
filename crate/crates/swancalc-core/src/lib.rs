//! Exact calculator for ramification invariants of coverings over finite fields.
//!
//! Layers, bottom-up:
//! - [`exact_arith`]: prime and extension fields, polynomials, truncated
//!   Laurent series, cyclotomic integers.
//! - [`local_ram`]: ramification index, wild different, logarithmic fixed-point
//!   length and Swan conductors over `F_q((t))`.
//! - [`group_rep`]: finite groups as tables and Brauer-character representations.
//! - [`curve_cover`]: abelian covers of the projective line, Swan classes,
//!   Euler characteristics and the point-count oracle.
//! - [`chow_surface`]: intersection rings of small rational surfaces and the
//!   logarithmic Chern calculus.
//! - [`rank1_kato`]: rank-one sheaves on surfaces, cleanness and cycle classes.
//! - [`log_charts`]: combinatorics of logarithmic products and barycentric blow-ups.
#![no_std]

extern crate alloc;

pub mod chow_surface;
pub mod curve_cover;
pub mod error;
pub mod exact_arith;
pub mod group_rep;
pub mod local_ram;
pub mod log_charts;
pub mod rank1_kato;

pub use error::{Error, Result};

/// Exact rational numbers used for cycle coefficients.
pub type Rational = num_rational::Ratio<i64>;
