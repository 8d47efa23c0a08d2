//! Error type shared by every module of the core.

use alloc::string::String;
use core::fmt;

/// Failure modes of the exact computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NotPrime(u64),
    DegreeOutOfRange(u32),
    FieldTooLarge,
    FieldMismatch,
    DivisionByZero,
    NonPositiveValuation,
    ZeroInput,
    UnstablePrecision,
    IdentityAutomorphism,
    NonIntegral(String),
    NotInPPart,
    EllDividesOrder,
    NotSubgroup,
    NotEtale(String),
    PoleOrderNotPrimeToP,
    UnsupportedRamification(String),
    MissingRootsOfUnity(u64),
    OracleInapplicable(String),
    OutsideTraceCatalog(String),
    InvalidInput(String),
    NonIsolated,
    NegativeMultiplicity,
    NotClean(String),
    CleaningFailed,
    MismatchedIndexSets,
    OutOfRange(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::DegreeOutOfRange(k) => write!(f, "extension degree {k} outside 1..=12"),
            Error::FieldTooLarge => write!(f, "field order does not fit in 62 bits"),
            Error::FieldMismatch => write!(f, "operands live over different fields"),
            Error::DivisionByZero => write!(f, "division by exact zero"),
            Error::NonPositiveValuation => write!(f, "composition with a series of non-positive valuation"),
            Error::ZeroInput => write!(f, "zero has no multiplicative lift"),
            Error::UnstablePrecision => write!(f, "unstable precision: result changed when precision was doubled"),
            Error::IdentityAutomorphism => write!(f, "automorphism is the identity"),
            Error::NonIntegral(what) => write!(f, "integrality violated: {what}"),
            Error::NotInPPart => write!(f, "element order is not a power of p"),
            Error::EllDividesOrder => write!(f, "coefficient characteristic divides the element order"),
            Error::NotSubgroup => write!(f, "subset is not a subgroup"),
            Error::NotEtale(what) => write!(f, "cover not etale away from the boundary: {what}"),
            Error::PoleOrderNotPrimeToP => write!(f, "pole order must be prime to p"),
            Error::UnsupportedRamification(what) => write!(f, "unsupported ramification: {what}"),
            Error::MissingRootsOfUnity(e) => write!(f, "constant field lacks the {e}-th roots of unity"),
            Error::OracleInapplicable(what) => write!(f, "oracle inapplicable: {what}"),
            Error::OutsideTraceCatalog(what) => write!(f, "outside the trace catalog: {what}"),
            Error::InvalidInput(what) => write!(f, "invalid input: {what}"),
            Error::NonIsolated => write!(f, "fixed locus is not isolated"),
            Error::NegativeMultiplicity => write!(f, "negative multiplicity"),
            Error::NotClean(what) => write!(f, "not clean: {what}"),
            Error::CleaningFailed => write!(f, "failed to reach an s-clean model within the blow-up bound"),
            Error::MismatchedIndexSets => write!(f, "divisor index sets do not match"),
            Error::OutOfRange(what) => write!(f, "out of range: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
