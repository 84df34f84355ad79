//! Exact coefficient rings: arbitrary-precision integers and rationals,
//! the cyclotomic field Q(zeta_12), and integer Laurent polynomials.
//!
//! Every ring shares the [`Ring`] contract consumed by the series engine.
//! All values are immutable after construction and all operations are pure,
//! so elements can be shared and sent across threads freely.

mod cyclo;
mod laurent;

pub use cyclo::Cyclo12;
pub use laurent::LaurentPoly;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision signed integer.
pub type Int = num_bigint::BigInt;

/// Arbitrary-precision rational, always stored reduced with positive denominator.
pub type Rat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("{0} does not divide 12")]
    InvalidRootOrder(u32),
}

/// A commutative ring with exact arithmetic and canonical equality.
///
/// Operations are associated functions rather than methods so that
/// implementations on foreign types ([`Int`], [`Rat`]) never collide with
/// the `std::ops` traits those types already provide.
pub trait Ring: Clone + PartialEq + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(a: &Self, b: &Self) -> Self;
    fn neg(a: &Self) -> Self;
    fn mul(a: &Self, b: &Self) -> Self;

    /// Multiplicative inverse. Errors on zero and on non-units.
    fn invert(a: &Self) -> Result<Self, RingError>;

    /// Canonical image of a machine integer.
    fn from_int(n: i64) -> Self;

    fn sub(a: &Self, b: &Self) -> Self {
        Self::add(a, &Self::neg(b))
    }

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Ring for Int {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn add(a: &Self, b: &Self) -> Self {
        a + b
    }

    fn neg(a: &Self) -> Self {
        -a
    }

    fn mul(a: &Self, b: &Self) -> Self {
        a * b
    }

    fn invert(a: &Self) -> Result<Self, RingError> {
        if Zero::is_zero(a) {
            Err(RingError::DivisionByZero)
        } else if One::is_one(&a.abs()) {
            Ok(a.clone())
        } else {
            Err(RingError::NotAUnit(a.to_string()))
        }
    }

    fn from_int(n: i64) -> Self {
        Int::from(n)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

impl Ring for Rat {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn add(a: &Self, b: &Self) -> Self {
        a + b
    }

    fn neg(a: &Self) -> Self {
        -a
    }

    fn mul(a: &Self, b: &Self) -> Self {
        a * b
    }

    fn invert(a: &Self) -> Result<Self, RingError> {
        if Zero::is_zero(a) {
            Err(RingError::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn from_int(n: i64) -> Self {
        Rat::from_integer(Int::from(n))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}
