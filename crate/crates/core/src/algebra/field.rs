//! Scalar abstractions shared by matrices, subspaces and polynomials.
//!
//! The methods take references so that generic code over big-number
//! scalars does not have to clone operands just to combine them.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;

/// A commutative ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A field with an (optionally trivial) conjugation involution.
pub trait Field: Ring {
    /// Division; panics when `o` is zero.
    fn div(&self, o: &Self) -> Self;
    /// Complex conjugation (identity on real fields).
    fn conj(&self) -> Self;
    /// Embeds a rational scalar.
    fn from_rational(r: &Rational) -> Self;
    /// The real part, when the field sits inside the Gaussian numbers.
    fn real_part(&self) -> Rational;
    /// The imaginary part (zero for real fields).
    fn imag_part(&self) -> Rational;

    fn inv(&self) -> Self {
        Self::one().div(self)
    }

    /// `|z|^2 = z * conj(z)` as a rational.
    fn norm_sq(&self) -> Rational {
        let r = self.real_part();
        let i = self.imag_part();
        &(&r * &r) + &(&i * &i)
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl Field for Rational {
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn real_part(&self) -> Rational {
        self.clone()
    }
    fn imag_part(&self) -> Rational {
        Rational::zero()
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}
