//! Arbitrary-precision rationals.
//!
//! [`Rational`] is a thin newtype over [`num_rational::BigRational`] that
//! fixes the textual encoding used throughout the crate (`"p/q"` or `"p"`),
//! adds decimal parsing (`"0.25"`, `"1e8"`) and a significant-digit decimal
//! renderer for reports.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(pub BigRational);

impl Rational {
    /// Builds `n/d`; panics when `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Builds the integer `n`.
    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds a rational from a big integer.
    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    /// Builds `n/d` from big integers; panics when `d == 0`.
    pub fn from_bigints(n: BigInt, d: BigInt) -> Self {
        Rational(BigRational::new(n, d))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    /// Integer power (negative exponents invert).
    pub fn pow(&self, e: i32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, e))
    }

    /// `10^e` as an exact rational.
    pub fn pow10(e: i32) -> Self {
        Rational::from_int(10).pow(e)
    }

    /// Lossy conversion, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// The integer value when the rational is integral.
    pub fn to_bigint(&self) -> Option<BigInt> {
        if self.0.is_integer() {
            Some(self.0.to_integer())
        } else {
            None
        }
    }

    /// The value as an `i64` when it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.to_bigint().and_then(|n| n.to_i64())
    }

    /// Renders the value with `sig` significant digits, in the style of
    /// C's `%.*g`: plain notation for moderate exponents, scientific otherwise.
    pub fn to_decimal(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let a = self.0.abs();
        let num = a.numer().clone();
        let den = a.denom().clone();
        // Estimate the decimal exponent e with 10^e <= a < 10^(e+1).
        let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
        let ten = BigInt::from(10);
        let geq_pow = |e: i64| -> bool {
            // a >= 10^e ?
            if e >= 0 {
                num >= &den * num_traits::pow(ten.clone(), e as usize)
            } else {
                &num * num_traits::pow(ten.clone(), (-e) as usize) >= den
            }
        };
        while !geq_pow(e) {
            e -= 1;
        }
        while geq_pow(e + 1) {
            e += 1;
        }
        // digits = round(a * 10^(sig-1-e)), half away from zero.
        let shift = sig as i64 - 1 - e;
        let (sn, sd) = if shift >= 0 {
            (&num * num_traits::pow(ten.clone(), shift as usize), den.clone())
        } else {
            (num.clone(), &den * num_traits::pow(ten.clone(), (-shift) as usize))
        };
        let (q, r) = sn.div_rem(&sd);
        let mut digits = if &r * BigInt::from(2) >= sd { q + 1 } else { q };
        if digits.to_string().len() > sig {
            digits /= BigInt::from(10);
            e += 1;
        }
        let mut ds = digits.to_string();
        while ds.len() < sig {
            ds.push('0');
        }
        let body = if (-5..sig as i64).contains(&e) {
            if e >= 0 {
                let int_len = (e + 1) as usize;
                let (ip, fp) = ds.split_at(int_len);
                let fp = fp.trim_end_matches('0');
                if fp.is_empty() {
                    ip.to_string()
                } else {
                    format!("{ip}.{fp}")
                }
            } else {
                let zeros = "0".repeat((-e - 1) as usize);
                let fp = ds.trim_end_matches('0');
                format!("0.{zeros}{fp}")
            }
        } else {
            let (h, t) = ds.split_at(1);
            let t = t.trim_end_matches('0');
            let mant = if t.is_empty() { h.to_string() } else { format!("{h}.{t}") };
            let sign = if e < 0 { '-' } else { '+' };
            format!("{mant}e{sign}{:02}", e.abs())
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{ip}{fp}");
    let n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    let v = Rational::from_bigint(n) * Rational::pow10(exp - fp.len() as i32);
    Some(if neg { -v } else { v })
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"p"`, `"p/q"`, and decimal forms such as `"-0.25"` or `"1e8"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
        if let Some((n, d)) = t.split_once('/') {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(Rational::from_bigints(n, d));
        }
        if let Ok(n) = BigInt::from_str(t) {
            return Ok(Rational::from_bigint(n));
        }
        parse_decimal(t).ok_or_else(bad)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        rational_from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Parses a JSON string or integer literal as a rational.
pub fn rational_from_json(v: &serde_json::Value) -> Result<Rational, Error> {
    match v {
        serde_json::Value::String(s) => s.parse(),
        serde_json::Value::Number(n) => n.to_string().parse(),
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                Rational($tr::$m(self.0, o.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, o: &'a Rational) -> Rational {
                Rational($tr::$m(&self.0, &o.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: &'a Rational) -> Rational {
                Rational($tr::$m(self.0, &o.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, o: &Rational) {
        self.0 += &o.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, o: &Rational) {
        self.0 -= &o.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, o: &Rational) {
        self.0 *= &o.0;
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_bigint(n)
    }
}

/// Least common multiple of the denominators of `v`.
pub fn common_denominator(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Scales a rational vector to the primitive integer vector on the same ray.
///
/// Returns the zero vector unchanged.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let l = common_denominator(v);
    let ints: Vec<BigInt> = v.iter().map(|r| (r.numer() * &l) / r.denom()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Sign of a big integer as -1, 0, 1.
pub fn bigint_sign(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl Rational {
    /// Three-way comparison with zero.
    pub fn signum(&self) -> Ordering {
        self.0.cmp(&BigRational::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal_forms() {
        assert_eq!("3/6".parse::<Rational>().unwrap(), Rational::new(1, 2));
        assert_eq!("-7".parse::<Rational>().unwrap(), Rational::from_int(-7));
        assert_eq!("0.25".parse::<Rational>().unwrap(), Rational::new(1, 4));
        assert_eq!("1e8".parse::<Rational>().unwrap(), Rational::from_int(100_000_000));
        assert_eq!("-2.5e-1".parse::<Rational>().unwrap(), Rational::new(-1, 4));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
    }

    #[test]
    fn displays_in_lowest_terms() {
        assert_eq!(Rational::new(4, -6).to_string(), "-2/3");
        assert_eq!(Rational::new(8, 4).to_string(), "2");
    }

    #[test]
    fn decimal_rendering_uses_requested_significant_digits() {
        assert_eq!(Rational::new(1, 3).to_decimal(12), "0.333333333333");
        assert_eq!(Rational::new(2, 3).to_decimal(12), "0.666666666667");
        assert_eq!(Rational::from_int(3).to_decimal(12), "3");
        assert_eq!(Rational::new(-1, 8).to_decimal(12), "-0.125");
        assert_eq!(Rational::new(1, 10_000_000).to_decimal(12), "1e-07");
        assert_eq!(Rational::new(99_999_999_999_999, 1).to_decimal(3), "1e+14");
        assert_eq!(Rational::new(999_999, 1_000_000).to_decimal(3), "1");
    }

    #[test]
    fn primitive_vectors_clear_denominators_and_content() {
        let v = [Rational::new(1, 2), Rational::new(3, 4), Rational::zero()];
        let p = primitive_integer_vector(&v);
        assert_eq!(p, vec![BigInt::from(2), BigInt::from(3), BigInt::from(0)]);
    }
}
