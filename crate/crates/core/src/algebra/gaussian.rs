//! Gaussian rationals `a + b·i` with `a, b ∈ Q`.
//!
//! Complex Hodge-filtration data is restricted to this field so that
//! conjugation, and with it every reality test, is exact.

use std::fmt;
use std::str::FromStr;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{Field, Ring};
use super::rational::{rational_from_json, Rational};
use crate::error::Error;

/// An element `re + im·i` of `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

/// Short alias used throughout the crate.
pub type Gaussian = GaussianRational;

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    /// The real number `r`.
    pub fn real(r: Rational) -> Self {
        GaussianRational { re: r, im: Rational::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::real(Rational::one()),
            1 => Self::i(),
            2 => Self::real(Rational::from_int(-1)),
            _ => -Self::i(),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational { re: Rational::from_int(re), im: Rational::from_int(im) }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    /// Parses the JSON encodings accepted for Gaussian scalars: a rational
    /// literal (string or integer) or an object `{"re": .., "im": ..}`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, Error> {
        match v {
            serde_json::Value::Object(m) => {
                let re = match m.get("re") {
                    Some(x) => rational_from_json(x)?,
                    None => Rational::zero(),
                };
                let im = match m.get("im") {
                    Some(x) => rational_from_json(x)?,
                    None => Rational::zero(),
                };
                for k in m.keys() {
                    if k != "re" && k != "im" {
                        return Err(Error::Schema(format!("unknown key {k:?} in Gaussian scalar")));
                    }
                }
                Ok(GaussianRational { re, im })
            }
            other => Ok(Self::real(rational_from_json(other)?)),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"re": self.re.to_string(), "im": self.im.to_string()})
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `a`, `bi`, `a+bi` and `a-bi` with rational `a`, `b`
    /// (whitespace is ignored).
    fn from_str(s: &str) -> Result<Self, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("invalid Gaussian rational {s:?}"));
        let Some(body) = t.strip_suffix('i') else {
            return t.parse::<Rational>().map(Self::real).map_err(|_| bad());
        };
        // Split at the last sign that is neither leading nor an exponent sign.
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(j) => (&body[..j], &body[j..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            x => x.trim_start_matches('+'),
        };
        let re: Rational = re.parse().map_err(|_| bad())?;
        let im: Rational = im.parse().map_err(|_| bad())?;
        Ok(GaussianRational { re, im })
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let imag = if self.im.is_one() {
            "i".to_string()
        } else if self.im == Rational::from_int(-1) {
            "-i".to_string()
        } else {
            format!("{}*i", self.im)
        };
        if self.re.is_zero() {
            write!(f, "{imag}")
        } else if self.im.is_negative() {
            write!(f, "{}{}", self.re, imag)
        } else {
            write!(f, "{}+{}", self.re, imag)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Self::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        GaussianRational::default()
    }
    fn one() -> Self {
        Self::real(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &Self) -> Self {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Self::real(&self.re * &o.re);
        }
        GaussianRational {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
    fn neg(&self) -> Self {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
    fn from_i64(n: i64) -> Self {
        Self::real(Rational::from_int(n))
    }
}

impl Field for GaussianRational {
    fn div(&self, o: &Self) -> Self {
        if o.im.is_zero() {
            return GaussianRational { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        let n = o.norm_sq();
        let num = Ring::mul(self, &o.conjugate());
        GaussianRational { re: &num.re / &n, im: &num.im / &n }
    }
    fn conj(&self) -> Self {
        self.conjugate()
    }
    fn from_rational(r: &Rational) -> Self {
        Self::real(r.clone())
    }
    fn real_part(&self) -> Rational {
        self.re.clone()
    }
    fn imag_part(&self) -> Rational {
        self.im.clone()
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Ring::add(&self, &o)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Ring::sub(&self, &o)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Ring::mul(&self, &o)
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        Field::div(&self, &o)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Ring::neg(&self)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> Gaussian {
        Gaussian::from_ints(a, b)
    }

    #[test]
    fn literals_parse() {
        let p = |s: &str| s.parse::<Gaussian>().unwrap();
        assert_eq!(p("3"), g(3, 0));
        assert_eq!(p("i"), g(0, 1));
        assert_eq!(p("-i"), g(0, -1));
        assert_eq!(p("1-2i"), g(1, -2));
        assert_eq!(p("1/2 + 3/4i"), Gaussian::new(Rational::new(1, 2), Rational::new(3, 4)));
        assert_eq!(p("1e1+1e-1i"), Gaussian::new(Rational::from_int(10), Rational::new(1, 10)));
        assert!("x".parse::<Gaussian>().is_err());
        assert!("1+xi".parse::<Gaussian>().is_err());
    }

    #[test]
    fn conjugation_is_an_involution_and_multiplicative() {
        let z = g(3, -4);
        let w = g(-1, 2);
        assert_eq!(z.conj().conj(), z);
        assert_eq!((z.clone() * w.clone()).conj(), z.conj() * w.conj());
    }

    #[test]
    fn division_inverts_multiplication() {
        let z = g(3, -4);
        let w = g(-1, 2);
        assert_eq!((z.clone() * w.clone()) / w, z);
        assert_eq!(z.inv() * z.clone(), Gaussian::one());
        assert_eq!(z.norm_sq(), Rational::from_int(25));
    }

    #[test]
    fn powers_of_i_cycle() {
        assert_eq!(Gaussian::i_pow(2), g(-1, 0));
        assert_eq!(Gaussian::i_pow(-1), g(0, -1));
        assert_eq!(Gaussian::i_pow(7), g(0, -1));
    }

    #[test]
    fn json_round_trip_accepts_plain_rationals() {
        let z = g(1, -2);
        let back = Gaussian::from_json(&z.to_json()).unwrap();
        assert_eq!(back, z);
        let r = Gaussian::from_json(&serde_json::json!("3/4")).unwrap();
        assert_eq!(r, Gaussian::real(Rational::new(3, 4)));
    }
}
