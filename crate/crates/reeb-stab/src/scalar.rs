//! Two-mode scalars: exact arbitrary-precision rationals and floats.
//!
//! EXACT mode is closed under ring operations and never rounds, so every
//! identity asserted downstream (homogeneity, Euler relations, Rees
//! consistency) holds on the nose. FLOAT mode is the pathway for irrational
//! Reeb vectors, which are only representable approximately. The two modes
//! never mix: combining operands of different modes is a reported error, not
//! a silent promotion.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arithmetic mode tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Exact,
    Float,
}

/// A number in one of the two modes.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    pub fn zero(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::zero()),
            Mode::Float => Scalar::Float(0.0),
        }
    }

    pub fn one(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::one()),
            Mode::Float => Scalar::Float(1.0),
        }
    }

    pub fn from_integer(n: i64, mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::from_integer(BigInt::from(n))),
            Mode::Float => Scalar::Float(n as f64),
        }
    }

    /// Exact rational `numer/denom`. Panics if `denom` is zero.
    pub fn exact(numer: i64, denom: i64) -> Self {
        Scalar::Exact(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_rational(r: BigRational, mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(r),
            Mode::Float => Scalar::Float(r.to_f64().unwrap_or(f64::NAN)),
        }
    }

    pub fn float(x: f64) -> Self {
        Scalar::Float(x)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_positive(),
            Scalar::Float(x) => *x > 0.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_negative(),
            Scalar::Float(x) => *x < 0.0,
        }
    }

    fn check_mode(&self, other: &Scalar) -> Result<()> {
        if self.mode() == other.mode() {
            Ok(())
        } else {
            Err(Error::ModeMismatch {
                left: self.mode(),
                right: other.mode(),
            })
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_mode(other)?;
        Ok(match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a + b),
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_mode(other)?;
        Ok(match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a - b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a - b),
            _ => unreachable!(),
        })
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_mode(other)?;
        Ok(match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a * b),
            _ => unreachable!(),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_mode(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a / b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a / b),
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Float(a) => Scalar::Float(-a),
        }
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Exact(a) => Scalar::Exact(a.recip()),
            Scalar::Float(a) => Scalar::Float(1.0 / a),
        })
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(a.abs()),
            Scalar::Float(a) => Scalar::Float(a.abs()),
        }
    }

    /// Multiply by a machine integer without a mode tag.
    pub fn mul_int(&self, k: i64) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(a * BigRational::from_integer(BigInt::from(k))),
            Scalar::Float(a) => Scalar::Float(a * k as f64),
        }
    }

    /// Divide by a machine integer. Panics if `k` is zero.
    pub fn div_int(&self, k: i64) -> Scalar {
        assert!(k != 0, "division by zero integer");
        match self {
            Scalar::Exact(a) => Scalar::Exact(a / BigRational::from_integer(BigInt::from(k))),
            Scalar::Float(a) => Scalar::Float(a / k as f64),
        }
    }

    pub fn cmp_same_mode(&self, other: &Scalar) -> Result<Ordering> {
        self.check_mode(other)?;
        Ok(match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            (Scalar::Float(a), Scalar::Float(b)) => {
                a.partial_cmp(b).ok_or(Error::invalid("NaN comparison"))?
            }
            _ => unreachable!(),
        })
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Parse from a model string: `"p/q"` and `"p"` are exact, anything with a
    /// decimal point or exponent is a float.
    pub fn parse(text: &str) -> Result<Scalar> {
        let text = text.trim();
        if let Ok(r) = BigRational::from_str(text) {
            return Ok(Scalar::Exact(r));
        }
        text.parse::<f64>()
            .map(Scalar::Float)
            .map_err(|_| Error::Parse {
                message: format!("cannot parse `{text}` as a rational or a float"),
            })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            // 17 significant digits round-trip every f64.
            Scalar::Float(x) => write!(f, "{x:.16e}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(r) => serializer.serialize_str(&r.to_string()),
            Scalar::Float(x) => serializer.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ScalarVisitor;

        impl Visitor<'_> for ScalarVisitor {
            type Value = Scalar;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string like \"3/2\" or a float")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Scalar, E> {
                BigRational::from_str(v.trim())
                    .map(Scalar::Exact)
                    .map_err(|_| E::custom(format!("invalid rational `{v}`")))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::Float(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::Float(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::Float(v as f64))
            }
        }

        deserializer.deserialize_any(ScalarVisitor)
    }
}

/// n! as an exact rational.
pub fn factorial(n: usize) -> BigRational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

/// n! in the requested mode.
pub fn factorial_scalar(n: usize, mode: Mode) -> Scalar {
    Scalar::from_rational(factorial(n), mode)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_is_closed_and_error_free() {
        let third = Scalar::exact(1, 3);
        let sixth = Scalar::exact(1, 6);
        let sum = third.add(&sixth).unwrap();
        assert_eq!(sum, Scalar::exact(1, 2));
        let prod = third.mul(&sixth).unwrap();
        assert_eq!(prod, Scalar::exact(1, 18));
    }

    #[test]
    fn mixed_mode_is_an_error_not_a_promotion() {
        let a = Scalar::exact(1, 2);
        let b = Scalar::float(0.5);
        let err = a.add(&b).unwrap_err();
        assert!(matches!(err, Error::ModeMismatch { .. }));
        let err = b.mul(&a).unwrap_err();
        assert!(matches!(err, Error::ModeMismatch { .. }));
    }

    #[test]
    fn division_by_zero_is_reported() {
        let a = Scalar::exact(1, 2);
        assert!(matches!(
            a.div(&Scalar::zero(Mode::Exact)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn parse_modes() {
        assert_eq!(Scalar::parse("3/2").unwrap(), Scalar::exact(3, 2));
        assert_eq!(Scalar::parse("4").unwrap(), Scalar::exact(4, 1));
        assert_eq!(Scalar::parse("1.5").unwrap(), Scalar::float(1.5));
        assert!(Scalar::parse("x").is_err());
    }

    #[test]
    fn display_rationals_as_p_over_q() {
        assert_eq!(Scalar::exact(3, 2).to_string(), "3/2");
        assert_eq!(Scalar::exact(4, 2).to_string(), "2");
    }

    #[test]
    fn serde_round_trip() {
        let exact = Scalar::exact(-7, 5);
        let json = serde_json::to_string(&exact).unwrap();
        assert_eq!(json, "\"-7/5\"");
        assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), exact);

        let float = Scalar::float(0.1);
        let json = serde_json::to_string(&float).unwrap();
        assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), float);
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigRational::one());
        assert_eq!(factorial(4), BigRational::from_integer(BigInt::from(24)));
    }
}
