//! Exact scalar arithmetic over ℚ or a prime field.
//!
//! Every scalar is stored as a [`BigRational`]. Over `F_p` the value is kept
//! as an integer in `0..p` with denominator 1, and the [`Field`] performs the
//! reduction after each operation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// The base field of an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Parses `"Q"` or `"F<p>"` and checks that `p` is prime.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "Q" {
            return Ok(Field::Rationals);
        }
        if let Some(rest) = t.strip_prefix('F') {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("malformed field `{t}`")))?;
            return Field::prime(p);
        }
        Err(Error::Parse(format!("unknown field `{t}` (expected \"Q\" or \"F<p>\")")))
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Validation(format!("field characteristic {p} is not prime")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::Validation(format!("prime {p} too large (must fit in 32 bits)")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(self) -> Scalar {
        Scalar::one()
    }

    pub fn from_int(self, n: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(n)))
    }

    /// Brings an arbitrary rational into canonical form for this field.
    ///
    /// Fails over `F_p` when the denominator is divisible by `p`.
    pub fn element(self, value: Scalar) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(value),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let den = value.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(Error::Validation(format!(
                        "coefficient {value} has denominator divisible by {p}"
                    )));
                }
                let num = value.numer().mod_floor(&pb);
                let inv = mod_inverse(den.to_u64().unwrap(), p);
                Ok(Scalar::from_integer((num * BigInt::from(inv)).mod_floor(&pb)))
            }
        }
    }

    fn reduce(self, value: Scalar) -> Scalar {
        match self {
            Field::Rationals => value,
            Field::Prime(p) => {
                debug_assert!(value.is_integer());
                Scalar::from_integer(value.to_integer().mod_floor(&BigInt::from(p)))
            }
        }
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            Field::Rationals => a.recip(),
            Field::Prime(p) => {
                let v = a.to_integer().to_u64().expect("reduced F_p element");
                Scalar::from_integer(BigInt::from(mod_inverse(v, p)))
            }
        }
    }

    /// `a - c * b`, the elimination step.
    pub fn sub_mul(self, a: &Scalar, c: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - c * b)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Renders a scalar as `n` or `n/d`.
pub fn format_scalar(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parses an integer or an `"a/b"` string into a rational.
pub fn parse_rational(text: &str) -> Option<Scalar> {
    let t = text.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Scalar::new(n, d))
        }
        None => t.parse::<BigInt>().ok().map(Scalar::from_integer),
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(p));
    debug_assert!(e.gcd.abs().is_one());
    e.x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fields() {
        assert_eq!(Field::parse("Q").unwrap(), Field::Rationals);
        assert_eq!(Field::parse("F7").unwrap(), Field::Prime(7));
        assert!(matches!(Field::parse("F8"), Err(Error::Validation(_))));
        assert!(matches!(Field::parse("R"), Err(Error::Parse(_))));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::Prime(5);
        let a = f.from_int(3);
        let b = f.from_int(4);
        assert_eq!(f.add(&a, &b), f.from_int(2));
        assert_eq!(f.mul(&a, &b), f.from_int(2));
        assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
        assert_eq!(f.from_int(-1), f.from_int(4));
        assert_eq!(f.element(Scalar::new(1.into(), 2.into())).unwrap(), f.from_int(3));
        assert!(f.element(Scalar::new(1.into(), 5.into())).is_err());
    }

    #[test]
    fn rationals() {
        let q = Field::Rationals;
        let half = parse_rational("1/2").unwrap();
        assert_eq!(q.add(&half, &half), q.one());
        assert_eq!(format_scalar(&parse_rational("-6/4").unwrap()), "-3/2");
        assert!(parse_rational("1/0").is_none());
    }
}
