//! Exact scalar arithmetic over the rationals and prime fields.
//!
//! Every scalar is kept in canonical form: rationals in lowest terms with a
//! positive denominator (enforced by `num-rational`), prime-field elements as
//! representatives in `0..p`. All arithmetic is exact; nothing in this crate
//! ever rounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::Error;

/// The coefficient field: `Q` or `F_p` for a prime `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Builds `F_p`, rejecting non-primes.
    pub fn prime(p: u64) -> Result<Field, Error> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Prime(_) => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::one()),
            Field::Prime(_) => Scalar::Mod(1),
        }
    }

    /// Canonical embedding of a signed integer.
    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let p = *p as i128;
                Scalar::Mod((((n as i128) % p + p) % p) as u64)
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x + y)
            }
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % p),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (Field::Prime(p), Scalar::Mod(x)) => Scalar::Mod(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x * y)
            }
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    /// Multiplicative inverse of a nonzero scalar.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar, Error> {
        match (self, a) {
            (Field::Rationals, Scalar::Rational(x)) => {
                if x.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(x.recip()))
                }
            }
            (Field::Prime(p), Scalar::Mod(x)) => {
                if *x == 0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Mod(mod_pow(*x, p - 2, *p)))
                }
            }
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Mod(x) => *x == 0,
        }
    }

    /// Parses the serialized form: decimal integers, `n/d` fractions over `Q`,
    /// canonical representatives over `F_p`.
    pub fn parse(&self, text: &str) -> Result<Scalar, Error> {
        let bad = || Error::ScalarParse(text.to_string());
        match self {
            Field::Rationals => {
                let (num, den) = match text.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (text, "1"),
                };
                let n: BigInt = num.trim().parse().map_err(|_| bad())?;
                let d: BigInt = den.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rational(BigRational::new(n, d)))
            }
            Field::Prime(p) => {
                let t = text.trim();
                let (neg, digits) = match t.strip_prefix('-') {
                    Some(rest) => (true, rest),
                    None => (false, t),
                };
                let v: u128 = digits.parse().map_err(|_| bad())?;
                let v = (v % *p as u128) as u64;
                Ok(Scalar::Mod(if neg && v != 0 { p - v } else { v }))
            }
        }
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        matches!(
            (self, a),
            (Field::Rationals, Scalar::Rational(_)) | (Field::Prime(_), Scalar::Mod(_))
        )
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

impl std::str::FromStr for Field {
    type Err = Error;

    /// `Q` or `F<p>`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        if let Some(digits) = s.strip_prefix('F') {
            let p: u64 = digits
                .parse()
                .map_err(|_| Error::FieldParse(s.to_string()))?;
            return Field::prime(p);
        }
        Err(Error::FieldParse(s.to_string()))
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A field element in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Mod(u64),
}

impl Scalar {
    /// Serialized form: `n` or `n/d` in lowest terms with `d > 0`; `0..p-1`.
    pub fn to_serial(&self) -> String {
        match self {
            Scalar::Rational(x) => {
                if x.denom().is_one() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Mod(v) => v.to_string(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_serial())
    }
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Internal arithmetic context so the dense kernels can be written once and
/// monomorphized per field. `Q` clones big integers; `F_p` stays in `u64`.
pub(crate) trait ScalarOps {
    type Elem: Clone + PartialEq;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub(crate) struct QOps;

impl ScalarOps for QOps {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub(crate) struct FpOps {
    pub p: u64,
}

impl ScalarOps for FpOps {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        mod_pow(*a, self.p - 2, self.p)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(7).is_ok());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(9).is_err());
    }

    #[test]
    fn parse_roundtrip_q() {
        let f = Field::Rationals;
        let x = f.parse("-4/6").unwrap();
        assert_eq!(x.to_serial(), "-2/3");
        let y = f.parse("5").unwrap();
        assert_eq!(y.to_serial(), "5");
    }

    #[test]
    fn parse_roundtrip_fp() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.parse("7").unwrap().to_serial(), "2");
        assert_eq!(f.parse("-1").unwrap().to_serial(), "4");
    }

    #[test]
    fn field_from_str() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("F3".parse::<Field>().unwrap(), Field::Prime(3));
        assert!("F4".parse::<Field>().is_err());
        assert!("R".parse::<Field>().is_err());
    }

    #[test]
    fn inverse_of_nonzero() {
        let f = Field::prime(7).unwrap();
        for v in 1..7u64 {
            let x = Scalar::Mod(v);
            let inv = f.inv(&x).unwrap();
            assert_eq!(f.mul(&x, &inv), f.one());
        }
        assert!(f.inv(&f.zero()).is_err());
    }
}
