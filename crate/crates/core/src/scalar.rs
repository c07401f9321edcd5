//! Scalar abstractions and exact rational helpers.
//!
//! Geometry in this crate is written against [`Scalar`] so that the same
//! predicates run on exact rationals, machine integers and `f64`. Every
//! decision that feeds a certificate uses [`Rational`]; `f64` is only used by
//! test oracles and rendering.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in canonical form.
pub type Rational = BigRational;

/// Ring operations plus an order. Division is only meaningful for fields.
pub trait Scalar: Clone + PartialOrd + Num + Signed + Debug {
    fn from_i64(v: i64) -> Self;
    fn to_f64_lossy(&self) -> f64;
}

/// A scalar whose comparisons are exact, usable as a map key.
pub trait ExactScalar: Scalar + Ord + Hash {}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}
impl ExactScalar for Rational {}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_f64_lossy(&self) -> f64 {
        *self as f64
    }
}
impl ExactScalar for i64 {}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn to_f64_lossy(&self) -> f64 {
        *self as f64
    }
}
impl ExactScalar for i128 {}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

/// `n/d` as a rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Exact conversion of a finite `f64` (a dyadic rational).
pub fn from_f64_exact(v: f64) -> Rational {
    Rational::from_f64(v).expect("finite float")
}

pub fn floor(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

pub fn to_u64(n: &BigInt) -> Result<u64> {
    n.to_u64()
        .ok_or_else(|| Error::Numeric(format!("integer {n} does not fit in u64")))
}

/// Integer square root (floor) of a non-negative big integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative");
    n.sqrt()
}

/// Rational `u >= sqrt(x)` with `u - sqrt(x) < 1/den`.
pub fn sqrt_upper(x: &Rational, den: u64) -> Rational {
    let d = BigInt::from(den);
    // ceil(sqrt(x * d^2)) / d
    let scaled = x * Rational::from_integer(&d * &d);
    let fl = floor(&scaled);
    let mut root = isqrt(&fl);
    while Rational::from_integer(&root * &root) < scaled {
        root += 1;
    }
    Rational::new(root, d)
}

/// Rational `l <= sqrt(x)` with `sqrt(x) - l < 1/den`.
pub fn sqrt_lower(x: &Rational, den: u64) -> Rational {
    let d = BigInt::from(den);
    let scaled = x * Rational::from_integer(&d * &d);
    let root = isqrt(&floor(&scaled));
    Rational::new(root, d)
}

/// Certified enclosure of pi: `PI_LOWER < pi < PI_UPPER`, width 1e-14.
pub fn pi_bounds() -> (Rational, Rational) {
    let den = BigInt::from(100_000_000_000_000i64);
    (
        Rational::new(BigInt::from(314_159_265_358_979i64), den.clone()),
        Rational::new(BigInt::from(314_159_265_358_980i64), den),
    )
}

/// `"num/den"` (or `"num"` for integers).
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str_radix(n.trim(), 10).map_err(|_| bad())?;
        let d = BigInt::from_str_radix(d.trim(), 10).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational::new(n, d))
    } else if let Some((ip, fp)) = s.split_once('.') {
        // decimal literal, exact
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches('-'), fp);
        let n = BigInt::from_str_radix(&digits, 10).map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let q = Rational::new(n, d);
        Ok(if neg { -q } else { q })
    } else {
        let n = BigInt::from_str_radix(s, 10).map_err(|_| bad())?;
        Ok(Rational::from_integer(n))
    }
}

/// `#[serde(with = "crate::scalar::serde_rational")]`
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Rational exponent-free power.
pub fn pow(q: &Rational, e: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e {
        out *= q;
    }
    out
}

/// Smallest `k` with `q <= k` as u64.
pub fn ceil_u64(q: &Rational) -> Result<u64> {
    to_u64(&ceil(q))
}

pub fn floor_u64(q: &Rational) -> Result<u64> {
    if q.is_negative() {
        return Ok(0);
    }
    to_u64(&floor(q))
}

/// `true` when `n` is even.
pub fn is_even(n: &BigInt) -> bool {
    n.is_even()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-7/2", "5", "0"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn sqrt_bounds_bracket() {
        let two = int(2);
        let up = sqrt_upper(&two, 1_000_000);
        let lo = sqrt_lower(&two, 1_000_000);
        assert!(&up * &up >= two);
        assert!(&lo * &lo <= two);
        assert!(&up - &lo <= rat(1, 1_000_000));
        let nine = int(9);
        assert_eq!(sqrt_upper(&nine, 10), int(3));
        assert_eq!(sqrt_lower(&nine, 10), int(3));
    }

    #[test]
    fn pi_enclosure() {
        let (lo, hi) = pi_bounds();
        assert!(from_f64_exact(std::f64::consts::PI) > lo);
        assert!(from_f64_exact(std::f64::consts::PI) < hi);
    }
}
