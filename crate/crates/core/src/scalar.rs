//! Exact ground fields.
//!
//! Everything downstream is generic over [`Scalar`]. Two families implement
//! it: arbitrary-precision rationals ([`Rational`]) and prime fields
//! ([`Fp<P>`]), with the prime fixed at the type level.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use malachite::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational numbers, always stored reduced.
///
/// Wraps malachite's rationals, which keep small numerators and
/// denominators inline; most values met here are small.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(malachite::Rational);

impl Rational {
    /// `n / d`; panics if `d` is zero.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Rational(malachite::Rational::from_integers(Integer::from(n), Integer::from(d)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(malachite::Rational::from(n))
    }

    pub fn is_integer(&self) -> bool {
        self.0.denominator_ref() == &1u32
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Rational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Rational(self.0 + o.0)
    }
}

impl Sub for Rational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Rational(self.0 - o.0)
    }
}

impl Mul for Rational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Rational(self.0 * o.0)
    }
}

/// Panics on division by zero; use [`Scalar::inverse`] for the checked form.
impl Div for Rational {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        Rational(self.0 / o.0)
    }
}

impl Neg for Rational {
    type Output = Self;
    fn neg(self) -> Self {
        Rational(-self.0)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::default()
    }
    fn is_zero(&self) -> bool {
        self.0 == 0u32
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::from_integer(1)
    }
}

/// Descriptor of a ground field, used for serialization and reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    PrimeField(u64),
}

impl Field {
    /// Checked constructor for a prime field.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::PrimeField(p) => *p,
        }
    }

    /// Whether the integer `n` maps to zero in this field.
    pub fn divides(&self, n: u64) -> bool {
        match self {
            Field::Rationals => n == 0,
            Field::PrimeField(p) => n % p == 0,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Parses the command-line spelling `q` or `fp:P`.
    fn from_str(s: &str) -> Result<Field> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "q" {
            return Ok(Field::Rationals);
        }
        if let Some(rest) = lower.strip_prefix("fp:") {
            let p = rest
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad prime in field descriptor {s:?}")))?;
            return Field::prime(p);
        }
        Err(Error::Parse(format!("unknown field {s:?}, expected q or fp:P")))
    }
}

/// JSON form: `"Q"` or `{"Fp": p}`.
impl Serialize for Field {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        #[derive(Serialize)]
        struct Fp {
            #[serde(rename = "Fp")]
            p: u64,
        }
        match self {
            Field::Rationals => s.serialize_str("Q"),
            Field::PrimeField(p) => Fp { p: *p }.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Wire {
            Name(String),
            Prime {
                #[serde(rename = "Fp")]
                p: u64,
            },
        }
        match Wire::deserialize(d)? {
            Wire::Name(n) if n == "Q" => Ok(Field::Rationals),
            Wire::Name(n) => Err(serde::de::Error::custom(format!("unknown field {n:?}"))),
            Wire::Prime { p } => Field::prime(p).map_err(serde::de::Error::custom),
        }
    }
}

pub const fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of an exact field.
///
/// The arithmetic supertraits give value semantics; the `*_ref` methods are
/// the allocation-friendly forms used in matrix kernels.
pub trait Scalar:
    Clone
    + fmt::Debug
    + Eq
    + Hash
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn field() -> Field;

    fn from_i64(n: i64) -> Self;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;

    /// `self += a * b`.
    fn add_mul(&mut self, a: &Self, b: &Self);

    /// Multiplicative inverse; `DivisionByZero` on zero.
    fn inverse(&self) -> Result<Self>;

    /// Exact decimal spelling: `"a/b"` (or `"a"`) over ℚ, the residue over 𝔽_p.
    fn to_exact_string(&self) -> String;

    /// Parses `"a"` or `"a/b"`, mapping the fraction into the field.
    fn parse_exact(s: &str) -> Result<Self>;

    fn from_usize(n: usize) -> Self {
        Self::from_i64(n as i64)
    }
}

/// Scalar inverse with the checked error path.
pub fn scalar_inverse<S: Scalar>(s: &S) -> Result<S> {
    s.inverse()
}

impl Scalar for Rational {
    fn field() -> Field {
        Field::Rationals
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n)
    }

    fn add_ref(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }

    fn sub_ref(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.0 += &a.0 * &b.0;
    }

    fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(Rational(malachite::Rational::from(1u32) / &self.0))
        }
    }

    fn to_exact_string(&self) -> String {
        self.0.to_string()
    }

    fn parse_exact(s: &str) -> Result<Self> {
        let (n, d) = split_fraction(s)?;
        let parse = |t: &str| Integer::from_str(t).map_err(|_| Error::Parse(format!("not an exact scalar: {s:?}")));
        let (n, d) = (parse(n)?, parse(d)?);
        if d == 0u32 {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(malachite::Rational::from_integers(n, d)))
    }
}

/// Splits `"a/b"` or `"a"` into trimmed numerator and denominator spellings.
fn split_fraction(s: &str) -> Result<(&str, &str)> {
    let s = s.trim();
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let (n, d) = (n.trim(), d.trim());
    if n.is_empty() || d.is_empty() {
        return Err(Error::Parse(format!("not an exact scalar: {s:?}")));
    }
    Ok((n, d))
}

/// Decimal integer spelling reduced modulo `p`.
fn residue(t: &str, p: u64) -> Option<u64> {
    let (neg, digits) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    if digits.is_empty() {
        return None;
    }
    let mut r: u64 = 0;
    for c in digits.chars() {
        let d = c.to_digit(10)? as u64;
        r = ((r as u128 * 10 + d as u128) % p as u128) as u64;
    }
    Some(if neg && r != 0 { p - r } else { r })
}

/// Residue class modulo the prime `P`, stored in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const PRIME_CHECK: () = assert!(is_prime(P), "Fp modulus must be prime");

    pub fn new(value: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::PRIME_CHECK;
        Fp(value.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::new(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn field() -> Field {
        Field::PrimeField(P)
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }

    fn add_ref(&self, other: &Self) -> Self {
        *self + *other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        *self - *other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        *self * *other
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = *self + *a * *b;
    }

    fn inverse(&self) -> Result<Self> {
        if self.0 == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.pow(P - 2))
        }
    }

    fn to_exact_string(&self) -> String {
        self.0.to_string()
    }

    fn parse_exact(s: &str) -> Result<Self> {
        let (n, d) = split_fraction(s)?;
        let reduce = |t: &str| {
            residue(t, P)
                .map(Fp)
                .ok_or_else(|| Error::Parse(format!("not an exact scalar: {s:?}")))
        };
        Ok(reduce(n)?.mul_ref(&reduce(d)?.inverse()?))
    }
}

/// Maps a rational into `S`, failing when the denominator vanishes there.
pub fn from_rational<S: Scalar>(q: &Rational) -> Result<S> {
    S::parse_exact(&q.to_exact_string())
}
