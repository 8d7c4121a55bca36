//! Exact arithmetic over the dyadic rationals `Z[1/2]` and the dyadic circle
//! `Z[1/2]/Z`.
//!
//! A [`Dyadic`] is stored as `num / 2^exp` with `exp = 0` or `num` odd, so two
//! values are equal iff their fields are equal. The textual form `p/2^e` is the
//! exchange format used by the CLI and every JSON payload.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseDyadicError {
    #[error("malformed dyadic `{text}`: bad token `{token}`")]
    BadToken { text: String, token: String },
    #[error("malformed dyadic `{text}`: denominator must be written `2^e`, found `{token}`")]
    BadDenominator { text: String, token: String },
}

/// An exact element of `Z[1/2]` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    /// Builds `num / 2^exp`, canonicalizing by stripping common factors of two.
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        let mut num = num.into();
        let mut exp = exp;
        if num.is_zero() {
            return Dyadic { num, exp: 0 };
        }
        if exp > 0 {
            let twos = num.trailing_zeros().unwrap_or(0).min(u64::from(exp)) as u32;
            num >>= twos;
            exp -= twos;
        }
        Dyadic { num, exp }
    }

    pub fn zero() -> Self {
        Dyadic { num: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { num: BigInt::one(), exp: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(n, 0)
    }

    /// `2^k` for any integer `k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic::one().mul_pow2(k)
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn abs(&self) -> Self {
        Dyadic { num: self.num.abs(), exp: self.exp }
    }

    /// Multiplication by `2^k`, `k` of either sign.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.num.is_zero() {
            return Dyadic::zero();
        }
        let e = i64::from(self.exp) - k;
        if e >= 0 {
            Dyadic::new(self.num.clone(), u32::try_from(e).expect("dyadic exponent overflow"))
        } else {
            let shift = usize::try_from(-e).expect("dyadic exponent overflow");
            Dyadic { num: &self.num << shift, exp: 0 }
        }
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        self.num.div_floor(&(BigInt::one() << self.exp as usize))
    }

    /// If `self` is `±2^k`, returns `k`.
    pub fn log2_exact(&self) -> Option<i64> {
        let m = self.num.abs();
        if m.is_positive() && (&m & (&m - 1u32)).is_zero() {
            Some(m.bits() as i64 - 1 - i64::from(self.exp))
        } else {
            None
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.exp as usize)
    }

    /// Exact conversion from a rational whose reduced denominator is a power of two.
    pub fn from_rational(q: &BigRational) -> Option<Self> {
        let d = q.denom();
        if (d & (d - 1u32)).is_zero() {
            Some(Dyadic::new(q.numer().clone(), (d.bits() - 1) as u32))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.num.to_f64().unwrap_or(f64::NAN) / 2f64.powi(self.exp as i32)
    }

    /// Midpoint of `self` and `other`.
    pub fn midpoint(&self, other: &Dyadic) -> Dyadic {
        (self + other).mul_pow2(-1)
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = self.exp.max(other.exp);
        let a = &self.num << (e - self.exp) as usize;
        let b = &other.num << (e - other.exp) as usize;
        (a, b, e)
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { num: -&self.num, exp: self.exp }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic { (&self).$m(&rhs) }
        }
        impl $tr<&Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: &Dyadic) -> Dyadic { (&self).$m(rhs) }
        }
        impl $tr<Dyadic> for &Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(text: &str, token: &str, signed: bool) -> Result<BigInt, ParseDyadicError> {
    let digits = if signed { token.strip_prefix('-').unwrap_or(token) } else { token };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseDyadicError::BadToken { text: text.into(), token: token.into() });
    }
    Ok(token.parse().expect("validated decimal"))
}

impl FromStr for Dyadic {
    type Err = ParseDyadicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        match text.split_once('/') {
            None => Ok(Dyadic::new(parse_int(s, text, true)?, 0)),
            Some((p, den)) => {
                let num = parse_int(s, p.trim(), true)?;
                let e = den.trim().strip_prefix("2^").ok_or_else(|| {
                    ParseDyadicError::BadDenominator { text: s.into(), token: den.into() }
                })?;
                let exp = parse_int(s, e, false)?;
                let exp = u32::try_from(exp).map_err(|_| ParseDyadicError::BadToken {
                    text: s.into(),
                    token: e.into(),
                })?;
                Ok(Dyadic::new(num, exp))
            }
        }
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A point of `Z[1/2]/Z`, represented by its unique lift in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CirclePoint(Dyadic);

impl CirclePoint {
    /// Reduces `a` modulo 1.
    pub fn reduce(a: &Dyadic) -> Self {
        let k = Dyadic::new(a.floor(), 0);
        CirclePoint(a - &k)
    }

    pub fn rep(&self) -> &Dyadic {
        &self.0
    }

    pub fn into_rep(self) -> Dyadic {
        self.0
    }
}

impl From<Dyadic> for CirclePoint {
    fn from(a: Dyadic) -> Self {
        CirclePoint::reduce(&a)
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

/// `dy_mod1`.
pub fn mod1(a: &Dyadic) -> CirclePoint {
    CirclePoint::reduce(a)
}
