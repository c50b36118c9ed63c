//! Exact rational scalars and their textual form.
//!
//! Rationals serialize as `"p/q"` with the denominator omitted when it is 1,
//! which is exactly what `Ratio`'s `Display` produces.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`; panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Parses `p/q`, a plain integer, or a finite decimal such as `-0.125`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || Error::ParseRational(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if (digits.is_empty() && frac.is_empty()) || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let w: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| err())?
        };
        let f: BigInt = if frac.is_empty() {
            BigInt::zero()
        } else {
            frac.parse().map_err(|_| err())?
        };
        let scale = num_traits::pow(BigInt::from(10u32), frac.len());
        let mut value = Rational::new(w * &scale + f, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    t.parse::<BigInt>()
        .map(Rational::from_integer)
        .map_err(|_| err())
}

/// Parses a comma-separated list of rationals, e.g. `1,2,2,1` or `1, 1/2, 1/8`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(parse_rational)
        .collect()
}

/// Exact conversion of a finite `f64` (every finite double is a dyadic rational).
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Smallest multiple of `1/den` that is `>= x`.
pub fn ceil_to_denominator(x: &Rational, den: u64) -> Rational {
    let d = BigInt::from(den);
    let scaled = x * Rational::from_integer(d.clone());
    Rational::new(scaled.ceil().to_integer(), d)
}

/// Nearest multiple of `1/den` to `x`, ties away from zero.
pub fn round_to_denominator(x: &Rational, den: u64) -> Rational {
    let d = BigInt::from(den);
    let scaled = x * Rational::from_integer(d.clone());
    Rational::new(scaled.round().to_integer(), d)
}

/// Rounds a nonzero `x` to a dyadic rational carrying about `bits` significant bits.
pub fn round_relative(x: &Rational, bits: u32) -> Rational {
    if x.is_zero() {
        return x.clone();
    }
    let mag = x.numer().bits() as i64 - x.denom().bits() as i64;
    let shift = bits as i64 - mag;
    let scaled = if shift >= 0 {
        x * big(BigInt::one() << shift as usize)
    } else {
        x / big(BigInt::one() << (-shift) as usize)
    };
    let m = scaled.round().to_integer();
    if shift >= 0 {
        Rational::new(m, BigInt::one() << shift as usize)
    } else {
        big(m << (-shift) as usize)
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (last continued-fraction convergent or semiconvergent that fits).
pub fn limit_denominator(x: &Rational, max_den: u64) -> Rational {
    let max_den = BigInt::from(max_den.max(1));
    if x.denom() <= &max_den {
        return x.clone();
    }
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    loop {
        let (a, rem) = n.div_mod_floor(&d);
        let q2 = &q0 + &a * &q1;
        if q2 > max_den {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        if rem.is_zero() {
            break;
        }
        n = std::mem::replace(&mut d, rem);
    }
    let k = (&max_den - &q0) / &q1;
    let semi = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let conv = Rational::new(p1, q1);
    if (&semi - x).abs() < (&conv - x).abs() {
        semi
    } else {
        conv
    }
}

/// Bit length of numerator plus denominator; a size measure used when shrinking.
pub fn bit_size(x: &Rational) -> u64 {
    x.numer().bits() + x.denom().bits()
}

pub fn sign(x: &Rational) -> i8 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Serde adapter: a single rational as a `"p/q"` string.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Option<Rational>`.
pub mod serde_rational_opt {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&format_rational(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Serde adapter for `Vec<Rational>` as an array of `"p/q"` strings.
pub mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&format_rational(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
