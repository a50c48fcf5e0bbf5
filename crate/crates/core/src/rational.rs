//! Exact rational scalars and their text form.
//!
//! Rationals are written as `p/q` in lowest terms (integers as plain `p`).
//! That is also the only form accepted by the parsers, apart from surrounding
//! whitespace and an optional leading `+`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    if t.is_empty() {
        return Err(Error::parse(None, "empty rational"));
    }
    if let Some((_, d)) = t.split_once('/') {
        if d.trim().parse::<BigInt>().map(|d| d.is_zero()).unwrap_or(false) {
            return Err(Error::parse(None, format!("zero denominator in {s:?}")));
        }
    }
    Q::from_str(t).map_err(|_| Error::parse(None, format!("not a rational: {s:?}")))
}

/// Parses a comma separated list such as `1/2,-1/2,0`.
pub fn parse_q_list(s: &str) -> Result<Vec<Q>> {
    s.split(',').map(parse_q).collect()
}

pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

/// Serde adapter writing `Vec<Q>` as a list of `p/q` strings.
pub mod serde_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_q(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter for a single `Q`.
pub mod serde_q {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let raw = String::deserialize(d)?;
        parse_q(&raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_q("1/2").unwrap(), qf(1, 2));
        assert_eq!(parse_q(" -2/4 ").unwrap(), qf(-1, 2));
        assert_eq!(parse_q("+3").unwrap(), q(3));
        assert_eq!(parse_q_list("2/3,-1/3,-1/3").unwrap().len(), 3);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_q("").is_err());
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("0.5").is_err());
        assert!(parse_q("a/b").is_err());
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(fmt_q(&qf(6, -4)), "-3/2");
        assert_eq!(fmt_q(&q(0)), "0");
    }
}
