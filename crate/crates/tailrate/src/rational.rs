//! Arbitrary-precision rationals: constructors, string form, serde helpers.
//!
//! Rationals are rendered as `"numer/denom"` (bare `"numer"` when the
//! denominator is 1) everywhere they cross a serialization boundary, so JSON
//! output stays exact.

use std::str::FromStr;

use num::bigint::BigInt;
use num::traits::ToPrimitive;

use crate::error::{Error, Result};

/// Exact rational number used throughout the combinatorial layer.
pub type Rational = num::BigRational;

/// Builds the rational `n / d`.
///
/// # Panics
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer rational `n`.
pub fn int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Converts to `f64`, falling back to a quotient of rounded parts when the
/// numerator or denominator alone overflows `f64`.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Renders a rational as `"numer/denom"`, or `"numer"` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Parses `"numer/denom"` or a bare integer.
///
/// # Errors
/// Returns [`Error::Input`] on malformed text or a zero denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|e| Error::Input(format!("bad rational {s:?}: {e}")))
}

/// Serde adapter serializing a [`Rational`] as its exact string form.
pub mod serde_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(q: &Rational, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(q)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(de)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>` in exact string form.
pub mod serde_string_vec {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(
        v: &[Rational],
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_seq(v.iter().map(|q| q.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let strings = Vec::<String>::deserialize(de)?;
        strings
            .iter()
            .map(|s| super::parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
