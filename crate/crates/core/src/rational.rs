//! Exact rationals and their string form.
//!
//! Every rational that leaves the library is written as `"p/q"`, or `"p"` when
//! the denominator is one. The same strings are accepted on input.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"p/q"` or `"p"`. Surrounding whitespace is ignored.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let parse_int = |part: &str| -> Result<BigInt, ParseRationalError> {
        let ok = !part.is_empty()
            && part
                .strip_prefix('-')
                .or_else(|| part.strip_prefix('+'))
                .unwrap_or(part)
                .chars()
                .all(|c| c.is_ascii_digit())
            && part.chars().any(|c| c.is_ascii_digit());
        if !ok {
            return Err(ParseRationalError::Malformed(text.to_string()));
        }
        part.parse::<BigInt>()
            .map_err(|_| ParseRationalError::Malformed(text.to_string()))
    };
    let numer = parse_int(num)?;
    let denom = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(text.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Lossy conversion used only for display and float cross-checks.
pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // Fall back to a scaled division when numerator or denominator overflow f64.
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Serde adapter: a single rational as a `"p/q"` string.
pub mod serde_str {
    use super::{parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

/// Serde adapter: a matrix of rationals as nested arrays of strings.
/// Plain JSON integers are accepted on input; floats are not.
pub mod serde_matrix {
    use super::{int, parse_rational, Rational};
    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Int(i64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for row in rows {
            let strs: Vec<String> = row.iter().map(|q| q.to_string()).collect();
            seq.serialize_element(&strs)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let raw = Vec::<Vec<Entry>>::deserialize(d)
            .map_err(|e| D::Error::custom(format!("{e}; entries must be integers or \"p/q\" strings")))?;
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|t| match t {
                        Entry::Int(v) => Ok(int(*v)),
                        Entry::Text(t) => parse_rational(t).map_err(D::Error::custom),
                    })
                    .collect()
            })
            .collect()
    }
}
