//! Exact rational scalars.
//!
//! Every coefficient, vertex coordinate and parameter in the crate is a
//! [`Rational`]. Text rendering is canonical: `p/q` in lowest terms with a
//! positive denominator, and `/1` elided.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `-3`, `3/4`, `+0.5`, `-1.25`. Decimals are converted exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let err = |msg: &str| Error::parse(0, format!("{msg}: {text:?}"));
    if s.is_empty() {
        return Err(err("empty number"));
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let value = if let Some((n, d)) = body.split_once('/') {
        let n = parse_unsigned_decimal(n).ok_or_else(|| err("bad numerator"))?;
        let d = parse_unsigned_decimal(d).ok_or_else(|| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        n / d
    } else {
        parse_unsigned_decimal(body).ok_or_else(|| err("bad number"))?
    };
    Ok(if negative { -value } else { value })
}

fn parse_unsigned_decimal(s: &str) -> Option<Rational> {
    let (whole, frac) = match s.split_once('.') {
        Some((w, f)) => (w, f),
        None => (s, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(whole) || !all_digits(frac) {
        return None;
    }
    let digits = format!("{whole}{frac}");
    let numer = BigInt::from_str(&digits).ok()?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    Some(Rational::new(numer, denom))
}

/// Display adapter, mostly for `format!` in tables.
pub struct Show<'a>(pub &'a Rational);

impl fmt::Display for Show<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format_rational(self.0))
    }
}

pub fn sign_str(q: &Rational) -> &'static str {
    if q.is_positive() {
        "+"
    } else if q.is_negative() {
        "-"
    } else {
        "0"
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `n! / (k_0! k_1! ...)` with `sum(k) == n`.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let n: u32 = parts.iter().sum();
    parts
        .iter()
        .fold(factorial(n), |acc, &k| acc / factorial(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    multinomial(&[k, n - k])
}

/// Serde helpers: rationals travel as canonical strings; JSON numbers are
/// accepted on input.
pub mod serde_str {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        d.deserialize_any(RationalVisitor)
    }

    struct RationalVisitor;

    impl Visitor<'_> for RationalVisitor {
        type Value = Rational;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("a rational as a string \"p/q\" or a JSON number")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
            parse_rational(v).map_err(E::custom)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
            Ok(int(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
            Ok(Rational::from_integer(BigInt::from(v)))
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Rational, E> {
            // Go through the shortest decimal rendering so 0.1 means 1/10.
            parse_rational(&v.to_string()).map_err(E::custom)
        }
    }
}

/// Newtype so containers of rationals can use the string serde form.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct RationalText(#[serde(with = "serde_str")] pub Rational);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_fractions_and_decimals() {
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("+7").unwrap(), int(7));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "-", "1/0", "a", "1/2/3", "1..2", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(format_rational(&rat(2, 4)), "1/2");
        assert_eq!(format_rational(&rat(3, -6)), "-1/2");
        assert_eq!(format_rational(&int(0)), "0");
        assert_eq!(format_rational(&rat(10, 5)), "2");
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[2, 1, 1]), BigInt::from(12));
        assert_eq!(multinomial(&[0, 0, 0]), BigInt::from(1));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 3), BigInt::from(0));
    }

    #[test]
    fn json_accepts_numbers_and_strings() {
        let v: Vec<RationalText> = serde_json::from_str(r#"[1, "-3/4", 0.5]"#).unwrap();
        assert_eq!(v[0].0, int(1));
        assert_eq!(v[1].0, rat(-3, 4));
        assert_eq!(v[2].0, rat(1, 2));
        assert_eq!(serde_json::to_string(&v[1]).unwrap(), "\"-3/4\"");
    }
}
