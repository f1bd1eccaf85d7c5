//! Exact rational scalars and small helpers around [`BigRational`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational; the only scalar used by the set computations.
pub type Rational = BigRational;

/// Builds `num / den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Converts a vector of `(num, den)` pairs.
pub fn rvec(entries: &[(i64, i64)]) -> Vec<Rational> {
    entries.iter().map(|&(n, d)| rat(n, d)).collect()
}

/// Converts a vector of integers.
pub fn ivec(entries: &[i64]) -> Vec<Rational> {
    entries.iter().map(|&v| int(v)).collect()
}

pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Huge numerator or denominator: shift both down before dividing.
            let bits = r.numer().bits().max(r.denom().bits()) as i64 - 900;
            let shift = bits.max(0) as usize;
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{literal}`: {reason}")]
pub struct ParseRationalError {
    pub literal: String,
    pub reason: &'static str,
}

/// Parses `"a/b"`, integers and plain decimals (`"-0.25"`) exactly.
///
/// The Unicode minus sign `−` is accepted as well as `-`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        literal: text.to_string(),
        reason,
    };
    let cleaned: String = text.trim().replace('\u{2212}', "-");
    if cleaned.is_empty() {
        return Err(err("empty literal"));
    }
    if let Some((num, den)) = cleaned.split_once('/') {
        let n = parse_decimal(num.trim()).ok_or_else(|| err("bad numerator"))?;
        let d = parse_decimal(den.trim()).ok_or_else(|| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(n / d);
    }
    parse_decimal(&cleaned).ok_or_else(|| err("expected an integer, decimal or fraction"))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (negative, digits) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if all_digits.is_empty() {
        BigInt::zero()
    } else {
        all_digits.parse().ok()?
    };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = Rational::new(numer, denom);
    Some(if negative { -value } else { value })
}

/// Display adapter for rational vectors: `(1/19, 7/19, 6/19)`.
pub struct VecDisplay<'a>(pub &'a [Rational]);

impl fmt::Display for VecDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Componentwise `a <= b`.
pub fn vec_le(a: &[Rational], b: &[Rational]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Componentwise `a < b`.
pub fn vec_lt(a: &[Rational], b: &[Rational]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x < y)
}

pub fn is_nonneg(v: &[Rational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

pub fn is_positive(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_positive())
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
