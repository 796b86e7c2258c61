//! Exact rational helpers: parsing, printing and decimal rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p` or `p/q` with optional sign. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// How rationals are rendered in text output. The core is always exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Exact,
    Decimal(u32),
}

pub fn format_rational(q: &Rational, precision: Precision) -> String {
    match precision {
        Precision::Exact => format_exact(q),
        Precision::Decimal(digits) => format_decimal(q, digits),
    }
}

/// `p` when the denominator is one, otherwise `p/q` in lowest terms.
pub fn format_exact(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Fixed-point rendering with `digits` fractional digits, rounding half to even.
pub fn format_decimal(q: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = q * Rational::from_integer(scale.clone());
    let negative = scaled.is_negative();
    let abs = scaled.abs();
    let (whole, rem) = abs.numer().div_rem(abs.denom());
    let twice = rem * 2u32;
    let rounded = match twice.cmp(abs.denom()) {
        std::cmp::Ordering::Less => whole,
        std::cmp::Ordering::Greater => whole + 1u32,
        std::cmp::Ordering::Equal => {
            if whole.is_even() {
                whole
            } else {
                whole + 1u32
            }
        }
    };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if negative && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        let frac = frac_part.to_string();
        format!(
            "{sign}{int_part}.{}{frac}",
            "0".repeat(digits as usize - frac.len())
        )
    }
}

/// Arithmetic mean of a non-empty slice.
pub fn mean(values: &[Rational]) -> Rational {
    let total: Rational = values.iter().sum();
    total / int(values.len() as i64)
}
