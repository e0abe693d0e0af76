//! The canonical scalar: arbitrary-precision fractions kept in lowest terms.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Shorthand for `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical text form `num/den`; integers are written `n/1`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses the canonical `num/den` form.
///
/// The numerator may carry a leading `-`; the denominator must be positive,
/// the fraction must be in lowest terms, and no whitespace is accepted.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let malformed = || Error::MalformedRational(text.to_string());
    let (num, den) = text.split_once('/').ok_or_else(malformed)?;
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    if den.is_empty() || !den.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let num: BigInt = num.parse().map_err(|_| malformed())?;
    let den: BigInt = den.parse().map_err(|_| malformed())?;
    if den.is_zero() {
        return Err(malformed());
    }
    let q = Rational::new(num.clone(), den.clone());
    // "-0/1" and unreduced fractions are not canonical
    if q.numer() != &num || q.denom() != &den || text.starts_with("-0") {
        return Err(malformed());
    }
    Ok(q)
}

/// Lenient parser for command-line input: accepts `n`, `n/d`, or a finite
/// decimal such as `0.25`, and reduces the result.
pub fn parse_rational_lenient(text: &str) -> Result<Rational> {
    let malformed = || Error::MalformedRational(text.to_string());
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| malformed())?;
        let den: BigInt = den.trim().parse().map_err(|_| malformed())?;
        if den.is_zero() {
            return Err(malformed());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let whole: BigInt =
            if whole_digits.is_empty() { BigInt::zero() } else { whole_digits.parse().map_err(|_| malformed())? };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| malformed())?;
        let magnitude = Rational::new(whole * &scale + frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let n: BigInt = text.parse().map_err(|_| malformed())?;
    Ok(Rational::from_integer(n))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator and denominator both overflow f64; scale down first
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact square root when `q` is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Closest fraction to `x` with denominator at most `max_den`
/// (Stern-Brocot / continued-fraction best approximation).
pub fn rationalize(x: f64, max_den: u64) -> Rational {
    if !x.is_finite() {
        return Rational::zero();
    }
    let negative = x < 0.0;
    let x = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    let mut frac = x;
    loop {
        let a = frac.floor();
        if a > 1e18 {
            break;
        }
        let a = a as u128;
        let q2 = a * q1 + q0;
        if q2 > max_den as u128 {
            // best semiconvergent between the last two convergents
            let k = (max_den as u128 - q0) / q1;
            let (ps, qs) = (p0 + k * p1, q0 + k * q1);
            let err_semi = (x - ps as f64 / qs as f64).abs();
            let err_conv = (x - p1 as f64 / q1 as f64).abs();
            if err_semi < err_conv {
                p1 = ps;
                q1 = qs;
            }
            break;
        }
        let p2 = a * p1 + p0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let rem = frac - a as f64;
        if rem < 1e-15 {
            break;
        }
        frac = 1.0 / rem;
    }
    let q = Rational::new(BigInt::from(p1), BigInt::from(q1.max(1)));
    if negative {
        -q
    } else {
        q
    }
}
