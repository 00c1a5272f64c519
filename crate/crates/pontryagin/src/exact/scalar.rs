//! Exact scalars: arbitrary-precision rationals and complex rationals,
//! together with the text grammar used by problem files and reports.
//!
//! The wire grammar is
//!
//! ```text
//! RATIONAL := ["-"] DIGITS ["/" DIGITS] | ["-"] DIGITS "." DIGITS
//! COMPLEX  := RATIONAL | RATIONAL SIGN RATIONAL "i" | RATIONAL "i"
//! ```
//!
//! with the sugar `i`, `-i`, `a+i`, `a-i` also accepted on input. Decimal
//! fractions are normalized on ingestion (`"0.5"` becomes `1/2`), and
//! [`format_scalar`] always emits the strict grammar, so
//! `parse_scalar(&format_scalar(s)) == s`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;
pub type Scalar = Complex<Rational>;

/// The rational number `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The integer `n` as a scalar.
pub fn sc(n: i64) -> Scalar {
    Scalar::new(int(n), int(0))
}

/// The rational `n / d` as a scalar.
pub fn sc_rat(n: i64, d: i64) -> Scalar {
    Scalar::new(rat(n, d), int(0))
}

/// The Gaussian integer `re + im*i` as a scalar.
pub fn sc_i(re: i64, im: i64) -> Scalar {
    Scalar::new(int(re), int(im))
}

/// Real part `re`, imaginary part `im`.
pub fn complex(re: Rational, im: Rational) -> Scalar {
    Scalar::new(re, im)
}

pub fn is_real(s: &Scalar) -> bool {
    s.im.is_zero()
}

/// Canonical text form of a rational: `"n"` or `"n/d"` with `d > 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form of a scalar in the strict grammar.
pub fn format_scalar(s: &Scalar) -> String {
    match (s.re.is_zero(), s.im.is_zero()) {
        (_, true) => format_rational(&s.re),
        (true, false) => format!("{}i", format_rational(&s.im)),
        (false, false) => {
            if s.im.is_negative() {
                format!("{}-{}i", format_rational(&s.re), format_rational(&-s.im.clone()))
            } else {
                format!("{}+{}i", format_rational(&s.re), format_rational(&s.im))
            }
        }
    }
}

fn parse_unsigned_decimal(text: &str) -> Result<Rational, String> {
    let (int_part, frac_part) = match text.split_once('.') {
        Some(parts) => parts,
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("empty number in '{text}'"));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("invalid digits in '{text}'"));
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().map_err(|_| format!("invalid digits in '{text}'"))?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(Rational::new(numer, denom))
}

/// Parses a rational in the grammar above (sign, fraction bar or decimal
/// point). The error is a plain message; callers add location context.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    if body.is_empty() {
        return Err(format!("empty rational in '{text}'"));
    }
    let value = match body.split_once('/') {
        Some((num, den)) => {
            if num.contains('.') || den.contains('.') {
                return Err(format!("mixed decimal and fraction in '{text}'"));
            }
            let n = parse_unsigned_decimal(num)?;
            let d = parse_unsigned_decimal(den)?;
            if d.is_zero() {
                return Err(format!("zero denominator in '{text}'"));
            }
            n / d
        }
        None => parse_unsigned_decimal(body)?,
    };
    Ok(if negative { -value } else { value })
}

/// Parses a complex scalar. Accepts the strict grammar plus the sugar
/// forms `i`, `-i`, `a+i`, `a-i`; spaces around terms are ignored.
pub fn parse_scalar(text: &str) -> Result<Scalar, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty scalar".into());
    }
    if !compact.is_ascii() {
        return Err(format!("non-ascii character in '{text}'"));
    }
    let body = match compact.strip_suffix('i') {
        None => return Ok(complex(parse_rational(&compact)?, int(0))),
        Some(b) => b,
    };
    // Split the real part from the imaginary coefficient at the last sign
    // that is not a leading sign: signs inside a rational can only lead it.
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| {
        (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'+' | b'-')
    });
    let (re_text, im_text) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im_text {
        "" | "+" => int(1),
        "-" => int(-1),
        t => parse_rational(t)?,
    };
    let re = if re_text.is_empty() { int(0) } else { parse_rational(re_text)? };
    Ok(complex(re, im))
}
