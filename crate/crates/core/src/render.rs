//! Textual forms shared by the CLI and the trace files.
//!
//! Elements render as `"u + v q"` with exact fractions, e.g. `"1/2 - 1 q"`;
//! the parser accepts the same grammar plus the obvious relaxations
//! (omitted `1` in front of `q`, single terms, arbitrary whitespace).
//! Rationals destined for JSON always carry an explicit denominator
//! (`"p/r"`), which keeps the wire form canonical.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::quadfield::{FieldCase, FieldElement, FieldError};

/// Canonical wire form of a rational: `"p/r"`, lowest terms, `r > 0`.
pub fn format_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `"p/r"` or a bare integer `"p"`.
pub fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(BigRational::new(num, den))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Human form of a rational: omit the denominator when it is 1.
pub fn format_ratio_plain(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical element rendering, always both components: `"u + v q"`.
pub fn format_element(e: &FieldElement) -> String {
    let u = format_ratio_plain(e.u());
    let v = e.v();
    if v.is_negative() {
        format!("{} - {} q", u, format_ratio_plain(&-v))
    } else {
        format!("{} + {} q", u, format_ratio_plain(v))
    }
}

/// Parse the `"u + v q"` grammar.
pub fn parse_element(case: FieldCase, input: &str) -> Result<FieldElement, FieldError> {
    let err = || FieldError::Parse(input.to_string());
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err());
    }

    let mut u = BigRational::zero();
    let mut v = BigRational::zero();
    let bytes = compact.as_bytes();
    let mut i = 0;
    let mut first = true;
    while i < bytes.len() {
        // sign
        let mut negative = false;
        match bytes[i] {
            b'+' => i += 1,
            b'-' => {
                negative = true;
                i += 1;
            }
            _ if first => {}
            _ => return Err(err()),
        }
        first = false;
        // optional rational literal
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
            i += 1;
        }
        let literal = &compact[start..i];
        // optional trailing q
        let has_q = i < bytes.len() && (bytes[i] == b'q' || bytes[i] == b'Q');
        if has_q {
            i += 1;
        }
        let magnitude = if literal.is_empty() {
            if !has_q {
                return Err(err()); // bare sign
            }
            BigRational::one()
        } else {
            parse_ratio(literal).ok_or_else(err)?
        };
        let term = if negative { -magnitude } else { magnitude };
        if has_q {
            v += term;
        } else {
            u += term;
        }
    }
    Ok(FieldElement::new(case, u, v))
}
