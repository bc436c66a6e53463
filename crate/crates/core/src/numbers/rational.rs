//! Helpers around `BigRational`: construction, literal syntax, dyadic bounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^-n` as a rational.
pub fn pow2_neg(n: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << n as usize)
}

/// Canonical text: `p` for integers, `p/q` otherwise.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p`, `p/q` or a finite decimal `d.ddd` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let err = |m: &str| Error::Syntax { column: 1, message: format!("{m}: `{s}`") };
    if s.is_empty() {
        return Err(err("empty rational"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = d.trim().parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.trim_start().starts_with('-');
        let ip = ip.trim().trim_start_matches(['-', '+']);
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("bad decimal"));
        }
        let whole: BigInt = if ip.is_empty() { BigInt::zero() } else { ip.parse().map_err(|_| err("bad decimal"))? };
        let frac: BigInt = fp.parse().map_err(|_| err("bad decimal"))?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let v = Rational::new(whole * &scale + frac, scale);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| err("bad integer"))?;
    Ok(Rational::from_integer(n))
}

/// Largest integer `k` with `k <= q`.
pub fn floor(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

/// Height of a rational: `max(|p|, q)`.
pub fn height(q: &Rational) -> BigInt {
    let p = q.numer().abs();
    let d = q.denom().clone();
    if p > d {
        p
    } else {
        d
    }
}

/// All rationals `p/q` with `1 <= q <= h`, `|p| <= h`, in lowest terms, sorted ascending.
pub fn rationals_of_height(h: u64) -> Vec<Rational> {
    let mut out = Vec::new();
    for q in 1..=h as i64 {
        for p in -(h as i64)..=(h as i64) {
            let r = rat(p, q);
            if r.denom() == &BigInt::from(q) {
                out.push(r);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Rationals of height exactly `h`.
pub fn rationals_of_exact_height(h: u64) -> Vec<Rational> {
    let target = BigInt::from(h);
    rationals_of_height(h).into_iter().filter(|r| height(r) == target).collect()
}

/// Midpoint of two rationals.
pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// Is `q` strictly positive?
pub fn is_pos(q: &Rational) -> bool {
    q.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_literals() {
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("1.4142").unwrap(), rat(14142, 10000));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(fmt_rational(&rat(6, -4)), "-3/2");
        assert_eq!(fmt_rational(&int(7)), "7");
    }

    #[test]
    fn height_levels_partition() {
        let all = rationals_of_height(3);
        let mut joined: Vec<_> = (0..=3).flat_map(rationals_of_exact_height).collect();
        joined.sort();
        joined.dedup();
        assert_eq!(all, joined);
    }
}
