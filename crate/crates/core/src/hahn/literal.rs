//! Series literals.
//!
//! ```text
//! series := ['+'|'-'] term (('+'|'-') term)*
//! term   := coeff | coeff '*' mono | mono | 'O(' mono ')'
//! mono   := 't' | 't^' q | 't^(' q (',' q)* ')'
//! coeff  := integer | p/q | decimal | alg[c0,...,ck; lo,hi]
//! ```
//!
//! A one-coordinate exponent sets the first coordinate and leaves the rest 0.
//! Printing always writes the full tuple: `3 - alg[-2,0,1;1,2]*t^(1,0)`.

use num_traits::One;

use super::exponent::Exponent;
use super::series::HahnSeries;
use crate::error::{Error, Result};
use crate::numbers::creal::CoefficientReal;
use crate::numbers::rational::{parse_rational, Rational};
use crate::numbers::RealAlgebraic;

pub fn print_series(x: &HahnSeries) -> String {
    let mut out = String::new();
    for (i, (e, c)) in x.terms().iter().enumerate() {
        let neg = match c {
            CoefficientReal::Rational(q) => q < &Rational::from_integer(0.into()),
            CoefficientReal::Algebraic(a) => a.sign() < 0,
            CoefficientReal::Oracle(_) => false,
        };
        let m = if neg { c.neg() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if e.is_zero() {
            out.push_str(&m.to_string());
        } else if m.is_one() {
            out.push_str(&format!("t^{e}"));
        } else {
            out.push_str(&format!("{m}*t^{e}"));
        }
    }
    if let Some(t) = x.trunc() {
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&format!("O(t^{t})"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Character cursor shared by the literal and formula parsers.
pub(crate) struct Cursor<'a> {
    pub src: &'a str,
    pub pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn err(&self, msg: impl Into<String>) -> Error {
        let column = self.src[..self.pos.min(self.src.len())].chars().count() + 1;
        Error::Syntax { column, message: msg.into() }
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`")))
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    /// Unsigned rational: `123`, `1/2`, `1.25`.
    pub fn unsigned_rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let digits = |c: &mut Self| {
            let s = c.pos;
            while c.pos < bytes.len() && bytes[c.pos].is_ascii_digit() {
                c.pos += 1;
            }
            c.pos > s
        };
        if !digits(self) {
            return Err(self.err("expected a number"));
        }
        if self.pos < bytes.len() && (bytes[self.pos] == b'/' || bytes[self.pos] == b'.') && self.pos + 1 < bytes.len() && bytes[self.pos + 1].is_ascii_digit() {
            self.pos += 1;
            digits(self);
        }
        let text = &self.src[start..self.pos];
        parse_rational(text).map_err(|_| {
            let mut e = self.err(format!("bad number `{text}`"));
            if let Error::Syntax { column, .. } = &mut e {
                *column = self.src[..start].chars().count() + 1;
            }
            e
        })
    }

    pub fn signed_rational(&mut self) -> Result<Rational> {
        if self.eat("-") {
            Ok(-self.unsigned_rational()?)
        } else {
            self.eat("+");
            self.unsigned_rational()
        }
    }

    /// `alg[...]` or an unsigned rational.
    pub fn coefficient(&mut self) -> Result<CoefficientReal> {
        self.skip_ws();
        if self.rest().starts_with("alg[") {
            let start = self.pos;
            let end = self.rest().find(']').ok_or_else(|| self.err("unterminated `alg[`"))?;
            self.pos += end + 1;
            let text = &self.src[start..self.pos];
            return RealAlgebraic::parse(text).map(Into::into).map_err(|e| match e {
                Error::Syntax { message, .. } => Error::Syntax { column: self.src[..start].chars().count() + 1, message },
                other => other,
            });
        }
        Ok(CoefficientReal::Rational(self.unsigned_rational()?))
    }

    /// After `t`: optional `^q` or `^(q, ...)`.
    pub fn exponent_after_t(&mut self, dim: usize) -> Result<Exponent> {
        if !self.rest().starts_with('^') {
            return Ok(Exponent::first(dim, Rational::one()));
        }
        self.pos += 1;
        if self.eat("(") {
            let mut qs = vec![self.signed_rational()?];
            while self.eat(",") {
                qs.push(self.signed_rational()?);
            }
            self.expect(")")?;
            if qs.len() == 1 {
                return Ok(Exponent::first(dim, qs.pop().unwrap()));
            }
            if qs.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: qs.len() });
            }
            return Ok(Exponent::new(qs));
        }
        Ok(Exponent::first(dim, self.signed_rational()?))
    }

    /// Is the next token the bare symbol `t` (not a longer identifier)?
    pub fn at_t(&mut self) -> bool {
        self.skip_ws();
        let r = self.rest();
        r.starts_with('t') && !r[1..].chars().next().is_some_and(|c| c.is_alphanumeric() || c == '_')
    }
}

pub fn parse_series(text: &str, dim: usize) -> Result<HahnSeries> {
    let mut cur = Cursor::new(text);
    let mut terms = Vec::new();
    let mut trunc: Option<Exponent> = None;
    let mut first = true;
    loop {
        if cur.at_end() {
            if first {
                return Err(cur.err("empty series"));
            }
            break;
        }
        let neg = if cur.eat("-") {
            true
        } else {
            if !cur.eat("+") && !first {
                return Err(cur.err("expected `+` or `-`"));
            }
            false
        };
        first = false;
        if cur.eat("O(") {
            if !cur.at_t() {
                return Err(cur.err("expected `t` in O(...)"));
            }
            cur.pos += 1;
            let e = cur.exponent_after_t(dim)?;
            cur.expect(")")?;
            trunc = Some(trunc.map_or(e.clone(), |t: Exponent| t.min(e)));
            continue;
        }
        let (c, e) = if cur.at_t() {
            cur.pos += 1;
            (CoefficientReal::one(), cur.exponent_after_t(dim)?)
        } else {
            let c = cur.coefficient()?;
            if cur.eat("*") {
                if !cur.at_t() {
                    return Err(cur.err("expected `t` after `*`"));
                }
                cur.pos += 1;
                (c, cur.exponent_after_t(dim)?)
            } else {
                (c, Exponent::zero(dim))
            }
        };
        terms.push((e, if neg { c.neg() } else { c }));
    }
    Ok(HahnSeries::from_terms(dim, terms, trunc))
}

/// Comma-separated list of series; commas inside brackets and parentheses are kept.
pub fn parse_series_list(text: &str, dim: usize) -> Result<Vec<HahnSeries>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(parse_series(&text[start..i], dim)?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !text[start..].trim().is_empty() || !out.is_empty() {
        out.push(parse_series(&text[start..], dim)?);
    }
    Ok(out)
}
