//! Formula syntax.
//!
//! ```text
//! formula := disj ['->' formula]
//! disj    := conj ('or' conj)*
//! conj    := unary ('and' unary)*
//! unary   := 'not' unary | ('exists'|'forall') ident unary
//!          | 'true' | 'false' | '(' formula ')' | atom
//! atom    := term rel term          rel := < <= = > >= !=
//! term    := ['-'] prod (('+'|'-') prod)*
//! prod    := factor ('*' factor)*
//! factor  := (number | ident | tlit | '(' term ')') ['^' natural]
//! tlit    := 't' | 't^' q | 't^(' q (',' q)* ')'
//! ```
//!
//! Unicode aliases: ∃ ∀ ∧ ∨ ¬ → ≤ ≥ ≠, and `&`, `|`, `!` for the connectives.
//! `a > b` is stored as `b < a`; `a != b` as `not a = b`. The literal `t` and
//! its powers become the parameter symbols `t^(q,...)`, resolved against the
//! model dimension at evaluation time.

use num_traits::One;

use super::ast::{Formula, Rel};
use super::term::Term;
use crate::error::{Error, Result};
use crate::hahn::literal::Cursor;
use crate::numbers::rational::{fmt_rational, Rational};

const KEYWORDS: &[&str] = &["exists", "forall", "and", "or", "not", "true", "false", "t", "alg", "O"];

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser { cur: Cursor::new(text) };
    let f = p.formula()?;
    if !p.cur.at_end() {
        return Err(p.cur.err("unexpected trailing input"));
    }
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser { cur: Cursor::new(text) };
    let t = p.term()?;
    if !p.cur.at_end() {
        return Err(p.cur.err("unexpected trailing input"));
    }
    Ok(t)
}

/// Canonical symbol name for `t^(coords)`.
pub fn t_symbol(coords: &[Rational]) -> String {
    format!("t^({})", coords.iter().map(fmt_rational).collect::<Vec<_>>().join(","))
}

/// Exponent coordinates of a `t^(...)` symbol.
pub fn t_symbol_coords(sym: &str) -> Option<Vec<Rational>> {
    let inner = sym.strip_prefix("t^(")?.strip_suffix(')')?;
    inner.split(',').map(|s| crate::numbers::rational::parse_rational(s.trim()).ok()).collect()
}

struct Parser<'a> {
    cur: Cursor<'a>,
}

impl Parser<'_> {
    fn keyword(&mut self, words: &[&str]) -> bool {
        self.cur.skip_ws();
        for w in words {
            let r = self.cur.rest();
            if r.starts_with(w) {
                let alpha = w.chars().all(|c| c.is_ascii_alphabetic());
                let next = r[w.len()..].chars().next();
                if alpha && next.is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    continue;
                }
                self.cur.pos += w.len();
                return true;
            }
        }
        false
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.disj()?;
        if self.keyword(&["->", "→"]) {
            let rhs = self.formula()?;
            return Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> Result<Formula> {
        let mut parts = vec![self.conj()?];
        while self.keyword(&["or", "∨", "|"]) {
            parts.push(self.conj()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::Or(parts) })
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut parts = vec![self.unary()?];
        while self.keyword(&["and", "∧", "&"]) {
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::And(parts) })
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.keyword(&["not", "¬"]) || self.bang() {
            return Ok(Formula::not(self.unary()?));
        }
        if self.keyword(&["exists", "∃"]) {
            let v = self.ident()?;
            return Ok(Formula::Exists(v, Box::new(self.unary()?)));
        }
        if self.keyword(&["forall", "∀"]) {
            let v = self.ident()?;
            return Ok(Formula::Forall(v, Box::new(self.unary()?)));
        }
        if self.keyword(&["true"]) {
            return Ok(Formula::True);
        }
        if self.keyword(&["false"]) {
            return Ok(Formula::False);
        }
        self.cur.skip_ws();
        if self.cur.peek() == Some('(') {
            let save = self.cur.pos;
            self.cur.pos += 1;
            let attempt = self.formula().and_then(|f| self.cur.expect(")").map(|_| f));
            match attempt {
                Ok(f) if !self.at_relation() => return Ok(f),
                Ok(_) => self.cur.pos = save,
                Err(e) => {
                    let deeper = e.clone();
                    self.cur.pos = save;
                    return self.atom().map_err(|other| furthest(deeper, other));
                }
            }
        }
        self.atom()
    }

    /// `!` as negation, but not the start of `!=`.
    fn bang(&mut self) -> bool {
        self.cur.skip_ws();
        if self.cur.rest().starts_with('!') && !self.cur.rest().starts_with("!=") {
            self.cur.pos += 1;
            true
        } else {
            false
        }
    }

    fn at_relation(&mut self) -> bool {
        self.cur.skip_ws();
        let r = self.cur.rest();
        ["<", ">", "=", "!=", "≤", "≥", "≠"].iter().any(|s| r.starts_with(s))
    }

    fn relation(&mut self) -> Result<(Rel, bool, bool)> {
        // (relation, swap sides, negate)
        for (s, rel, swap, neg) in [
            ("<=", Rel::Le, false, false),
            (">=", Rel::Le, true, false),
            ("!=", Rel::Eq, false, true),
            ("≤", Rel::Le, false, false),
            ("≥", Rel::Le, true, false),
            ("≠", Rel::Eq, false, true),
            ("<", Rel::Lt, false, false),
            (">", Rel::Lt, true, false),
            ("=", Rel::Eq, false, false),
        ] {
            if self.cur.eat(s) {
                return Ok((rel, swap, neg));
            }
        }
        Err(self.cur.err("expected a relation (<, <=, =, >, >=, !=)"))
    }

    fn atom(&mut self) -> Result<Formula> {
        let lhs = self.term()?;
        let (rel, swap, neg) = self.relation()?;
        let rhs = self.term()?;
        let f = if swap { Formula::atom(rhs, rel, lhs) } else { Formula::atom(lhs, rel, rhs) };
        Ok(if neg { Formula::not(f) } else { f })
    }

    fn ident(&mut self) -> Result<String> {
        self.cur.skip_ws();
        let start = self.cur.pos;
        let r = self.cur.rest();
        let len: usize = r.chars().take_while(|c| c.is_alphanumeric() || *c == '_').map(char::len_utf8).sum();
        let word = &r[..len];
        if len == 0 || word.starts_with(|c: char| c.is_ascii_digit()) || KEYWORDS.contains(&word) {
            return Err(self.cur.err("expected a variable name"));
        }
        self.cur.pos = start + len;
        Ok(word.to_string())
    }

    fn term(&mut self) -> Result<Term> {
        let mut acc = if self.cur.eat("-") { self.prod()?.neg() } else { self.prod()? };
        loop {
            if self.cur.eat("+") {
                acc = acc.add(&self.prod()?);
            } else if self.peek_minus() {
                self.cur.pos += 1;
                acc = acc.sub(&self.prod()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn peek_minus(&mut self) -> bool {
        self.cur.skip_ws();
        self.cur.rest().starts_with('-') && !self.cur.rest().starts_with("->")
    }

    fn prod(&mut self) -> Result<Term> {
        let mut acc = self.factor()?;
        while self.cur.eat("*") {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Term> {
        self.cur.skip_ws();
        let base = match self.cur.peek() {
            Some('(') => {
                self.cur.pos += 1;
                let t = self.term()?;
                self.cur.expect(")")?;
                t
            }
            Some(c) if c.is_ascii_digit() => Term::constant(self.cur.unsigned_rational()?),
            _ if self.cur.at_t() => {
                self.cur.pos += 1;
                Term::var(&t_symbol(&self.t_exponent()?))
            }
            _ => Term::var(&self.ident()?),
        };
        if self.cur.rest().starts_with('^') {
            self.cur.pos += 1;
            let k = self.cur.unsigned_rational()?;
            if !k.is_integer() || k > Rational::from_integer(64.into()) {
                return Err(self.cur.err("power must be a natural number at most 64"));
            }
            return Ok(base.pow(k.to_integer().try_into().unwrap_or(0)));
        }
        Ok(base)
    }

    fn t_exponent(&mut self) -> Result<Vec<Rational>> {
        if !self.cur.rest().starts_with('^') {
            return Ok(vec![Rational::one()]);
        }
        self.cur.pos += 1;
        if self.cur.eat("(") {
            let mut qs = vec![self.cur.signed_rational()?];
            while self.cur.eat(",") {
                qs.push(self.cur.signed_rational()?);
            }
            self.cur.expect(")")?;
            return Ok(qs);
        }
        Ok(vec![self.cur.signed_rational()?])
    }
}

fn furthest(a: Error, b: Error) -> Error {
    match (&a, &b) {
        (Error::Syntax { column: ca, .. }, Error::Syntax { column: cb, .. }) if ca > cb => a,
        _ => b,
    }
}
