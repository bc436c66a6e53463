//! Polynomial terms with rational coefficients.
//!
//! A monomial is a sorted list of `(symbol, power)`; the empty monomial is the
//! constant 1. The symbol `t`, and `t^(..)`, stand for fixed monomials of the
//! model and behave like parameters.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::numbers::rational::{fmt_rational, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: &str) -> Self {
        Monomial(vec![(s.to_string(), 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, p)| p).sum()
    }

    pub fn degree_in(&self, v: &str) -> u32 {
        self.0.iter().find(|(s, _)| s == v).map_or(0, |(_, p)| *p)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m: BTreeMap<String, u32> = BTreeMap::new();
        for (s, p) in self.0.iter().chain(&o.0) {
            *m.entry(s.clone()).or_insert(0) += p;
        }
        Monomial(m.into_iter().collect())
    }

    /// Remove one factor of `v` entirely (`v^k` becomes 1).
    pub fn without(&self, v: &str) -> Self {
        Monomial(self.0.iter().filter(|(s, _)| s != v).cloned().collect())
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(s, _)| s.as_str())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|(s, p)| if *p == 1 { s.clone() } else { format!("{s}^{p}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Canonical monomial order: higher degree first, then by symbol list; constant last.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        o.degree().cmp(&self.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Term {
    monos: BTreeMap<Monomial, Rational>,
}

impl Term {
    pub fn zero() -> Self {
        Term::default()
    }

    pub fn constant(q: Rational) -> Self {
        Self::from_pairs([(Monomial::one(), q)])
    }

    pub fn var(s: &str) -> Self {
        Self::from_pairs([(Monomial::var(s), Rational::one())])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut monos: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, q) in pairs {
            *monos.entry(m).or_insert_with(Rational::zero) += q;
        }
        monos.retain(|_, q| !q.is_zero());
        Term { monos }
    }

    pub fn monomials(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.monos.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_pairs(self.monos.iter().chain(&o.monos).map(|(m, q)| (m.clone(), q.clone())))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_pairs(self.monos.iter().map(|(m, q)| (m.clone(), q * k)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Vec::new();
        for (a, p) in &self.monos {
            for (b, q) in &o.monos {
                out.push((a.mul(b), p * q));
            }
        }
        Self::from_pairs(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Term::constant(Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn degree(&self) -> u32 {
        self.monos.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: &str) -> u32 {
        self.monos.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    pub fn constant_part(&self) -> Rational {
        self.monos.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    /// Is this a rational constant (no symbols)?
    pub fn as_constant(&self) -> Option<Rational> {
        if self.monos.keys().all(|m| m.is_one()) {
            Some(self.constant_part())
        } else {
            None
        }
    }

    /// Degree at most one with no constant: a term of the group language.
    pub fn is_group_term(&self) -> bool {
        self.monos.keys().all(|m| m.degree() == 1)
    }

    /// Split `self = a * v + rest` for a term linear in `v`; `None` if not linear.
    pub fn split_linear(&self, v: &str) -> Option<(Term, Term)> {
        let mut a = Vec::new();
        let mut rest = Vec::new();
        for (m, q) in &self.monos {
            match m.degree_in(v) {
                0 => rest.push((m.clone(), q.clone())),
                1 => a.push((m.without(v), q.clone())),
                _ => return None,
            }
        }
        Some((Term::from_pairs(a), Term::from_pairs(rest)))
    }

    /// Replace symbol `v` by the term `by`.
    pub fn substitute(&self, v: &str, by: &Term) -> Term {
        let mut acc = Term::zero();
        for (m, q) in &self.monos {
            let k = m.degree_in(v);
            let base = Term::from_pairs([(m.without(v), q.clone())]);
            acc = acc.add(&if k == 0 { base } else { base.mul(&by.pow(k)) });
        }
        acc
    }

    pub fn symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = self.monos.keys().flat_map(|m| m.symbols().map(str::to_string)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Multiply through by the lcm of denominators and divide by the gcd of numerators.
    pub fn primitive(&self) -> Term {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let l = self.monos.values().fold(num_bigint::BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scaled = self.scale(&Rational::from_integer(l));
        let g = scaled.monos.values().fold(num_bigint::BigInt::zero(), |acc, q| acc.gcd(q.numer()));
        scaled.scale(&(Rational::one() / Rational::from_integer(g)))
    }

    /// Parts with positive and with negated negative coefficients: `self = pos - neg`.
    pub fn sign_split(&self) -> (Term, Term) {
        let pos = Term::from_pairs(self.monos.iter().filter(|(_, q)| q.is_positive()).map(|(m, q)| (m.clone(), q.clone())));
        let neg = Term::from_pairs(self.monos.iter().filter(|(_, q)| q.is_negative()).map(|(m, q)| (m.clone(), -q.clone())));
        (pos, neg)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.monos.values().next()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monos.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, q)) in self.monos.iter().enumerate() {
            let neg = q.is_negative();
            let a = q.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}
