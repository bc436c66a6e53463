//! Finite-support Hahn series `Σ c_γ t^γ`, `γ ∈ ℚⁿ`.
//!
//! `t^γ` with `γ > 0` is a positive infinitesimal, so the order is decided by
//! the sign of the leading (least-exponent) coefficient and the valuation is
//! the least exponent of the support. A `trunc` bound records that terms at
//! or above it were discarded.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::exponent::{Exponent, Value};
use crate::error::{Error, Result};
use crate::numbers::creal::{compare, default_precision, CoefficientReal};
use crate::numbers::rational::Rational;

/// Terms beyond this many powers are dropped when inverting with an
/// exponent bound that the geometric series never reaches.
const MAX_INVERSE_TERMS: usize = 48;

#[derive(Clone, PartialEq)]
pub struct HahnSeries {
    dim: usize,
    terms: Vec<(Exponent, CoefficientReal)>,
    trunc: Option<Exponent>,
}

impl fmt::Debug for HahnSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn min_opt(a: Option<Exponent>, b: Option<Exponent>) -> Option<Exponent> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl HahnSeries {
    /// Build from arbitrary terms: sorted, merged, zeros and terms at or above `trunc` dropped.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Exponent, CoefficientReal)>, trunc: Option<Exponent>) -> Self {
        let mut acc: BTreeMap<Exponent, CoefficientReal> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.dim(), dim, "exponent dimension mismatch");
            match acc.get_mut(&e) {
                Some(x) => *x = x.add(&c),
                None => {
                    acc.insert(e, c);
                }
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(e, c)| !c.is_zero() && trunc.as_ref().map_or(true, |t| e < t))
            .collect();
        HahnSeries { dim, terms, trunc }
    }

    pub fn zero(dim: usize) -> Self {
        HahnSeries { dim, terms: Vec::new(), trunc: None }
    }

    pub fn constant(dim: usize, c: CoefficientReal) -> Self {
        Self::monomial(Exponent::zero(dim), c)
    }

    pub fn rational(dim: usize, q: Rational) -> Self {
        Self::constant(dim, CoefficientReal::Rational(q))
    }

    pub fn one(dim: usize) -> Self {
        Self::rational(dim, Rational::one())
    }

    /// `c * t^γ`; the section `γ ↦ t^γ` is a homomorphism.
    pub fn monomial(gamma: Exponent, c: CoefficientReal) -> Self {
        let dim = gamma.dim();
        Self::from_terms(dim, [(gamma, c)], None)
    }

    /// `t^γ`
    pub fn t_pow(gamma: Exponent) -> Self {
        Self::monomial(gamma, CoefficientReal::one())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(Exponent, CoefficientReal)] {
        &self.terms
    }

    pub fn trunc(&self) -> Option<&Exponent> {
        self.trunc.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.trunc.is_none()
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    pub fn has_oracle(&self) -> bool {
        self.terms.iter().any(|(_, c)| c.is_oracle())
    }

    pub fn valuation(&self) -> Value {
        match self.terms.first() {
            Some((e, _)) => Value::Finite(e.clone()),
            None => Value::Infinity,
        }
    }

    pub fn leading(&self) -> Option<&(Exponent, CoefficientReal)> {
        self.terms.first()
    }

    pub fn lead_coeff(&self) -> Option<&CoefficientReal> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Leading monomial `c t^v`, or zero.
    pub fn leading_monomial(&self) -> HahnSeries {
        match self.terms.first() {
            Some((e, c)) => Self::monomial(e.clone(), c.clone()),
            None => Self::zero(self.dim),
        }
    }

    pub fn coeff(&self, e: &Exponent) -> CoefficientReal {
        self.terms.iter().find(|(x, _)| x == e).map(|(_, c)| c.clone()).unwrap_or_else(CoefficientReal::zero)
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.iter().map(|(e, _)| e.clone()).collect()
    }

    fn check_dim(&self, o: &Self) {
        assert_eq!(self.dim, o.dim, "exponent dimension mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_dim(o);
        let trunc = min_opt(self.trunc.clone(), o.trunc.clone());
        Self::from_terms(self.dim, self.terms.iter().chain(&o.terms).cloned(), trunc)
    }

    pub fn neg(&self) -> Self {
        HahnSeries { dim: self.dim, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(), trunc: self.trunc.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Product; a truncated factor contributes `trunc + v(other)` to the bound.
    pub fn mul(&self, o: &Self) -> Self {
        self.check_dim(o);
        let bound = |a: &Self, b: &Self| -> Option<Exponent> {
            let t = a.trunc.as_ref()?;
            match (b.terms.first(), &b.trunc) {
                (Some((v, _)), _) => Some(t.add(v)),
                (None, Some(tb)) => Some(t.add(tb)),
                (None, None) => None,
            }
        };
        let trunc = min_opt(bound(self, o), bound(o, self));
        let mut prods = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                prods.push((ea.add(eb), ca.mul(cb)));
            }
        }
        Self::from_terms(self.dim, prods, trunc)
    }

    pub fn scale(&self, c: &CoefficientReal) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self::from_terms(self.dim, self.terms.iter().map(|(e, x)| (e.clone(), x.mul(c))), self.trunc.clone())
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&CoefficientReal::Rational(q.clone()))
    }

    /// Multiply by `t^γ`.
    pub fn shift(&self, gamma: &Exponent) -> Self {
        HahnSeries {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.add(gamma), c.clone())).collect(),
            trunc: self.trunc.as_ref().map(|t| t.add(gamma)),
        }
    }

    /// Drop terms at or above `order` and record the bound.
    pub fn truncate(&self, order: &Exponent) -> Self {
        let trunc = min_opt(self.trunc.clone(), Some(order.clone()));
        Self::from_terms(self.dim, self.terms.clone(), trunc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.dim);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse up to terms below `order` (exact for monomials).
    pub fn invert(&self, order: &Exponent) -> Result<Self> {
        let Some((g, c)) = self.terms.first() else {
            return Err(Error::DivisionByZero);
        };
        let cinv = c.inverse()?;
        let ng = g.neg();
        if self.terms.len() == 1 && self.trunc.is_none() {
            return Ok(Self::monomial(ng, cinv));
        }
        // self = c t^g (1 + u), v(u) > 0
        let u = self.shift(&ng).scale(&cinv).sub(&Self::one(self.dim));
        let vu = match u.valuation() {
            Value::Finite(e) => e,
            Value::Infinity => u.trunc.clone().expect("nonzero remainder or a bound"),
        };
        // the leading term is always kept, even below a lower requested order
        let order = if order <= &ng { &ng.add(&vu) } else { order };
        // exponents of y are those of Σ(-u)^k shifted by -g; stop once k v(u) - g >= order
        let target = order.add(g);
        let mut sum = Self::one(self.dim);
        let mut power = Self::one(self.dim);
        let minus_u = u.neg();
        let mut k = 1usize;
        let mut cap = None;
        while vu.scale(&Rational::from_integer(k.into())) < target {
            if k > MAX_INVERSE_TERMS {
                cap = Some(vu.scale(&Rational::from_integer(k.into())));
                break;
            }
            power = power.mul(&minus_u).truncate(&target);
            sum = sum.add(&power);
            k += 1;
        }
        let mut y = sum.shift(&ng).scale(&cinv).truncate(order);
        if let Some(cap) = cap {
            y = y.truncate(&cap.sub(g));
        }
        Ok(y)
    }

    pub fn div(&self, o: &Self, order: &Exponent) -> Result<Self> {
        Ok(self.mul(&o.invert(order)?))
    }

    /// Sign of the leading coefficient (`0` for the exact zero).
    pub fn sign(&self, budget: u32) -> Result<i8> {
        match self.terms.first() {
            Some((_, c)) => c.sign(budget),
            None if self.trunc.is_some() => Err(Error::TruncationInsufficient(format!("no stored terms below {}", self.trunc.as_ref().unwrap()))),
            None => Ok(0),
        }
    }

    /// Coefficient at exponent 0, for series of non-negative valuation.
    pub fn residue(&self) -> Result<CoefficientReal> {
        match self.terms.first() {
            Some((e, _)) if e.is_negative() => Err(Error::NegativeValuation),
            None if self.trunc.as_ref().is_some_and(|t| !t.is_positive()) => {
                Err(Error::TruncationInsufficient("residue lies beyond the truncation bound".into()))
            }
            _ => Ok(self.coeff(&Exponent::zero(self.dim))),
        }
    }

    pub fn to_literal(&self) -> String {
        super::literal::print_series(self)
    }
}

impl fmt::Display for HahnSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_literal())
    }
}

pub fn valuation(x: &HahnSeries) -> Value {
    x.valuation()
}

pub fn monomial(gamma: Exponent, c: CoefficientReal) -> HahnSeries {
    HahnSeries::monomial(gamma, c)
}

pub fn residue(a: &HahnSeries) -> Result<CoefficientReal> {
    a.residue()
}

pub fn invert(x: &HahnSeries, order: &Exponent) -> Result<HahnSeries> {
    x.invert(order)
}

/// Order of `x` and `y` in the ordered field, using the default precision.
pub fn compare_series(x: &HahnSeries, y: &HahnSeries) -> Result<Ordering> {
    compare_series_with(x, y, default_precision())
}

/// Same as the sign of `x - y`, walking the terms only up to the first difference.
pub fn compare_series_with(x: &HahnSeries, y: &HahnSeries, budget: u32) -> Result<Ordering> {
    x.check_dim(y);
    let trunc = min_opt(x.trunc.clone(), y.trunc.clone());
    let (mut i, mut j) = (0, 0);
    loop {
        let (a, b) = (x.terms.get(i), y.terms.get(j));
        let e = match (a, b) {
            (None, None) => break,
            (Some((ea, _)), None) => ea,
            (None, Some((eb, _))) => eb,
            (Some((ea, _)), Some((eb, _))) => ea.min(eb),
        };
        if trunc.as_ref().is_some_and(|t| e >= t) {
            break;
        }
        match (a, b) {
            (Some((ea, ca)), Some((eb, cb))) if ea == eb => {
                let o = compare(ca, cb, budget)?;
                if o != Ordering::Equal {
                    return Ok(o);
                }
                (i, j) = (i + 1, j + 1);
            }
            (Some((ea, ca)), _) if ea == e => return Ok(ca.sign(budget)?.cmp(&0)),
            (_, Some((_, cb))) => return Ok(0.cmp(&cb.sign(budget)?)),
            _ => unreachable!(),
        }
    }
    match trunc {
        Some(t) => Err(Error::TruncationInsufficient(format!("no stored terms below {t}"))),
        None => Ok(Ordering::Equal),
    }
}

/// `y / x` as a real, for `y` in the archimedean class of `x` (or `y = 0`).
pub fn arch_ratio(y: &HahnSeries, x: &HahnSeries) -> Result<CoefficientReal> {
    let Some((ex, cx)) = x.leading() else {
        return Err(Error::DivisionByZero);
    };
    match y.leading() {
        None => Ok(CoefficientReal::zero()),
        Some((ey, cy)) if ey == ex => cy.div(cx),
        Some(_) => Err(Error::ClassMismatch),
    }
}
