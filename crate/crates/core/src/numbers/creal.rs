//! The coefficient universe: rationals, real algebraic numbers and oracle reals.

use std::cmp::Ordering;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::algebraic::RealAlgebraic;
use super::oracle::{Interval, OracleReal};
use super::rational::{fmt_rational, midpoint, parse_rational, Rational};
use crate::error::{Error, Result};

static DEFAULT_PRECISION: AtomicU32 = AtomicU32::new(64);

/// Refinement budget used when no explicit budget is given.
pub fn default_precision() -> u32 {
    DEFAULT_PRECISION.load(AtomicOrdering::Relaxed)
}

pub fn set_default_precision(p: u32) {
    DEFAULT_PRECISION.store(p.max(1), AtomicOrdering::Relaxed);
}

#[derive(Clone)]
pub enum CoefficientReal {
    Rational(Rational),
    Algebraic(RealAlgebraic),
    Oracle(OracleReal),
}

use CoefficientReal as C;

impl fmt::Debug for CoefficientReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CoefficientReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            C::Rational(q) => write!(f, "{}", fmt_rational(q)),
            C::Algebraic(a) => write!(f, "{a}"),
            C::Oracle(o) => write!(f, "{o}"),
        }
    }
}

/// Exact equality for rationals and algebraics; oracles compare structurally.
impl PartialEq for CoefficientReal {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (C::Rational(a), C::Rational(b)) => a == b,
            (C::Algebraic(a), C::Algebraic(b)) => a == b,
            (C::Oracle(a), C::Oracle(b)) => a.structurally_equal(b),
            _ => false,
        }
    }
}

impl From<Rational> for CoefficientReal {
    fn from(q: Rational) -> Self {
        C::Rational(q)
    }
}

impl From<RealAlgebraic> for CoefficientReal {
    fn from(a: RealAlgebraic) -> Self {
        match a.as_rational() {
            Some(q) => C::Rational(q),
            None => C::Algebraic(a),
        }
    }
}

impl From<OracleReal> for CoefficientReal {
    fn from(o: OracleReal) -> Self {
        C::Oracle(o)
    }
}

impl CoefficientReal {
    pub fn zero() -> Self {
        C::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        C::Rational(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        C::Rational(super::rational::int(n))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            C::Rational(q) => q.is_zero(),
            C::Algebraic(a) => a.is_zero(),
            C::Oracle(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, C::Rational(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            C::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// Exact value, if not oracle-backed.
    pub fn exact(&self) -> Option<RealAlgebraic> {
        match self {
            C::Rational(q) => Some(RealAlgebraic::from_rational(q)),
            C::Algebraic(a) => Some(a.clone()),
            C::Oracle(_) => None,
        }
    }

    pub fn is_oracle(&self) -> bool {
        matches!(self, C::Oracle(_))
    }

    fn as_oracle(&self) -> OracleReal {
        match self {
            C::Oracle(o) => o.clone(),
            C::Rational(q) => OracleReal::constant(q.clone()),
            C::Algebraic(a) => OracleReal::from_algebraic(a.clone()),
        }
    }

    fn from_affine(r: std::result::Result<OracleReal, RealAlgebraic>) -> Self {
        match r {
            Ok(o) => C::Oracle(o),
            Err(a) => a.into(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (C::Rational(a), C::Rational(b)) => C::Rational(a + b),
            (C::Oracle(o), x) | (x, C::Oracle(o)) => {
                let mut parts = vec![(o, Rational::one())];
                let oo;
                let constant = match x {
                    C::Oracle(p) => {
                        oo = p.clone();
                        parts.push((&oo, Rational::one()));
                        RealAlgebraic::from_rational(&Rational::zero())
                    }
                    _ => x.exact().unwrap(),
                };
                Self::from_affine(OracleReal::affine_combine(&parts, constant))
            }
            _ => self.exact().unwrap().add(&other.exact().unwrap()).into(),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            C::Rational(q) => C::Rational(-q),
            C::Algebraic(a) => C::Algebraic(a.neg()),
            C::Oracle(o) => Self::from_affine(OracleReal::affine_combine(&[(o, -Rational::one())], RealAlgebraic::from_rational(&Rational::zero()))),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        match (self, other) {
            (C::Rational(a), C::Rational(b)) => C::Rational(a * b),
            (C::Oracle(o), C::Rational(q)) | (C::Rational(q), C::Oracle(o)) => {
                Self::from_affine(OracleReal::affine_combine(&[(o, q.clone())], RealAlgebraic::from_rational(&Rational::zero())))
            }
            (C::Oracle(_), _) | (_, C::Oracle(_)) => C::Oracle(OracleReal::product(&self.as_oracle(), &other.as_oracle())),
            _ => self.exact().unwrap().mul(&other.exact().unwrap()).into(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.mul(&C::Rational(q.clone()))
    }

    pub fn inverse(&self) -> Result<Self> {
        match self {
            C::Rational(q) if q.is_zero() => Err(Error::DivisionByZero),
            C::Rational(q) => Ok(C::Rational(Rational::one() / q)),
            C::Algebraic(a) => Ok(a.inverse()?.into()),
            C::Oracle(o) => Ok(C::Oracle(OracleReal::inverse(o))),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Interval of width `<= 2^-n` around the value.
    pub fn approx(&self, n: u32) -> Result<Interval> {
        match self {
            C::Rational(q) => Ok((q.clone(), q.clone())),
            C::Algebraic(a) => Ok(a.approx(n)),
            C::Oracle(o) => o.approx(n),
        }
    }

    pub fn sign(&self, budget: u32) -> Result<i8> {
        Ok(match compare(self, &Self::zero(), budget)? {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        })
    }

    pub fn to_f64(&self) -> f64 {
        match self.approx(53) {
            Ok((lo, hi)) => midpoint(&lo, &hi).to_f64().unwrap_or(f64::NAN),
            Err(_) => f64::NAN,
        }
    }

    /// Parse a rational literal or `alg[...]`.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        if s.starts_with("alg[") {
            return Ok(RealAlgebraic::parse(s)?.into());
        }
        Ok(C::Rational(parse_rational(s)?))
    }
}

/// Order of two coefficients. Exact values always decide; oracle values
/// decide by interval separation within `budget` refinements, or by exact
/// cancellation of their affine forms.
pub fn compare(a: &CoefficientReal, b: &CoefficientReal, budget: u32) -> Result<Ordering> {
    match (a.exact(), b.exact()) {
        (Some(x), Some(y)) => return Ok(x.cmp(&y)),
        _ => {
            if a == b {
                return Ok(Ordering::Equal);
            }
            let d = a.sub(b);
            if let Some(x) = d.exact() {
                return Ok(x.sign().cmp(&0));
            }
        }
    }
    for n in 0..=budget {
        let (alo, ahi) = a.approx(n)?;
        let (blo, bhi) = b.approx(n)?;
        if ahi < blo {
            return Ok(Ordering::Less);
        }
        if bhi < alo {
            return Ok(Ordering::Greater);
        }
        if alo == ahi && blo == bhi && alo == blo {
            return Ok(Ordering::Equal);
        }
    }
    Err(Error::ComparisonUndecidedAtPrecision(budget))
}

/// `|x|` for exact values and oracles alike.
pub fn abs(x: &CoefficientReal, budget: u32) -> Result<CoefficientReal> {
    Ok(if x.sign(budget)? < 0 { x.neg() } else { x.clone() })
}

/// Is `x` a strictly positive rational?
pub fn is_positive_rational(x: &CoefficientReal) -> bool {
    matches!(x, C::Rational(q) if q.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rational::{int, rat};

    #[test]
    fn exact_comparisons() {
        assert_eq!(compare(&C::Rational(rat(2, 3)), &C::Rational(rat(1, 2)), 0).unwrap(), Ordering::Greater);
        let s2: CoefficientReal = RealAlgebraic::sqrt(&int(2)).unwrap().into();
        let o = C::Oracle(OracleReal::rational_approx(rat(3, 2)));
        assert_eq!(compare(&s2, &o, 10).unwrap(), Ordering::Less);
    }

    #[test]
    fn same_oracle_is_equal() {
        let o = C::Oracle(OracleReal::from_fn("x", |n| Ok((int(0), crate::numbers::rational::pow2_neg(n)))));
        assert_eq!(compare(&o, &o.clone(), 0).unwrap(), Ordering::Equal);
        assert!(o.sub(&o).is_zero());
        assert_eq!(compare(&o.add(&C::one()), &o, 0).unwrap(), Ordering::Greater);
    }

    #[test]
    fn distinct_equal_oracles_are_undecided() {
        let a = C::Oracle(OracleReal::rational_approx(rat(1, 3)));
        let b = C::Oracle(OracleReal::rational_approx(rat(1, 3)));
        assert_eq!(compare(&a, &b, 12), Err(Error::ComparisonUndecidedAtPrecision(12)));
    }

    #[test]
    fn algebraic_normalizes_to_rational() {
        let s2: CoefficientReal = RealAlgebraic::sqrt(&int(2)).unwrap().into();
        let two = s2.mul(&s2);
        assert!(matches!(two, C::Rational(ref q) if *q == int(2)));
        assert_eq!(s2.inverse().unwrap().mul(&s2), C::one());
    }
}
