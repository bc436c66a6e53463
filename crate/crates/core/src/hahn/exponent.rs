use std::fmt;

use num_traits::{Signed, Zero};

use crate::numbers::rational::{fmt_rational, int, Rational};

/// A point of ℚⁿ under the lexicographic order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(Vec<Rational>);

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.0.iter().map(fmt_rational).collect();
        write!(f, "({})", cs.join(","))
    }
}

impl Exponent {
    pub fn new(coords: Vec<Rational>) -> Self {
        assert!(!coords.is_empty(), "exponent dimension must be at least 1");
        Exponent(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Exponent(vec![Rational::zero(); dim])
    }

    /// `q` in the first coordinate, zero elsewhere.
    pub fn first(dim: usize, q: Rational) -> Self {
        let mut v = vec![Rational::zero(); dim];
        v[0] = q;
        Exponent(v)
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Exponent(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_positive())
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative())
    }

    pub fn add(&self, o: &Self) -> Self {
        Exponent(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Exponent(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Exponent(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Exponent(self.0.iter().map(|a| a * q).collect())
    }

    pub fn midpoint(&self, o: &Self) -> Self {
        self.add(o).scale(&(Rational::from_integer(1.into()) / int(2)))
    }
}

/// A valuation value: an exponent or `∞` (the value of zero).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Finite(Exponent),
    Infinity,
}

impl Value {
    pub fn finite(&self) -> Option<&Exponent> {
        match self {
            Value::Finite(e) => Some(e),
            Value::Infinity => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(e) => write!(f, "{e}"),
            Value::Infinity => write!(f, "inf"),
        }
    }
}
