//! Reals presented by nested rational intervals.
//!
//! An [`OracleReal`] answers `approx(n)` with an interval of width at most
//! `2^-n`, and the answers at increasing `n` are nested. Generators are
//! checked against both laws as they are consulted, and results are memoized.
//! Sums and rational multiples of oracles are kept as affine forms over
//! their leaves, so `x - x` cancels exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::algebraic::RealAlgebraic;
use super::rational::{pow2_neg, Rational};
use crate::error::{Error, Result};

pub type Interval = (Rational, Rational);

type Generator = dyn Fn(u32) -> Result<Interval> + Send + Sync;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

enum Node {
    Leaf(Box<Generator>),
    /// `constant + Σ coeff * leaf`, terms keyed by leaf id.
    Affine { terms: Vec<(OracleReal, Rational)>, constant: RealAlgebraic },
    Product(OracleReal, OracleReal),
    Inverse(OracleReal),
}

struct Inner {
    id: u64,
    label: String,
    node: Node,
    memo: Mutex<Vec<Interval>>,
}

#[derive(Clone)]
pub struct OracleReal {
    inner: Arc<Inner>,
}

impl fmt::Debug for OracleReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "oracle#{}({})", self.inner.id, self.inner.label)
    }
}

impl fmt::Display for OracleReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "oracle[{}]", self.inner.label)
    }
}

fn width_bits(total: &Rational) -> u32 {
    // smallest e with total <= 2^e
    let mut e = 0u32;
    let mut p = Rational::one();
    while &p < total {
        p *= Rational::from_integer(BigInt::from(2));
        e += 1;
    }
    e
}

fn imul(a: &Interval, b: &Interval) -> Interval {
    let ps = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    (ps.iter().min().unwrap().clone(), ps.iter().max().unwrap().clone())
}

fn mag(a: &Interval) -> Rational {
    a.0.abs().max(a.1.abs())
}

impl OracleReal {
    fn make(label: String, node: Node) -> Self {
        OracleReal { inner: Arc::new(Inner { id: NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed), label, node, memo: Mutex::new(Vec::new()) }) }
    }

    /// Wrap an arbitrary generator; width and nesting are checked on use.
    pub fn from_fn(label: impl Into<String>, f: impl Fn(u32) -> Result<Interval> + Send + Sync + 'static) -> Self {
        Self::make(label.into(), Node::Leaf(Box::new(f)))
    }

    /// The point interval `[q, q]` at every precision.
    pub fn constant(q: Rational) -> Self {
        let label = super::rational::fmt_rational(&q);
        Self::from_fn(label, move |_| Ok((q.clone(), q.clone())))
    }

    /// Centered intervals `[q - 2^-(n+1), q + 2^-(n+1)]`.
    pub fn rational_approx(q: Rational) -> Self {
        let label = format!("~{}", super::rational::fmt_rational(&q));
        Self::from_fn(label, move |n| {
            let h = pow2_neg(n + 1);
            Ok((&q - &h, &q + &h))
        })
    }

    /// Dyadic cells `[j/2^n, (j+1)/2^n]` of a real algebraic number.
    pub fn from_algebraic(a: RealAlgebraic) -> Self {
        let label = a.to_string();
        Self::from_fn(label, move |n| {
            let scale = Rational::from_integer(BigInt::one() << n as usize);
            let j = Rational::from_integer(a.floor_scaled(n));
            Ok((&j / &scale, (j + Rational::one()) / &scale))
        })
    }

    /// Binary expansion `0.b0 b1 b2 ...` of a real in `[0, 1]` given bit by bit.
    pub fn from_bits(label: impl Into<String>, bit: impl Fn(u32) -> bool + Send + Sync + 'static) -> Self {
        Self::from_fn(label, move |n| {
            let mut lo = Rational::zero();
            for i in 0..n {
                if bit(i) {
                    lo += pow2_neg(i + 1);
                }
            }
            let hi = &lo + pow2_neg(n);
            Ok((lo, hi))
        })
    }

    pub fn id(&self) -> u64 {
        self.inner.id
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn same_object(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    /// Interval of width `<= 2^-n` containing the value, nested in all coarser answers.
    pub fn approx(&self, n: u32) -> Result<Interval> {
        let mut memo = self.inner.memo.lock().expect("oracle memo poisoned");
        while memo.len() <= n as usize {
            let k = memo.len() as u32;
            let (lo, hi) = self.compute(k)?;
            if lo > hi {
                return Err(Error::OracleFailure(format!("{}: empty interval at precision {k}", self.inner.label)));
            }
            if &hi - &lo > pow2_neg(k) {
                return Err(Error::OracleFailure(format!("{}: width exceeds 2^-{k}", self.inner.label)));
            }
            if let Some((plo, phi)) = memo.last() {
                if &lo < plo || &hi > phi {
                    return Err(Error::OracleFailure(format!("{}: interval at precision {k} not nested", self.inner.label)));
                }
            }
            memo.push((lo, hi));
        }
        Ok(memo[n as usize].clone())
    }

    fn compute(&self, n: u32) -> Result<Interval> {
        match &self.inner.node {
            Node::Leaf(g) => g(n),
            Node::Affine { terms, constant } => {
                let total: Rational = terms.iter().map(|(_, q)| q.abs()).sum::<Rational>() + Rational::one();
                let extra = n + width_bits(&total);
                let (mut lo, mut hi) = constant.approx(extra);
                for (leaf, q) in terms {
                    let (a, b) = leaf.approx(extra)?;
                    if q.is_positive() {
                        lo += &a * q;
                        hi += &b * q;
                    } else {
                        lo += &b * q;
                        hi += &a * q;
                    }
                }
                Ok((lo, hi))
            }
            Node::Product(a, b) => {
                let ma = mag(&a.approx(0)?) + Rational::one();
                let mb = mag(&b.approx(0)?) + Rational::one();
                let extra = n + 1 + width_bits(&(ma + mb));
                Ok(imul(&a.approx(extra)?, &b.approx(extra)?))
            }
            Node::Inverse(a) => {
                // find a precision where the interval avoids zero, then bound 1/|x|
                let mut k = 0;
                let (lo, hi) = loop {
                    let iv = a.approx(k)?;
                    if iv.0.is_positive() || iv.1.is_negative() {
                        break iv;
                    }
                    k += 1;
                    if k > 4096 {
                        return Err(Error::OracleFailure(format!("{}: cannot separate from zero", a.inner.label)));
                    }
                };
                let m = lo.abs().min(hi.abs());
                // width(1/I) <= width(I) / m^2
                let inv_m2 = Rational::one() / (&m * &m);
                let extra = (n + width_bits(&inv_m2)).max(k);
                let (l, h) = a.approx(extra)?;
                Ok((Rational::one() / h, Rational::one() / l))
            }
        }
    }

    /// Affine view: `(terms, constant)`; a leaf or product is a single term.
    fn affine_parts(&self) -> (Vec<(OracleReal, Rational)>, RealAlgebraic) {
        match &self.inner.node {
            Node::Affine { terms, constant } => (terms.clone(), constant.clone()),
            _ => (vec![(self.clone(), Rational::one())], RealAlgebraic::from_rational(&Rational::zero())),
        }
    }

    /// Sum as an affine form; `None` means the oracle parts cancelled and the
    /// value is the returned exact constant.
    pub fn affine_combine(parts: &[(&OracleReal, Rational)], constant: RealAlgebraic) -> std::result::Result<OracleReal, RealAlgebraic> {
        let mut acc: BTreeMap<u64, (OracleReal, Rational)> = BTreeMap::new();
        let mut c = constant;
        for (o, q) in parts {
            let (terms, k) = o.affine_parts();
            if !k.is_zero() {
                c = c.add(&k.mul(&RealAlgebraic::from_rational(q)));
            }
            for (leaf, w) in terms {
                let e = acc.entry(leaf.id()).or_insert_with(|| (leaf.clone(), Rational::zero()));
                e.1 += w * q;
            }
        }
        let terms: Vec<(OracleReal, Rational)> = acc.into_values().filter(|(_, q)| !q.is_zero()).collect();
        if terms.is_empty() {
            return Err(c);
        }
        if terms.len() == 1 && terms[0].1.is_one() && c.is_zero() {
            return Ok(terms[0].0.clone());
        }
        let mut label: Vec<String> = terms.iter().map(|(o, q)| format!("{}*{}", super::rational::fmt_rational(q), o.inner.label)).collect();
        if !c.is_zero() {
            label.push(c.to_string());
        }
        Ok(Self::make(label.join("+"), Node::Affine { terms, constant: c }))
    }

    pub fn product(a: &OracleReal, b: &OracleReal) -> OracleReal {
        Self::make(format!("({})*({})", a.inner.label, b.inner.label), Node::Product(a.clone(), b.clone()))
    }

    pub fn inverse(a: &OracleReal) -> OracleReal {
        Self::make(format!("1/({})", a.inner.label), Node::Inverse(a.clone()))
    }

    /// Two oracles with identical affine structure are the same real.
    pub fn structurally_equal(&self, other: &Self) -> bool {
        if self.same_object(other) {
            return true;
        }
        let (a, ca) = self.affine_parts();
        let (b, cb) = other.affine_parts();
        ca == cb && a.len() == b.len() && a.iter().zip(&b).all(|((x, p), (y, q))| x.same_object(y) && p == q)
    }
}

/// `creal_approx` in free-function form.
pub fn creal_approx(o: &OracleReal, n: u32) -> Result<Interval> {
    o.approx(n)
}
