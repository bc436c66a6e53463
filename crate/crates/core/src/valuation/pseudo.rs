//! Pseudo-Cauchy sequences and their pseudo limits.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hahn::{HahnSeries, Value};

#[derive(Clone)]
pub enum PseudoSequence {
    Explicit(Vec<HahnSeries>),
    /// `f(i)` for `i < budget`.
    Generated { f: Arc<dyn Fn(usize) -> HahnSeries + Send + Sync>, budget: usize },
}

impl fmt::Debug for PseudoSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PseudoSequence::Explicit(v) => f.debug_tuple("Explicit").field(v).finish(),
            PseudoSequence::Generated { budget, .. } => write!(f, "Generated(budget {budget})"),
        }
    }
}

impl PseudoSequence {
    pub fn generated(budget: usize, f: impl Fn(usize) -> HahnSeries + Send + Sync + 'static) -> Self {
        PseudoSequence::Generated { f: Arc::new(f), budget }
    }

    pub fn prefix(&self, k: usize) -> Result<Vec<HahnSeries>> {
        match self {
            PseudoSequence::Explicit(v) if k <= v.len() => Ok(v[..k].to_vec()),
            PseudoSequence::Explicit(v) => Err(Error::TruncationInsufficient(format!("sequence has {} elements, {k} requested", v.len()))),
            PseudoSequence::Generated { f, budget } if k <= *budget => Ok((0..k).map(|i| f(i)).collect()),
            PseudoSequence::Generated { budget, .. } => Err(Error::TruncationInsufficient(format!("generator budget {budget} below requested length {k}"))),
        }
    }
}

fn diff_value(a: &HahnSeries, b: &HahnSeries) -> Result<Value> {
    let d = a.sub(b);
    match d.valuation() {
        Value::Infinity if d.trunc().is_some() => Err(Error::TruncationInsufficient("difference vanishes below its truncation bound".into())),
        v => Ok(v),
    }
}

/// Successive-difference valuations strictly increase on the first `k`
/// elements, with no repeated element.
pub fn is_pseudo_cauchy_prefix(a: &[HahnSeries]) -> Result<bool> {
    let mut prev: Option<Value> = None;
    for w in a.windows(2) {
        let v = diff_value(&w[1], &w[0])?;
        if v == Value::Infinity {
            return Ok(false);
        }
        if prev.as_ref().is_some_and(|p| p >= &v) {
            return Ok(false);
        }
        prev = Some(v);
    }
    Ok(true)
}

pub fn check_pseudo_cauchy(seq: &PseudoSequence, k: usize) -> Result<bool> {
    is_pseudo_cauchy_prefix(&seq.prefix(k)?)
}

/// Does `x` satisfy `v(x - a_i) = v(a_{i+1} - a_i)` for every `i < len - 1`?
pub fn is_pseudo_limit(x: &HahnSeries, a: &[HahnSeries]) -> Result<bool> {
    for i in 0..a.len().saturating_sub(1) {
        if diff_value(x, &a[i])? != diff_value(&a[i + 1], &a[i])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A pseudo limit of a pseudo-Cauchy prefix.
///
/// First tries `a_0 + Σ lead(a_{i+1} - a_i)`. That sum can miss when a
/// difference carries lower-order tails, so the fallback
/// `a_{k-1} + lead(a_{k-1} - a_{k-2})` is used, which always qualifies.
pub fn pseudo_limit_of(a: &[HahnSeries]) -> Result<HahnSeries> {
    if a.is_empty() {
        return Err(Error::NotPseudoCauchy("empty prefix".into()));
    }
    if !is_pseudo_cauchy_prefix(a)? {
        return Err(Error::NotPseudoCauchy("successive difference valuations do not strictly increase".into()));
    }
    if a.len() == 1 {
        return Ok(a[0].clone());
    }
    let mut x = a[0].clone();
    for w in a.windows(2) {
        x = x.add(&w[1].sub(&w[0]).leading_monomial());
    }
    if is_pseudo_limit(&x, a)? {
        return Ok(x);
    }
    let n = a.len();
    let y = a[n - 1].add(&a[n - 1].sub(&a[n - 2]).leading_monomial());
    debug_assert!(is_pseudo_limit(&y, a).unwrap_or(false));
    Ok(y)
}

pub fn pseudo_limit(seq: &PseudoSequence, k: usize) -> Result<HahnSeries> {
    pseudo_limit_of(&seq.prefix(k)?)
}
