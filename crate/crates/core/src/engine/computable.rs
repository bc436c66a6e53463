//! Formula sequences computable relative to a real.
//!
//! A generator sees only rational intervals around the real. It either emits
//! the `i`-th formula or asks for a narrower interval, and its answer may not
//! change once given. The wrapper checks this on a prefix and records how much
//! precision was consumed.

use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::{Formula, PartialType};
use crate::numbers::oracle::Interval;
use crate::numbers::OracleReal;

#[derive(Clone, Debug, PartialEq)]
pub enum GenStep {
    Emit(Option<Formula>),
    NeedPrecision,
}

type Gen = Arc<dyn Fn(usize, &Interval) -> GenStep + Send + Sync>;

pub struct ComputableSequence {
    gen: Gen,
    r: OracleReal,
    max_precision: u32,
    consumed: AtomicU32,
}

impl ComputableSequence {
    /// The `i`-th formula, asking the real for as little precision as needed.
    pub fn formula(&self, i: usize) -> Result<Option<Formula>> {
        for n in 0..=self.max_precision {
            if let GenStep::Emit(f) = (self.gen)(i, &self.r.approx(n)?) {
                self.consumed.fetch_max(n, Ordering::Relaxed);
                return Ok(f);
            }
        }
        Err(Error::BudgetExhausted(format!("formula {i} undecided at precision {}", self.max_precision)))
    }

    /// Largest precision any emitted formula needed.
    pub fn precision_consumed(&self) -> u32 {
        self.consumed.load(Ordering::Relaxed)
    }

    /// A partial type emitting this sequence; undecidable steps emit nothing.
    pub fn into_type(self, var: &str, params: &[&str]) -> PartialType {
        let me = Arc::new(self);
        let mut t = PartialType::new(var, params);
        t.push_family("relative", move |i| me.formula(i).ok().flatten());
        t
    }
}

/// Wraps `gen` as a sequence computable in `r`, after checking on the first
/// `check` steps that every answer, once given, survives narrower intervals.
pub fn sequence_is_computable_in(
    gen: impl Fn(usize, &Interval) -> GenStep + Send + Sync + 'static,
    r: OracleReal,
    check: usize,
    max_precision: u32,
) -> Result<ComputableSequence> {
    let gen: Gen = Arc::new(gen);
    for i in 0..check {
        let mut first: Option<(u32, Option<Formula>)> = None;
        for n in 0..=max_precision {
            match (gen(i, &r.approx(n)?), &first) {
                (GenStep::Emit(f), None) => first = Some((n, f)),
                (GenStep::Emit(f), Some((_, g))) if &f == g => {}
                (_, Some((m, _))) => {
                    return Err(Error::OracleFailure(format!("generator is not interval-monotone at step {i}: answer given at precision {m} changes at {n}")));
                }
                (GenStep::NeedPrecision, None) => {}
            }
        }
    }
    Ok(ComputableSequence { gen, r, max_precision, consumed: AtomicU32::new(0) })
}
