//! From a type file to a verified witness and a report.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::sync::Arc;

use super::classify::{classify_cut, CutClassification};
use super::complete::{complete_type, Completion};
use super::oracle::{CutOracle, TargetOracle, TypeOracle};
use super::realize::{realize_cut_field, realize_cut_group, Witness};
use super::{Budgets, Mode};
use crate::error::Result;
use crate::formula::{eval, satisfying_cut, Env, Formula, TypeFile};
use crate::hahn::{compare_series_with, HahnSeries};

/// Truth of one formula at the witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub formula: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct Realization {
    pub mode: Mode,
    pub budgets: Budgets,
    pub completion: Completion,
    pub classification: CutClassification,
    pub witness: Witness,
    /// Type prefix first, then the completion's literals.
    pub verification: Vec<Verdict>,
    /// Deferred enumerated formulas, decided at the witness.
    pub deferred: Vec<Verdict>,
    pub queries: usize,
}

impl Realization {
    pub fn verified(&self) -> bool {
        self.verification.iter().all(|v| v.holds)
    }

    pub fn report(&self) -> String {
        let c = &self.completion;
        let mut out = String::new();
        let _ = writeln!(out, "COMPLETION");
        let _ = writeln!(out, "  type formulas: {}", c.type_prefix.len());
        let _ = writeln!(out, "  enumerated formulas decided: {} ({} true)", c.decided.len(), c.decided.iter().filter(|(_, b)| *b).count());
        let _ = writeln!(out, "  deferred to the witness: {}", c.deferred.len());
        let _ = writeln!(out, "  path: {}", c.path);
        let _ = writeln!(out, "CLASSIFICATION");
        let _ = writeln!(out, "  {}", self.classification.tag());
        for d in self.classification.details() {
            let _ = writeln!(out, "  {d}");
        }
        let _ = writeln!(out, "CASE");
        let _ = writeln!(out, "  {}", self.witness.case);
        for n in &self.witness.notes {
            let _ = writeln!(out, "  {n}");
        }
        let _ = writeln!(out, "WITNESS");
        let _ = writeln!(out, "  {}", self.witness.value.to_literal());
        let _ = writeln!(out, "VERIFICATION");
        let held = self.verification.iter().filter(|v| v.holds).count();
        let _ = writeln!(out, "  {held}/{} formulas hold", self.verification.len());
        let _ = writeln!(out, "  side queries checked: {}", self.witness.checked);
        for v in &self.verification {
            let _ = writeln!(out, "  {} {}", if v.holds { "pass" } else { "FAIL" }, v.formula);
        }
        for v in &self.deferred {
            let _ = writeln!(out, "  deferred {} {}", if v.holds { "true" } else { "false" }, v.formula);
        }
        let _ = writeln!(out, "BUDGETS");
        let _ = writeln!(out, "  mode {}; {}", self.mode, self.budgets);
        let _ = writeln!(out, "  oracle queries: {}", self.queries);
        out
    }
}

/// Successive strict improvements of one-sided bounds along the type prefix.
fn bound_runs(c: &Completion) -> Result<(Vec<HahnSeries>, Vec<HahnSeries>)> {
    let (mut lows, mut ups): (Vec<HahnSeries>, Vec<HahnSeries>) = (Vec::new(), Vec::new());
    for f in &c.type_prefix {
        let Some(b) = satisfying_cut(std::slice::from_ref(f), &c.var, &c.env)? else { continue };
        if let Some(l) = b.lower {
            if lows.last().map_or(Ok(true), |p| compare_series_with(&l.value, p, c.env.budget).map(|o| o == Ordering::Greater))? {
                lows.push(l.value);
            }
        }
        if let Some(u) = b.upper {
            if ups.last().map_or(Ok(true), |p| compare_series_with(&u.value, p, c.env.budget).map(|o| o == Ordering::Less))? {
                ups.push(u.value);
            }
        }
    }
    Ok((lows, ups))
}

/// Parameters, `t`-constants and bound values: the elements the cut is read against.
fn generators(c: &Completion) -> Result<Vec<HahnSeries>> {
    let mut out: Vec<HahnSeries> = c.env.vars.values().cloned().collect();
    let mut fs: Vec<&Formula> = c.type_prefix.iter().collect();
    let lits = c.literals();
    fs.extend(lits.iter());
    let mut syms: Vec<String> = fs.iter().flat_map(|f| f.free_symbols()).filter(|s| s.starts_with("t^(")).collect();
    syms.sort();
    syms.dedup();
    for s in syms {
        out.push(c.env.lookup(&s)?);
    }
    for b in [c.bounds.lower.as_ref().map(|b| &b.value), c.bounds.upper.as_ref().map(|b| &b.value), c.bounds.point.as_ref()].into_iter().flatten() {
        out.push(b.clone());
    }
    out.retain(|g| !g.is_zero());
    Ok(out)
}

fn verdicts(fs: &[Formula], env: &Env) -> Result<Vec<Verdict>> {
    fs.iter().map(|f| Ok(Verdict { formula: f.to_string(), holds: eval(f, env)? })).collect()
}

/// Complete, classify, fill and check.
pub fn realize_type(tf: &TypeFile, mode: Mode, budgets: &Budgets, dim: usize) -> Result<Realization> {
    let completion = complete_type(&tf.ty, &tf.params, mode, budgets, dim)?;
    let gens = generators(&completion)?;
    let (lows, ups) = bound_runs(&completion)?;
    let (approx, opposite) = if lows.len() >= 2 || ups.len() < 2 {
        (lows, completion.bounds.upper.as_ref().map(|b| b.value.clone()))
    } else {
        (ups, completion.bounds.lower.as_ref().map(|b| b.value.clone()))
    };
    let oracle: Arc<dyn CutOracle> = match &tf.target {
        Some(x0) => Arc::new(TargetOracle::new(x0.clone(), budgets.precision)),
        None => Arc::new(TypeOracle::new(completion.bounds.clone(), completion.env.clone())?.with_approximants(approx, opposite)),
    };
    let classification = classify_cut(oracle.as_ref(), &gens, mode, budgets)?;
    let witness = match mode {
        Mode::Group => realize_cut_group(oracle.clone(), &classification, &gens, budgets)?,
        Mode::Field => realize_cut_field(oracle.clone(), &classification, &gens, budgets)?,
    };
    let env = completion.env.clone().with(&completion.var, witness.value.clone());
    let mut checked = completion.type_prefix.clone();
    checked.extend(completion.literals());
    let verification = verdicts(&checked, &env)?;
    let deferred = verdicts(&completion.deferred, &env)?;
    Ok(Realization { mode, budgets: budgets.clone(), queries: oracle.queries(), completion, classification, witness, verification, deferred })
}
