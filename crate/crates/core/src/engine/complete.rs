//! Completing a finite part of a partial type.
//!
//! The first `prefix` formulas of the enumeration (over the variable and the
//! parameters) are decided one at a time. Assignments are the nodes of a
//! binary tree, bit 0 asserting the formula and bit 1 its negation, and a node
//! is present when the type prefix together with its assignment is
//! satisfiable. The leftmost path is the completion. Formulas whose cut cannot
//! be read off (nonlinear in the variable) are set aside and later decided by
//! the witness.

use std::sync::Arc;

use super::{Budgets, Mode};
use crate::error::{Error, Result};
use crate::formula::{enumerate_formulas, satisfying_cut, CutBounds, Env, Formula, PartialType, Signature};
use crate::hahn::HahnSeries;
use crate::trees::{find_path_bounded, BinString, TreeOracle};

#[derive(Clone, Debug)]
pub struct Completion {
    pub var: String,
    /// Formulas of the type examined.
    pub type_prefix: Vec<Formula>,
    /// Enumerated formulas with their truth values, in enumeration order.
    pub decided: Vec<(Formula, bool)>,
    /// Enumerated formulas not decided by the cut.
    pub deferred: Vec<Formula>,
    pub path: BinString,
    pub bounds: CutBounds,
    pub env: Env,
}

impl Completion {
    /// The decided formulas as literals.
    pub fn literals(&self) -> Vec<Formula> {
        self.decided.iter().map(|(f, b)| if *b { f.clone() } else { Formula::not(f.clone()) }).collect()
    }
}

pub(crate) fn param_env(params: &[(String, HahnSeries)], dim: usize, budgets: &Budgets) -> Env {
    let mut env = Env::new(dim);
    env.budget = budgets.precision;
    for (n, v) in params {
        env.bind(n, v.clone());
    }
    env
}

/// A subset of `fs` that is still unsatisfiable and minimal under deletion.
fn minimal_conflict(fs: &[Formula], x: &str, env: &Env) -> Result<Vec<Formula>> {
    let mut k = 1;
    while k <= fs.len() && satisfying_cut(&fs[..k], x, env)?.is_some() {
        k += 1;
    }
    let mut core: Vec<Formula> = fs[..k.min(fs.len())].to_vec();
    let mut i = core.len();
    while i > 0 {
        i -= 1;
        let mut trial = core.clone();
        trial.remove(i);
        if satisfying_cut(&trial, x, env)?.is_none() {
            core = trial;
        }
    }
    Ok(core)
}

pub fn complete_type(ty: &PartialType, params: &[(String, HahnSeries)], mode: Mode, budgets: &Budgets, dim: usize) -> Result<Completion> {
    budgets.validate()?;
    let env = param_env(params, dim, budgets);
    let x = ty.var.clone();
    ty.check_prefix(budgets.prefix)?;
    let prefix = ty.prefix(budgets.prefix);
    if satisfying_cut(&prefix, &x, &env)?.is_none() {
        let core = minimal_conflict(&prefix, &x, &env)?;
        return Err(Error::NotFinitelySatisfiable(core.iter().map(|f| f.to_string()).collect()));
    }

    let mut symbols: Vec<&str> = vec![x.as_str()];
    symbols.extend(ty.params.iter().map(String::as_str));
    let sig = match mode {
        Mode::Group => Signature::group(&symbols),
        Mode::Field => Signature::field(&symbols),
    };
    let mut levels = Vec::new();
    let mut deferred = Vec::new();
    for i in 0..budgets.prefix {
        let f = enumerate_formulas(i, &sig);
        match satisfying_cut(std::slice::from_ref(&f), &x, &env) {
            Ok(_) => levels.push(f),
            Err(Error::NonlinearUnsupported(_)) => deferred.push(f),
            Err(e) => return Err(e),
        }
    }

    let (tx, tenv, tprefix, tlevels) = (x.clone(), env.clone(), prefix.clone(), Arc::new(levels.clone()));
    let tree = TreeOracle::new("assignments", move |s| {
        let mut cs = tprefix.clone();
        for (f, b) in tlevels.iter().zip(&s.0) {
            cs.push(if *b { Formula::not(f.clone()) } else { f.clone() });
        }
        matches!(satisfying_cut(&cs, &tx, &tenv), Ok(Some(_)))
    });
    let path = find_path_bounded(&tree, levels.len()).ok_or_else(|| Error::OracleInconsistent("no consistent assignment".into()))?;
    let decided: Vec<(Formula, bool)> = levels.into_iter().zip(&path.0).map(|(f, b)| (f, !*b)).collect();
    let mut all = prefix.clone();
    all.extend(decided.iter().map(|(f, b)| if *b { f.clone() } else { Formula::not(f.clone()) }));
    let bounds = satisfying_cut(&all, &x, &env)?.ok_or_else(|| Error::OracleInconsistent("completion became unsatisfiable".into()))?;
    Ok(Completion { var: x, type_prefix: prefix, decided, deferred, path, bounds, env })
}
