//! Satisfaction in the Hahn-series model.

use std::collections::BTreeMap;

use super::ast::{Atom, Formula};
use super::parse::t_symbol_coords;
use super::qe::doag_qe;
use super::term::Term;
use crate::error::{Error, Result};
use crate::hahn::{Exponent, HahnSeries};
use crate::numbers::{default_precision, CoefficientReal};

/// Assignment of series to symbols. `t^(..)` symbols need no binding.
#[derive(Clone, Debug)]
pub struct Env {
    pub dim: usize,
    pub vars: BTreeMap<String, HahnSeries>,
    pub budget: u32,
}

impl Env {
    pub fn new(dim: usize) -> Self {
        Env { dim, vars: BTreeMap::new(), budget: default_precision() }
    }

    pub fn with(mut self, name: &str, value: HahnSeries) -> Self {
        self.vars.insert(name.to_string(), value);
        self
    }

    pub fn bind(&mut self, name: &str, value: HahnSeries) {
        self.vars.insert(name.to_string(), value);
    }

    pub fn lookup(&self, sym: &str) -> Result<HahnSeries> {
        if let Some(v) = self.vars.get(sym) {
            return Ok(v.clone());
        }
        if let Some(qs) = t_symbol_coords(sym) {
            let e = match qs.len() {
                1 => Exponent::first(self.dim, qs[0].clone()),
                n if n == self.dim => Exponent::new(qs),
                n => return Err(Error::DimensionMismatch { expected: self.dim, found: n }),
            };
            return Ok(HahnSeries::t_pow(e));
        }
        Err(Error::Unsupported(format!("unbound symbol `{sym}`")))
    }
}

pub fn eval_term(t: &Term, env: &Env) -> Result<HahnSeries> {
    let mut acc = HahnSeries::zero(env.dim);
    for (m, q) in t.monomials() {
        let mut p = HahnSeries::constant(env.dim, CoefficientReal::Rational(q.clone()));
        for (s, k) in &m.0 {
            p = p.mul(&env.lookup(s)?.pow(*k));
        }
        acc = acc.add(&p);
    }
    Ok(acc)
}

pub fn eval_atom(a: &Atom, env: &Env) -> Result<bool> {
    let d = eval_term(&a.difference(), env)?;
    Ok(a.rel.holds(d.sign(env.budget)?))
}

/// Truth of `f` under `env`. Quantified subformulas are first passed through
/// the ordered-group elimination, so the bound variable must occur linearly.
pub fn eval(f: &Formula, env: &Env) -> Result<bool> {
    Ok(match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => eval_atom(a, env)?,
        Formula::Not(g) => !eval(g, env)?,
        Formula::And(v) => {
            for g in v {
                if !eval(g, env)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Or(v) => {
            for g in v {
                if eval(g, env)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Implies(a, b) => !eval(a, env)? || eval(b, env)?,
        Formula::Exists(..) | Formula::Forall(..) => eval(&doag_qe(f)?, env)?,
    })
}
