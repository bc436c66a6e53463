//! One-variable constraint sets as cuts.
//!
//! Each atom must be linear in the variable, with a coefficient that is a
//! rational or evaluates to a single monomial, so the bound it imposes is an
//! exact series. `not a = b` survives as an excluded point.

use std::cmp::Ordering;

use super::ast::{Atom, Formula, Rel};
use super::eval::{eval_term, Env};
use super::qe::linear_part;
use crate::error::{Error, Result};
use crate::hahn::{compare_series_with, Exponent, HahnSeries};

#[derive(Clone, Debug, PartialEq)]
pub struct Bound {
    pub value: HahnSeries,
    pub strict: bool,
}

/// Tightest bounds implied by a conjunction; `point` when the value is forced.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CutBounds {
    pub lower: Option<Bound>,
    pub upper: Option<Bound>,
    pub point: Option<HahnSeries>,
    pub excluded: Vec<HahnSeries>,
}

#[derive(Clone, Debug)]
enum Lit {
    Atom(Atom),
    NotEq(Atom),
}

/// What one atom says about `x`; `Free` when `x` does not occur.
enum Imposed {
    Free(bool),
    Lower(HahnSeries, bool),
    Upper(HahnSeries, bool),
    Point(HahnSeries),
}

fn impose(a: &Atom, x: &str, env: &Env) -> Result<Imposed> {
    let (c, rest) = match linear_part(a, x) {
        Ok(p) => p,
        Err(_) => {
            // coefficient may be a parameter term
            let d = a.difference();
            let (c, rest) = d.split_linear(x).ok_or_else(|| Error::NonlinearUnsupported(a.to_string()))?;
            if c.symbols().iter().any(|s| s == x) {
                return Err(Error::NonlinearUnsupported(a.to_string()));
            }
            return impose_series(a.rel, &eval_term(&c, env)?, &eval_term(&rest, env)?, env, a);
        }
    };
    let cs = HahnSeries::rational(env.dim, c);
    impose_series(a.rel, &cs, &eval_term(&rest, env)?, env, a)
}

fn impose_series(rel: Rel, c: &HahnSeries, r: &HahnSeries, env: &Env, a: &Atom) -> Result<Imposed> {
    let sc = c.sign(env.budget)?;
    if sc == 0 {
        return Ok(Imposed::Free(rel.holds(r.sign(env.budget)?)));
    }
    if c.terms().len() != 1 {
        return Err(Error::NonlinearUnsupported(format!("coefficient of the variable in `{a}` is not a monomial")));
    }
    let b = r.neg().mul(&c.invert(&Exponent::zero(env.dim))?);
    Ok(match (rel, sc > 0) {
        (Rel::Eq, _) => Imposed::Point(b),
        (rel, true) => Imposed::Lower(b, rel == Rel::Lt),
        (rel, false) => Imposed::Upper(b, rel == Rel::Lt),
    })
}

impl CutBounds {
    fn cmp(a: &HahnSeries, b: &HahnSeries, env: &Env) -> Result<Ordering> {
        compare_series_with(a, b, env.budget)
    }

    /// Does `v` satisfy the bounds (ignoring `point`)?
    fn admits(&self, v: &HahnSeries, env: &Env) -> Result<bool> {
        if let Some(l) = &self.lower {
            match Self::cmp(&l.value, v, env)? {
                Ordering::Greater => return Ok(false),
                Ordering::Equal if l.strict => return Ok(false),
                _ => {}
            }
        }
        if let Some(u) = &self.upper {
            match Self::cmp(v, &u.value, env)? {
                Ordering::Greater => return Ok(false),
                Ordering::Equal if u.strict => return Ok(false),
                _ => {}
            }
        }
        for e in &self.excluded {
            if Self::cmp(e, v, env)? == Ordering::Equal {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Is there a model point satisfying everything recorded?
    pub fn is_satisfiable(&self, env: &Env) -> Result<bool> {
        if let Some(p) = &self.point {
            return self.admits(p, env);
        }
        match (&self.lower, &self.upper) {
            (Some(l), Some(u)) => match Self::cmp(&l.value, &u.value, env)? {
                Ordering::Less => Ok(true),
                Ordering::Equal if !l.strict && !u.strict => self.admits(&l.value, env),
                _ => Ok(false),
            },
            _ => Ok(true),
        }
    }

    fn tighten(mut self, lit: &Lit, x: &str, env: &Env) -> Result<Option<CutBounds>> {
        let imposed = match lit {
            Lit::Atom(a) => impose(a, x, env)?,
            Lit::NotEq(a) => match impose(a, x, env)? {
                Imposed::Point(p) => {
                    self.excluded.push(p);
                    return Ok(self.is_satisfiable(env)?.then_some(self));
                }
                Imposed::Free(ok) => Imposed::Free(!ok),
                _ => unreachable!("equality atoms impose points"),
            },
        };
        match imposed {
            Imposed::Free(true) => {}
            Imposed::Free(false) => return Ok(None),
            Imposed::Point(p) => {
                if let Some(q) = &self.point {
                    if Self::cmp(q, &p, env)? != Ordering::Equal {
                        return Ok(None);
                    }
                }
                self.point = Some(p);
            }
            Imposed::Lower(v, strict) => {
                let replace = match &self.lower {
                    None => true,
                    Some(l) => match Self::cmp(&v, &l.value, env)? {
                        Ordering::Greater => true,
                        Ordering::Equal => strict && !l.strict,
                        Ordering::Less => false,
                    },
                };
                if replace {
                    self.lower = Some(Bound { value: v, strict });
                }
            }
            Imposed::Upper(v, strict) => {
                let replace = match &self.upper {
                    None => true,
                    Some(u) => match Self::cmp(&v, &u.value, env)? {
                        Ordering::Less => true,
                        Ordering::Equal => strict && !u.strict,
                        Ordering::Greater => false,
                    },
                };
                if replace {
                    self.upper = Some(Bound { value: v, strict });
                }
            }
        }
        Ok(self.is_satisfiable(env)?.then_some(self))
    }

    /// A deterministic point satisfying the bounds, if any.
    pub fn sample(&self, env: &Env) -> Result<Option<HahnSeries>> {
        if !self.is_satisfiable(env)? {
            return Ok(None);
        }
        if let Some(p) = &self.point {
            return Ok(Some(p.clone()));
        }
        let one = HahnSeries::one(env.dim);
        let mut cand = match (&self.lower, &self.upper) {
            (Some(l), Some(u)) if Self::cmp(&l.value, &u.value, env)? == Ordering::Equal => return Ok(Some(l.value.clone())),
            (Some(l), Some(u)) => l.value.add(&u.value).scale_rational(&crate::numbers::rational::rat(1, 2)),
            (Some(l), None) => l.value.add(&one),
            (None, Some(u)) => u.value.sub(&one),
            (None, None) => HahnSeries::zero(env.dim),
        };
        // Finitely many exclusions: move towards a bound until clear of them.
        for _ in 0..=self.excluded.len() {
            if self.admits(&cand, env)? {
                return Ok(Some(cand));
            }
            cand = match (&self.lower, &self.upper) {
                (Some(l), _) => l.value.add(&cand).scale_rational(&crate::numbers::rational::rat(1, 2)),
                (None, _) => cand.sub(&one),
            };
        }
        Ok(None)
    }
}

fn literal_dnf(f: &Formula, neg: bool) -> Vec<Vec<Lit>> {
    let product = |parts: Vec<Vec<Vec<Lit>>>| {
        parts.into_iter().fold(vec![vec![]], |acc: Vec<Vec<Lit>>, rhs| {
            let mut out = Vec::new();
            for l in &acc {
                for r in &rhs {
                    let mut c = l.clone();
                    c.extend(r.iter().cloned());
                    out.push(c);
                }
            }
            out
        })
    };
    match (f, neg) {
        (Formula::True, false) | (Formula::False, true) => vec![vec![]],
        (Formula::True, true) | (Formula::False, false) => vec![],
        (Formula::Atom(a), false) => vec![vec![Lit::Atom(a.clone())]],
        (Formula::Atom(a), true) => match a.rel {
            Rel::Lt => vec![vec![Lit::Atom(Atom::new(a.rhs.clone(), Rel::Le, a.lhs.clone()))]],
            Rel::Le => vec![vec![Lit::Atom(Atom::new(a.rhs.clone(), Rel::Lt, a.lhs.clone()))]],
            Rel::Eq => vec![vec![Lit::NotEq(a.clone())]],
        },
        (Formula::Not(g), n) => literal_dnf(g, !n),
        (Formula::And(v), false) | (Formula::Or(v), true) => product(v.iter().map(|g| literal_dnf(g, neg)).collect()),
        (Formula::Or(v), false) | (Formula::And(v), true) => v.iter().flat_map(|g| literal_dnf(g, neg)).collect(),
        (Formula::Implies(a, b), false) => {
            let mut out = literal_dnf(a, true);
            out.extend(literal_dnf(b, false));
            out
        }
        (Formula::Implies(a, b), true) => product(vec![literal_dnf(a, false), literal_dnf(b, true)]),
        (Formula::Exists(..) | Formula::Forall(..), _) => unreachable!("quantifiers are eliminated before literal extraction"),
    }
}

/// Bounds on `x` implied by a conjunction of quantifier-free constraints.
///
/// Each constraint must reduce to a single conjunction of literals; use
/// [`satisfying_cut`] for constraints with disjunctions.
pub fn cut_bounds(constraints: &[Formula], x: &str, env: &Env) -> Result<CutBounds> {
    let mut acc = CutBounds::default();
    for f in constraints {
        if !f.is_quantifier_free() {
            return Err(Error::Unsupported(format!("quantified constraint `{f}`")));
        }
        let mut branches = literal_dnf(f, false);
        match branches.len() {
            0 => return Err(Error::Unsatisfiable),
            1 => {
                for lit in branches.pop().unwrap() {
                    acc = acc.tighten(&lit, x, env)?.ok_or(Error::Unsatisfiable)?;
                }
            }
            _ => return Err(Error::Unsupported(format!("disjunctive constraint `{f}`"))),
        }
    }
    Ok(acc)
}

/// The leftmost satisfiable branch of the constraints' disjunctive normal
/// form, found by backtracking; `None` when the set is unsatisfiable.
pub fn satisfying_cut(constraints: &[Formula], x: &str, env: &Env) -> Result<Option<CutBounds>> {
    let mut branches = Vec::with_capacity(constraints.len());
    for f in constraints {
        if !f.is_quantifier_free() {
            let g = super::qe::doag_qe(f)?;
            branches.push(literal_dnf(&g, false));
        } else {
            branches.push(literal_dnf(f, false));
        }
    }
    search(&branches, 0, CutBounds::default(), x, env)
}

fn search(branches: &[Vec<Vec<Lit>>], i: usize, acc: CutBounds, x: &str, env: &Env) -> Result<Option<CutBounds>> {
    if i == branches.len() {
        return Ok(Some(acc));
    }
    'outer: for conj in &branches[i] {
        let mut cur = acc.clone();
        for lit in conj {
            match cur.tighten(lit, x, env)? {
                Some(c) => cur = c,
                None => continue 'outer,
            }
        }
        if let Some(found) = search(branches, i + 1, cur, x, env)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

pub fn is_satisfiable(constraints: &[Formula], x: &str, env: &Env) -> Result<bool> {
    Ok(satisfying_cut(constraints, x, env)?.is_some())
}
