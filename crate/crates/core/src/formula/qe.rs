//! Quantifier elimination for divisible ordered abelian groups.
//!
//! Bounds are paired Fourier–Motzkin style after an equality, if any, has been
//! substituted away. The bound variable must occur with rational coefficients;
//! the remaining parts of each atom are treated as parameters, so products of
//! parameters are allowed.

use num_traits::{Signed, Zero};

use super::ast::{Atom, Formula, Rel};
use super::term::Term;
use crate::error::{Error, Result};
use crate::numbers::Rational;

pub fn doag_qe(f: &Formula) -> Result<Formula> {
    Ok(match f {
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(doag_qe(g)?),
        Formula::And(v) => Formula::And(v.iter().map(doag_qe).collect::<Result<_>>()?),
        Formula::Or(v) => Formula::Or(v.iter().map(doag_qe).collect::<Result<_>>()?),
        Formula::Implies(a, b) => Formula::Implies(Box::new(doag_qe(a)?), Box::new(doag_qe(b)?)),
        Formula::Exists(x, body) => eliminate(x, &nnf(&doag_qe(body)?, false))?,
        Formula::Forall(x, body) => nnf(&eliminate(x, &nnf(&doag_qe(body)?, true))?, true),
    })
}

/// Negation normal form without `not` and `->`; negated atoms are flipped.
pub fn nnf(f: &Formula, negate: bool) -> Formula {
    match (f, negate) {
        (Formula::True, false) | (Formula::False, true) => Formula::True,
        (Formula::True, true) | (Formula::False, false) => Formula::False,
        (Formula::Atom(a), false) => Formula::Atom(a.clone()),
        (Formula::Atom(a), true) => match a.rel {
            Rel::Lt => Formula::atom(a.rhs.clone(), Rel::Le, a.lhs.clone()),
            Rel::Le => Formula::atom(a.rhs.clone(), Rel::Lt, a.lhs.clone()),
            Rel::Eq => Formula::Or(vec![Formula::atom(a.lhs.clone(), Rel::Lt, a.rhs.clone()), Formula::atom(a.rhs.clone(), Rel::Lt, a.lhs.clone())]),
        },
        (Formula::Not(g), n) => nnf(g, !n),
        (Formula::And(v), false) | (Formula::Or(v), true) => Formula::and(v.iter().map(|g| nnf(g, negate)).collect()),
        (Formula::Or(v), false) | (Formula::And(v), true) => Formula::or(v.iter().map(|g| nnf(g, negate)).collect()),
        (Formula::Implies(a, b), false) => Formula::or(vec![nnf(a, true), nnf(b, false)]),
        (Formula::Implies(a, b), true) => Formula::and(vec![nnf(a, false), nnf(b, true)]),
        (Formula::Exists(x, b), false) | (Formula::Forall(x, b), true) => Formula::Exists(x.clone(), Box::new(nnf(b, negate))),
        (Formula::Forall(x, b), false) | (Formula::Exists(x, b), true) => Formula::Forall(x.clone(), Box::new(nnf(b, negate))),
    }
}

/// Disjunctive normal form of a quantifier-free formula in negation normal form.
pub fn dnf(f: &Formula) -> Vec<Vec<Atom>> {
    match f {
        Formula::True => vec![vec![]],
        Formula::False => vec![],
        Formula::Atom(a) => vec![vec![a.clone()]],
        Formula::Or(v) => v.iter().flat_map(dnf).collect(),
        Formula::And(v) => v.iter().fold(vec![vec![]], |acc, g| {
            let rhs = dnf(g);
            let mut out = Vec::new();
            for l in &acc {
                for r in &rhs {
                    let mut c = l.clone();
                    c.extend(r.iter().cloned());
                    out.push(c);
                }
            }
            out
        }),
        _ => dnf(&nnf(f, false)),
    }
}

/// Normalized atom, or its truth value when it mentions no symbol.
pub fn simplify_atom(a: &Atom) -> Formula {
    let n = a.normalized();
    match n.difference().as_constant() {
        Some(q) => {
            let s = if q.is_positive() { 1 } else if q.is_negative() { -1 } else { 0 };
            if n.rel.holds(s) {
                Formula::True
            } else {
                Formula::False
            }
        }
        None => Formula::Atom(n),
    }
}

fn conjunction(atoms: Vec<Formula>) -> Formula {
    let mut out: Vec<Formula> = Vec::new();
    for f in atoms {
        match f {
            Formula::False => return Formula::False,
            Formula::True => {}
            f if out.contains(&f) => {}
            f => out.push(f),
        }
    }
    Formula::and(out)
}

fn disjunction(parts: Vec<Formula>) -> Formula {
    let mut out: Vec<Formula> = Vec::new();
    for f in parts {
        match f {
            Formula::True => return Formula::True,
            Formula::False => {}
            f if out.contains(&f) => {}
            f => out.push(f),
        }
    }
    Formula::or(out)
}

/// `(coefficient of x, rest)` of `rhs - lhs`.
pub fn linear_part(a: &Atom, x: &str) -> Result<(Rational, Term)> {
    let d = a.difference();
    let (c, rest) = d.split_linear(x).ok_or_else(|| Error::NonlinearUnsupported(a.to_string()))?;
    let c = c.as_constant().ok_or_else(|| Error::NonlinearUnsupported(a.to_string()))?;
    Ok((c, rest))
}

/// `∃x` of a conjunction of atoms.
pub fn eliminate_conjunction(x: &str, atoms: &[Atom]) -> Result<Formula> {
    let mut kept = Vec::new();
    let mut eq: Option<Term> = None;
    let mut lowers: Vec<(Term, bool)> = Vec::new();
    let mut uppers: Vec<(Term, bool)> = Vec::new();
    let mut rest_atoms = Vec::new();
    for a in atoms {
        let (c, r) = linear_part(a, x)?;
        if c.is_zero() {
            kept.push(simplify_atom(a));
            continue;
        }
        // c*x + r REL 0 (REL from the atom's `0 REL rhs - lhs`), so x vs -r/c.
        let b = r.scale(&(-Rational::from_integer(1.into()) / &c));
        match a.rel {
            Rel::Eq if eq.is_none() => eq = Some(b),
            _ => rest_atoms.push(a.clone()),
        }
    }
    if let Some(b) = eq {
        for a in &rest_atoms {
            let s = Atom::new(a.lhs.substitute(x, &b), a.rel, a.rhs.substitute(x, &b));
            kept.push(simplify_atom(&s));
        }
        return Ok(conjunction(kept));
    }
    for a in &rest_atoms {
        let (c, r) = linear_part(a, x)?;
        let b = r.scale(&(-Rational::from_integer(1.into()) / &c));
        let strict = a.rel == Rel::Lt;
        if c.is_positive() {
            lowers.push((b, strict));
        } else {
            uppers.push((b, strict));
        }
    }
    for (l, sl) in &lowers {
        for (u, su) in &uppers {
            let rel = if *sl || *su { Rel::Lt } else { Rel::Le };
            kept.push(simplify_atom(&Atom::new(l.clone(), rel, u.clone())));
        }
    }
    Ok(conjunction(kept))
}

/// `∃x f` for quantifier-free `f`.
pub fn eliminate(x: &str, f: &Formula) -> Result<Formula> {
    let mut parts = Vec::new();
    for conj in dnf(&nnf(f, false)) {
        parts.push(eliminate_conjunction(x, &conj)?);
    }
    Ok(disjunction(parts))
}
