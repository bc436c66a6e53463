use std::fmt;

use super::term::Term;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Rel {
    Lt,
    Le,
    Eq,
}

impl Rel {
    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
        }
    }

    /// Does `sign(rhs - lhs)` satisfy the relation?
    pub fn holds(self, sign: i8) -> bool {
        match self {
            Rel::Lt => sign > 0,
            Rel::Le => sign >= 0,
            Rel::Eq => sign == 0,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Atom {
    pub lhs: Term,
    pub rel: Rel,
    pub rhs: Term,
}

impl Atom {
    pub fn new(lhs: Term, rel: Rel, rhs: Term) -> Self {
        Atom { lhs, rel, rhs }
    }

    /// `rhs - lhs`; the atom says this is `> 0`, `>= 0` or `= 0`.
    pub fn difference(&self) -> Term {
        self.rhs.sub(&self.lhs)
    }

    pub fn symbols(&self) -> Vec<String> {
        let mut s = self.lhs.symbols();
        s.extend(self.rhs.symbols());
        s.sort();
        s.dedup();
        s
    }

    /// Normal form `neg rel pos` with integer coefficients and no common factor.
    pub fn normalized(&self) -> Atom {
        let mut d = self.difference().primitive();
        if self.rel == Rel::Eq && d.leading_coefficient().is_some_and(num_traits::Signed::is_negative) {
            d = d.neg();
        }
        let (pos, neg) = d.sign_split();
        Atom::new(neg, self.rel, pos)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.rel.symbol(), self.rhs)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn atom(lhs: Term, rel: Rel, rhs: Term) -> Self {
        Formula::Atom(Atom::new(lhs, rel, rhs))
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    /// Flattening conjunction; the empty conjunction is `true`.
    pub fn and(parts: Vec<Formula>) -> Self {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::And(xs) => out.extend(xs),
                Formula::True => {}
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::True,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    /// Flattening disjunction; the empty disjunction is `false`.
    pub fn or(parts: Vec<Formula>) -> Self {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::Or(xs) => out.extend(xs),
                Formula::False => {}
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::False,
            1 => out.pop().unwrap(),
            _ => Formula::Or(out),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(v) | Formula::Or(v) => v.iter().all(|f| f.is_quantifier_free()),
            Formula::Implies(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Formula::Atom(a) => out.push(a),
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.collect_atoms(out),
            Formula::And(v) | Formula::Or(v) => v.iter().for_each(|f| f.collect_atoms(out)),
            Formula::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::True | Formula::False => {}
        }
    }

    /// Is every term a group-language term (degree one, no constants)?
    pub fn is_group_fragment(&self) -> bool {
        self.atoms().iter().all(|a| a.lhs.is_group_term() && a.rhs.is_group_term())
    }

    /// Free symbols (bound variables excluded), sorted.
    pub fn free_symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            Formula::Atom(a) => out.extend(a.symbols().into_iter().filter(|s| !bound.contains(s))),
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(v) | Formula::Or(v) => v.iter().for_each(|f| f.collect_free(bound, out)),
            Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(x, f) | Formula::Forall(x, f) => {
                bound.push(x.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
            Formula::True | Formula::False => {}
        }
    }

    pub fn mentions(&self, v: &str) -> bool {
        self.free_symbols().iter().any(|s| s == v)
    }

    fn prec(&self) -> u8 {
        match self {
            Formula::Implies(..) => 0,
            Formula::Or(_) => 1,
            Formula::And(_) => 2,
            _ => 3,
        }
    }
}

fn wrap(f: &Formula, min: u8) -> String {
    if f.prec() < min {
        format!("({f})")
    } else {
        f.to_string()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(x) => write!(f, "not {}", wrap(x, 3)),
            Formula::And(v) => write!(f, "{}", v.iter().map(|x| wrap(x, 3)).collect::<Vec<_>>().join(" and ")),
            Formula::Or(v) => write!(f, "{}", v.iter().map(|x| wrap(x, 2)).collect::<Vec<_>>().join(" or ")),
            Formula::Implies(a, b) => write!(f, "{} -> {}", wrap(a, 1), wrap(b, 0)),
            Formula::Exists(x, b) => write!(f, "exists {x} ({b})"),
            Formula::Forall(x, b) => write!(f, "forall {x} ({b})"),
        }
    }
}
