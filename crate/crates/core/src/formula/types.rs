//! Partial types and type files.
//!
//! A partial type is presented by a generator `i ↦ Option<Formula>`; `None`
//! means nothing is emitted at step `i`. Type files have one construct per
//! line (blank lines and `#` comments are skipped):
//!
//! ```text
//! var x                       # the realized variable, default `x`
//! param <name> = <series>     # a parameter and its value in the model
//! formula <formula>           # one formula of the type
//! generator <name> <args...>  # a built-in computable family
//! target <series>             # the type of this element over the parameters
//! ```
//!
//! A `target` line adds the family comparing `x` with the rational
//! combinations of the parameters, taken by increasing height, and the
//! realization then reads the cut off the target itself.
//!
//! Built-in families, with `n = 1, 2, ...`:
//!
//! ```text
//! beta g h      n*h < x  and  n*x < g   interleaved (for v(g) < v(h): a value strictly between)
//! delta g       0 < x, then n*x < g     (x positive and infinitesimal against g)
//! above g       n*g < x                 (x infinitely larger than g)
//! below g       x < -n*g                (x negative, infinitely larger than g in size)
//! pseudo_sum    s_n < x  and  x < s_n + 2*t^(1-1/(n+1))  interleaved,
//!               s_n = t^(0) + t^(1/2) + ... + t^(1-1/n)
//! ```

use std::fmt;
use std::sync::Arc;

use super::ast::{Formula, Rel};
use super::parse::{parse_formula, t_symbol};
use super::term::Term;
use crate::error::{Error, Result};
use crate::hahn::{parse_series, HahnSeries};
use crate::hahn::compare_series;
use crate::numbers::rational::{height, int, rat, rationals_of_height, Rational};
use num_traits::Zero;

type Generator = Arc<dyn Fn(usize) -> Option<Formula> + Send + Sync>;

#[derive(Clone)]
pub struct PartialType {
    pub var: String,
    pub params: Vec<String>,
    explicit: Vec<Formula>,
    families: Vec<(String, Generator)>,
}

impl fmt::Debug for PartialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartialType")
            .field("var", &self.var)
            .field("params", &self.params)
            .field("explicit", &self.explicit.iter().map(|g| g.to_string()).collect::<Vec<_>>())
            .field("families", &self.families.iter().map(|(n, _)| n).collect::<Vec<_>>())
            .finish()
    }
}

impl PartialType {
    pub fn new(var: &str, params: &[&str]) -> Self {
        PartialType { var: var.to_string(), params: params.iter().map(|s| s.to_string()).collect(), explicit: Vec::new(), families: Vec::new() }
    }

    pub fn from_formulas(var: &str, params: &[&str], formulas: Vec<Formula>) -> Self {
        let mut t = Self::new(var, params);
        t.explicit = formulas;
        t
    }

    pub fn push_formula(&mut self, f: Formula) {
        self.explicit.push(f);
    }

    pub fn push_family(&mut self, name: &str, g: impl Fn(usize) -> Option<Formula> + Send + Sync + 'static) {
        self.families.push((name.to_string(), Arc::new(g)));
    }

    pub fn family_names(&self) -> Vec<&str> {
        self.families.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.families.is_empty()
    }

    /// Explicit formulas first, then the families round-robin.
    pub fn emit(&self, i: usize) -> Option<Formula> {
        if i < self.explicit.len() {
            return Some(self.explicit[i].clone());
        }
        if self.families.is_empty() {
            return None;
        }
        let j = i - self.explicit.len();
        let (name_gen, k) = (&self.families[j % self.families.len()], j / self.families.len());
        (name_gen.1)(k)
    }

    /// Formulas emitted at steps `0..k`.
    pub fn prefix(&self, k: usize) -> Vec<Formula> {
        (0..k).filter_map(|i| self.emit(i)).collect()
    }

    /// Every emitted formula in the prefix mentions only the variable and parameters.
    pub fn check_prefix(&self, k: usize) -> Result<()> {
        for f in self.prefix(k) {
            for s in f.free_symbols() {
                if s != self.var && !self.params.contains(&s) && !s.starts_with("t^(") {
                    return Err(Error::Unsupported(format!("formula `{f}` mentions `{s}`, which is neither the variable nor a parameter")));
                }
            }
        }
        Ok(())
    }

    /// A copy with extra explicit formulas appended before the families.
    pub fn extended(&self, extra: &[Formula]) -> Self {
        let mut t = self.clone();
        t.explicit.extend(extra.iter().cloned());
        t
    }
}

fn n_times(n: usize, t: &Term) -> Term {
    t.scale(&int(n as i64))
}

/// A built-in family by name.
pub fn builtin_family(name: &str, args: &[&str], var: &str) -> Result<Generator> {
    let x = Term::var(var);
    let need = |k: usize| -> Result<()> {
        if args.len() == k {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("generator `{name}` takes {k} argument(s), got {}", args.len())))
        }
    };
    let g: Generator = match name {
        "beta" => {
            need(2)?;
            let (g, h) = (Term::var(args[0]), Term::var(args[1]));
            Arc::new(move |i| {
                let n = i / 2 + 1;
                Some(if i % 2 == 0 { Formula::atom(n_times(n, &h), Rel::Lt, x.clone()) } else { Formula::atom(n_times(n, &x), Rel::Lt, g.clone()) })
            })
        }
        "delta" => {
            need(1)?;
            let g = Term::var(args[0]);
            Arc::new(move |i| Some(if i == 0 { Formula::atom(Term::zero(), Rel::Lt, x.clone()) } else { Formula::atom(n_times(i, &x), Rel::Lt, g.clone()) }))
        }
        "above" => {
            need(1)?;
            let g = Term::var(args[0]);
            Arc::new(move |i| Some(Formula::atom(n_times(i + 1, &g), Rel::Lt, x.clone())))
        }
        "below" => {
            need(1)?;
            let g = Term::var(args[0]);
            Arc::new(move |i| Some(Formula::atom(x.clone(), Rel::Lt, n_times(i + 1, &g).neg())))
        }
        "pseudo_sum" => {
            need(0)?;
            Arc::new(move |i| {
                let n = i / 2 + 1;
                let s = pseudo_partial_sum(n);
                Some(if i % 2 == 0 {
                    Formula::atom(s, Rel::Lt, x.clone())
                } else {
                    let next = Term::var(&t_symbol(&[int(1) - rat(1, n as i64 + 1)])).scale(&int(2));
                    Formula::atom(x.clone(), Rel::Lt, s.add(&next))
                })
            })
        }
        other => return Err(Error::Unsupported(format!("unknown generator `{other}`"))),
    };
    Ok(g)
}

/// `Σ_{m=1..n} t^(1-1/m)` as a term.
pub fn pseudo_partial_sum(n: usize) -> Term {
    (1..=n).fold(Term::zero(), |acc, m| acc.add(&Term::var(&t_symbol(&[int(1) - rat(1, m as i64)]))))
}

/// The first `count` coefficient vectors of length `k`: zero, then by
/// increasing height, ascending within a height.
pub fn combinations_by_height(count: usize, k: usize) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![Rational::zero(); k]];
    let mut h = 1u64;
    while out.len() < count && k > 0 {
        let qs = rationals_of_height(h);
        let mut v = vec![0usize; k];
        loop {
            let c: Vec<Rational> = v.iter().map(|&j| qs[j].clone()).collect();
            if c.iter().any(|q| !q.is_zero() && height(q) == num_bigint::BigInt::from(h)) {
                out.push(c);
            }
            let mut j = k;
            while j > 0 && v[j - 1] + 1 == qs.len() {
                v[j - 1] = 0;
                j -= 1;
            }
            if j == 0 {
                break;
            }
            v[j - 1] += 1;
        }
        h += 1;
    }
    out.truncate(count);
    out
}

/// `x` against the `i`-th combination of the parameters, as `target` places it.
fn target_family(var: &str, params: &[(String, HahnSeries)], target: &HahnSeries) -> Generator {
    let (x, params, target) = (Term::var(var), params.to_vec(), target.clone());
    let dim = target.dim();
    Arc::new(move |i| {
        let c = combinations_by_height(i + 1, params.len()).pop().filter(|_| i == 0 || !params.is_empty())?;
        let mut d = Term::zero();
        let mut value = HahnSeries::zero(dim);
        for (q, (name, v)) in c.iter().zip(&params) {
            d = d.add(&Term::var(name).scale(q));
            value = value.add(&v.scale_rational(q));
        }
        let rel = compare_series(&target, &value).ok()?;
        Some(match rel {
            std::cmp::Ordering::Greater => Formula::atom(d, Rel::Lt, x.clone()),
            std::cmp::Ordering::Less => Formula::atom(x.clone(), Rel::Lt, d),
            std::cmp::Ordering::Equal => Formula::atom(x.clone(), Rel::Eq, d),
        })
    })
}

/// A parsed type file: the type, its parameter values, and the target if one was given.
#[derive(Clone, Debug)]
pub struct TypeFile {
    pub ty: PartialType,
    pub params: Vec<(String, HahnSeries)>,
    pub target: Option<HahnSeries>,
}

impl TypeFile {
    pub fn param_values(&self) -> Vec<HahnSeries> {
        self.params.iter().map(|(_, v)| v.clone()).collect()
    }
}

fn line_error(line: usize, e: Error) -> Error {
    match e {
        Error::Syntax { column, message } => Error::Syntax { column, message: format!("line {line}: {message}") },
        other => other,
    }
}

pub fn parse_type_file(text: &str, dim: usize) -> Result<TypeFile> {
    let mut var = "x".to_string();
    let mut params: Vec<(String, HahnSeries)> = Vec::new();
    let mut formulas = Vec::new();
    let mut families: Vec<(String, Vec<String>)> = Vec::new();
    let mut target = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let err = |m: String| Error::Syntax { column: 1, message: format!("line {}: {m}", ln + 1) };
        match kw {
            "var" => var = rest.to_string(),
            "param" => {
                let (name, value) = rest.split_once('=').ok_or_else(|| err("expected `param <name> = <series>`".into()))?;
                let name = name.trim();
                if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return Err(err(format!("bad parameter name `{name}`")));
                }
                params.push((name.to_string(), parse_series(value.trim(), dim).map_err(|e| line_error(ln + 1, e))?));
            }
            "formula" => formulas.push(parse_formula(rest).map_err(|e| line_error(ln + 1, e))?),
            "generator" => {
                let mut words = rest.split_whitespace();
                let name = words.next().ok_or_else(|| err("expected a generator name".into()))?;
                families.push((name.to_string(), words.map(str::to_string).collect()));
            }
            "target" => {
                if target.is_some() {
                    return Err(err("a second `target`".into()));
                }
                target = Some(parse_series(rest, dim).map_err(|e| line_error(ln + 1, e))?);
            }
            other => return Err(err(format!("unknown construct `{other}`"))),
        }
    }
    let names: Vec<&str> = params.iter().map(|(n, _)| n.as_str()).collect();
    let mut ty = PartialType::from_formulas(&var, &names, formulas);
    for (name, args) in &families {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        for a in &args {
            if !names.contains(a) {
                return Err(Error::Unsupported(format!("generator `{name}` refers to unknown parameter `{a}`")));
            }
        }
        let g = builtin_family(name, &args, &var)?;
        ty.families.push((format!("{name} {}", args.join(" ")).trim().to_string(), g));
    }
    if let Some(t) = &target {
        ty.families.push(("target".into(), target_family(&var, &params, t)));
    }
    Ok(TypeFile { ty, params, target })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_family_interleaves() {
        let tf = parse_type_file("param g = t\nparam h = t^2\ngenerator beta g h\n", 1).unwrap();
        let p: Vec<String> = tf.ty.prefix(4).iter().map(|f| f.to_string()).collect();
        assert_eq!(p, ["h < x", "x < g", "2*h < x", "2*x < g"]);
        assert!(tf.ty.check_prefix(20).is_ok());
    }

    #[test]
    fn combinations_in_height_order() {
        let c = combinations_by_height(6, 1);
        assert_eq!(c, [[int(0)], [int(-1)], [int(1)], [int(-2)], [rat(-1, 2)], [rat(1, 2)]]);
        assert_eq!(combinations_by_height(10, 0).len(), 1);
        let two = combinations_by_height(9, 2);
        assert_eq!(two.len(), 9);
        assert!(two[1..].iter().all(|v| v.iter().all(|q| height(q) <= num_bigint::BigInt::from(1))));
    }

    #[test]
    fn target_places_the_combinations() {
        let tf = parse_type_file("param g = t\ntarget alg[-2,0,1;1,2]*t\n", 1).unwrap();
        assert!(tf.target.is_some());
        let p: Vec<String> = tf.ty.prefix(5).iter().map(|f| f.to_string()).collect();
        assert_eq!(p, ["0 < x", "-g < x", "g < x", "-2*g < x", "-1/2*g < x"]);
    }

    #[test]
    fn explicit_formulas_come_first() {
        let tf = parse_type_file("# demo\nparam g = t^-1\nformula 0 < x\ngenerator above g\n", 1).unwrap();
        let p: Vec<String> = tf.ty.prefix(3).iter().map(|f| f.to_string()).collect();
        assert_eq!(p, ["0 < x", "g < x", "2*g < x"]);
    }

    #[test]
    fn pseudo_sum_family() {
        let g = builtin_family("pseudo_sum", &[], "x").unwrap();
        assert_eq!(g(0).unwrap().to_string(), "t^(0) < x");
        assert_eq!(g(3).unwrap().to_string(), "x < t^(0) + t^(1/2) + 2*t^(2/3)");
    }

    #[test]
    fn file_errors() {
        assert!(matches!(parse_type_file("param g t\n", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse_type_file("formula x <\n", 1), Err(Error::Syntax { column: 4, .. })));
        assert!(parse_type_file("generator beta g h\n", 1).is_err());
        assert!(parse_type_file("bogus\n", 1).is_err());
        let t = PartialType::from_formulas("x", &[], vec![parse_formula("x < y").unwrap()]);
        assert!(t.check_prefix(1).is_err());
    }
}
