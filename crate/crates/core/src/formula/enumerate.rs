//! Effective enumeration of canonical quantifier-free formulas.
//!
//! Formulas are listed length-lexicographically by their canonical print.
//! The strings of each exact length are generated from the print grammar, so
//! every canonical formula over the signature appears exactly once.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;

use super::ast::Formula;
use super::parse::parse_formula;
use super::term::Monomial;

/// Longest print `index` will materialize: levels grow roughly tenfold per
/// character in the group language and fifteenfold in the ring language.
pub const MAX_INDEX_LENGTH_GROUP: usize = 11;
pub const MAX_INDEX_LENGTH_FIELD: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Signature {
    /// Ring language (products and constants) rather than the group language.
    pub field: bool,
    pub symbols: Vec<String>,
}

impl Signature {
    pub fn group(symbols: &[&str]) -> Self {
        Signature { field: false, symbols: symbols.iter().map(|s| s.to_string()).collect() }
    }

    pub fn field(symbols: &[&str]) -> Self {
        Signature { field: true, symbols: symbols.iter().map(|s| s.to_string()).collect() }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Cat {
    Term,
    Unit,
    And,
    Or,
    Implies,
}

/// Cached generator for one signature.
pub struct Enumerator {
    sig: Signature,
    monos: Vec<(Monomial, String)>,
    monos_upto: usize,
    cache: HashMap<(Cat, usize), Arc<Vec<String>>>,
    /// Sorted formulas of each length, filled in order.
    by_length: Vec<Arc<Vec<String>>>,
}

impl Enumerator {
    pub fn new(sig: Signature) -> Self {
        Enumerator { sig, monos: Vec::new(), monos_upto: 0, cache: HashMap::new(), by_length: vec![Arc::new(Vec::new())] }
    }

    /// Make `monos` hold every allowed monomial whose print has at most `len` chars.
    fn extend_monos(&mut self, len: usize) {
        if len <= self.monos_upto {
            return;
        }
        self.monos_upto = len;
        let mut all: Vec<Monomial> = self.sig.symbols.iter().map(|s| Monomial::var(s)).filter(|m| m.to_string().len() <= len).collect();
        if self.sig.field {
            let mut seen: BTreeSet<Monomial> = all.iter().cloned().collect();
            let mut frontier = all.clone();
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for m in &frontier {
                    for s in &self.sig.symbols {
                        let p = m.mul(&Monomial::var(s));
                        if p.to_string().len() <= len && seen.insert(p.clone()) {
                            next.push(p);
                        }
                    }
                }
                all.extend(next.iter().cloned());
                frontier = next;
            }
            all.push(Monomial::one());
        }
        all.sort();
        self.monos = all.into_iter().map(|m| {
            let s = m.to_string();
            (m, s)
        }).collect();
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    fn get(&mut self, cat: Cat, len: usize) -> Arc<Vec<String>> {
        if let Some(v) = self.cache.get(&(cat, len)) {
            return v.clone();
        }
        let v = Arc::new(match cat {
            Cat::Term => self.terms(len),
            Cat::Unit => self.units(len),
            Cat::And => self.binary(len, " and ", &[Cat::Unit], Cat::And),
            Cat::Or => self.binary(len, " or ", &[Cat::Unit, Cat::And], Cat::Or),
            Cat::Implies => self.implications(len),
        });
        self.cache.insert((cat, len), v.clone());
        v
    }

    /// Formulas of category `cats` (bare) or any other category in parentheses.
    fn wrapped(&mut self, len: usize, bare: &[Cat]) -> Vec<String> {
        let mut out = Vec::new();
        for c in [Cat::Unit, Cat::And, Cat::Or, Cat::Implies] {
            if bare.contains(&c) {
                out.extend(self.get(c, len).iter().cloned());
            } else if len >= 2 {
                out.extend(self.get(c, len - 2).iter().map(|s| format!("({s})")));
            }
        }
        out
    }

    fn binary(&mut self, len: usize, op: &str, bare: &[Cat], this: Cat) -> Vec<String> {
        let mut out = Vec::new();
        if len < op.len() + 2 {
            return out;
        }
        for l1 in 1..len - op.len() {
            let l2 = len - op.len() - l1;
            let left = self.wrapped(l1, bare);
            if left.is_empty() {
                continue;
            }
            let mut right = self.wrapped(l2, bare);
            right.extend(self.get(this, l2).iter().cloned());
            for a in &left {
                for b in &right {
                    out.push(format!("{a}{op}{b}"));
                }
            }
        }
        out
    }

    fn implications(&mut self, len: usize) -> Vec<String> {
        let op = " -> ";
        let mut out = Vec::new();
        if len < op.len() + 2 {
            return out;
        }
        for l1 in 1..len - op.len() {
            let l2 = len - op.len() - l1;
            let left = self.wrapped(l1, &[Cat::Unit, Cat::And, Cat::Or]);
            if left.is_empty() {
                continue;
            }
            let right = self.wrapped(l2, &[Cat::Unit, Cat::And, Cat::Or, Cat::Implies]);
            for a in &left {
                for b in &right {
                    out.push(format!("{a}{op}{b}"));
                }
            }
        }
        out
    }

    fn units(&mut self, len: usize) -> Vec<String> {
        let mut out = Vec::new();
        if len == 4 {
            out.push("true".to_string());
        }
        if len == 5 {
            out.push("false".to_string());
        }
        for rel in [" < ", " <= ", " = "] {
            if len < rel.len() + 2 {
                continue;
            }
            for l1 in 1..len - rel.len() {
                let lhs = self.get(Cat::Term, l1);
                let rhs = self.get(Cat::Term, len - rel.len() - l1);
                for a in lhs.iter() {
                    for b in rhs.iter() {
                        out.push(format!("{a}{rel}{b}"));
                    }
                }
            }
        }
        if len > 4 {
            out.extend(self.wrapped(len - 4, &[Cat::Unit]).into_iter().map(|s| format!("not {s}")));
        }
        out
    }

    fn terms(&self, len: usize) -> Vec<String> {
        let mut out = Vec::new();
        if len == 1 {
            out.push("0".to_string());
        }
        self.term_suffixes(0, len, true, &mut String::new(), &mut out);
        out
    }

    /// Items with monomials from index `from` on, in canonical order, printing to exactly `len` chars.
    fn term_suffixes(&self, from: usize, len: usize, first: bool, prefix: &mut String, out: &mut Vec<String>) {
        if len == 0 {
            if !first {
                out.push(prefix.clone());
            }
            return;
        }
        for i in from..self.monos.len() {
            let (m, ms) = &self.monos[i];
            for neg in [false, true] {
                let sep = match (first, neg) {
                    (true, false) => "",
                    (true, true) => "-",
                    (false, false) => " + ",
                    (false, true) => " - ",
                };
                if sep.len() >= len {
                    continue;
                }
                let room = len - sep.len();
                for body in item_bodies(m, ms, room) {
                    let rest = room - body.len();
                    let keep = prefix.len();
                    prefix.push_str(sep);
                    prefix.push_str(&body);
                    self.term_suffixes(i + 1, rest, false, prefix, out);
                    prefix.truncate(keep);
                }
            }
        }
    }

    fn ensure_length(&mut self, len: usize) {
        while self.by_length.len() <= len {
            let l = self.by_length.len();
            // A term inside a formula of length l has at most l - 4 chars.
            self.extend_monos(l.saturating_sub(4));
            let mut all = Vec::new();
            for c in [Cat::Unit, Cat::And, Cat::Or, Cat::Implies] {
                all.extend(self.get(c, l).iter().cloned());
            }
            all.sort();
            self.by_length.push(Arc::new(all));
        }
    }

    /// The `i`-th canonical formula.
    pub fn nth(&mut self, mut i: usize) -> Formula {
        let mut len = 1;
        loop {
            self.ensure_length(len);
            let level = self.by_length[len].clone();
            if i < level.len() {
                return parse_formula(&level[i]).expect("generated prints parse");
            }
            i -= level.len();
            len += 1;
        }
    }

    pub fn index_limit(&self) -> usize {
        if self.sig.field {
            MAX_INDEX_LENGTH_FIELD
        } else {
            MAX_INDEX_LENGTH_GROUP
        }
    }

    /// Position of a canonical formula of this signature, if its print is
    /// within `index_limit` characters.
    pub fn index(&mut self, f: &Formula) -> Option<usize> {
        let s = f.to_string();
        let len = s.chars().count();
        if len > self.index_limit() || !f.is_quantifier_free() {
            return None;
        }
        self.ensure_length(len);
        let pos = self.by_length[len].binary_search(&s).ok()?;
        Some(self.by_length[..len].iter().map(|v| v.len()).sum::<usize>() + pos)
    }

    /// The first `k` formulas.
    pub fn prefix(&mut self, k: usize) -> Vec<Formula> {
        let mut out = Vec::with_capacity(k);
        let mut len = 1;
        while out.len() < k {
            self.ensure_length(len);
            for s in self.by_length[len].iter().take(k - out.len()) {
                out.push(parse_formula(s).expect("generated prints parse"));
            }
            len += 1;
        }
        out
    }
}

/// Printed item bodies `|q|*m` of exactly `room` chars.
fn item_bodies(m: &Monomial, ms: &str, room: usize) -> Vec<String> {
    let mut out = Vec::new();
    if m.is_one() {
        for q in positive_rationals_of_length(room) {
            out.push(q);
        }
        return out;
    }
    if ms.len() == room {
        out.push(ms.to_string());
    }
    if room > ms.len() + 1 {
        for q in positive_rationals_of_length(room - ms.len() - 1) {
            if q != "1" {
                out.push(format!("{q}*{ms}"));
            }
        }
    }
    out
}

/// Prints of positive rationals in lowest terms with exactly `len` chars.
fn positive_rationals_of_length(len: usize) -> Vec<String> {
    let mut out = Vec::new();
    let ints_of = |k: usize| -> (u64, u64) { (if k == 1 { 1 } else { 10u64.pow(k as u32 - 1) }, 10u64.pow(k as u32)) };
    if len == 0 || len > 9 {
        return out;
    }
    let (lo, hi) = ints_of(len);
    out.extend((lo..hi).map(|n| n.to_string()));
    for lp in 1..len.saturating_sub(1) {
        let lq = len - 1 - lp;
        let (plo, phi) = ints_of(lp);
        let (qlo, qhi) = ints_of(lq);
        for p in plo..phi {
            for q in qlo.max(2)..qhi {
                if BigInt::from(p).gcd(&BigInt::from(q)) == BigInt::from(1) {
                    out.push(format!("{p}/{q}"));
                }
            }
        }
    }
    out
}

fn registry() -> &'static Mutex<HashMap<Signature, Arc<Mutex<Enumerator>>>> {
    static REG: OnceLock<Mutex<HashMap<Signature, Arc<Mutex<Enumerator>>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared cached enumerator for a signature.
pub fn enumerator(sig: &Signature) -> Arc<Mutex<Enumerator>> {
    let mut reg = registry().lock().unwrap();
    reg.entry(sig.clone()).or_insert_with(|| Arc::new(Mutex::new(Enumerator::new(sig.clone())))).clone()
}

pub fn enumerate_formulas(i: usize, sig: &Signature) -> Formula {
    enumerator(sig).lock().unwrap().nth(i)
}

pub fn formula_index(f: &Formula, sig: &Signature) -> Option<usize> {
    let symbols_ok = f.free_symbols().iter().all(|s| sig.symbols.contains(s));
    let shape_ok = f.atoms().iter().all(|a| {
        let ok = |t: &super::term::Term| if sig.field { true } else { t.monomials().all(|(m, _)| m.degree() == 1) };
        ok(&a.lhs) && ok(&a.rhs)
    });
    if !symbols_ok || !shape_ok {
        return None;
    }
    enumerator(sig).lock().unwrap().index(f)
}
