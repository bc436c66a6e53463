//! Locating a cut against the valuation basis of the parameter span.
//!
//! Classes are visited from the largest down. At each class the quotient
//! `(x - d) / h` is pinned down by bisection on side queries: it is either
//! infinitesimal (move on), unbounded (the distance to the span has a new
//! value), matched by a span element of the class (absorb it and move on), or
//! an unmatched real (the residue of `x - d` is new).

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::oracle::{CutOracle, Side};
use super::{Budgets, Mode};
use crate::error::{Error, Result};
use crate::hahn::{Exponent, HahnSeries};
use crate::numbers::rational::{pow2_neg, Rational};
use crate::numbers::CoefficientReal;
use crate::valuation::{is_pseudo_cauchy_prefix, valuation_basis, SpanBasis};

#[derive(Clone, Debug)]
pub enum CutClassification {
    /// The cut is the element itself.
    Realized(HahnSeries),
    /// `(x - d0) / scale` has a residue outside the span's residues, known to
    /// lie in `[lo, hi]`.
    Residue { d0: HahnSeries, scale: HahnSeries, value: Exponent, lo: Rational, hi: Rational },
    /// `v(x - d0)` is a new value: above every exponent in `below`, under every
    /// exponent in `above`. `sign` is the sign of `x - d0`.
    Group { d0: HahnSeries, sign: i8, below: Vec<Exponent>, above: Vec<Exponent> },
    /// Approximations from the structure improve without end.
    Immediate { approximants: Vec<HahnSeries>, lower: bool },
}

impl CutClassification {
    pub fn tag(&self) -> &'static str {
        match self {
            CutClassification::Realized(_) => "realized",
            CutClassification::Residue { .. } => "residue-transcendental",
            CutClassification::Group { .. } => "group-transcendental",
            CutClassification::Immediate { .. } => "immediate-transcendental",
        }
    }

    /// Report lines after the tag.
    pub fn details(&self) -> Vec<String> {
        let exps = |v: &[Exponent]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ");
        match self {
            CutClassification::Realized(x) => vec![format!("element {x}")],
            CutClassification::Residue { d0, scale, value, lo, hi } => vec![
                format!("d0 = {d0}"),
                format!("scale = {scale} (value {value})"),
                format!("residue in [{:.12}, {:.12}]", to_f64(lo), to_f64(hi)),
            ],
            CutClassification::Group { d0, sign, below, above } => vec![
                format!("d0 = {d0}"),
                format!("sign of x - d0 = {}", if *sign > 0 { "+" } else { "-" }),
                format!("values below: {{{}}}", exps(below)),
                format!("values above: {{{}}}", exps(above)),
            ],
            CutClassification::Immediate { approximants, lower } => {
                let mut v = vec![format!("{} approximants from {}", approximants.len(), if *lower { "below" } else { "above" })];
                if let Some(last) = approximants.last() {
                    v.push(format!("last approximant {last}"));
                }
                v
            }
        }
    }
}

impl fmt::Display for CutClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())?;
        for d in self.details() {
            write!(f, "; {d}")?;
        }
        Ok(())
    }
}

fn to_f64(q: &Rational) -> f64 {
    CoefficientReal::Rational(q.clone()).to_f64()
}

/// Where `(x - d) / h` sits.
pub(crate) enum Located {
    Equal(HahnSeries),
    Infinitesimal,
    Unbounded(i8),
    Bracket(Rational, Rational),
}

pub(crate) struct Locator<'a> {
    pub oracle: &'a dyn CutOracle,
    pub precision: u32,
}

impl Locator<'_> {
    fn at(&self, d: &HahnSeries, h: &HahnSeries, q: &Rational) -> Result<Side> {
        self.oracle.side(&d.add(&h.scale_rational(q)))
    }

    /// Bisection to width `2^-precision`; magnitudes beyond `2^precision` count
    /// as unbounded and below `2^-precision` as infinitesimal.
    pub fn locate(&self, d: &HahnSeries, h: &HahnSeries) -> Result<Located> {
        let sign: i8 = match self.oracle.side(d)? {
            Side::Equal => return Ok(Located::Equal(d.clone())),
            Side::Below => 1,
            Side::Above => -1,
        };
        let toward = if sign > 0 { Side::Below } else { Side::Above };
        let sgn = |q: Rational| if sign > 0 { q } else { -q };
        let eps = pow2_neg(self.precision);
        match self.at(d, h, &sgn(eps.clone()))? {
            Side::Equal => return Ok(Located::Equal(d.add(&h.scale_rational(&sgn(eps))))),
            s if s != toward => return Ok(Located::Infinitesimal),
            _ => {}
        }
        let mut inner = eps;
        let mut outer = None;
        let mut k = Rational::one();
        for _ in 0..=self.precision {
            match self.at(d, h, &sgn(k.clone()))? {
                Side::Equal => return Ok(Located::Equal(d.add(&h.scale_rational(&sgn(k))))),
                s if s == toward => inner = k.clone(),
                _ => {
                    outer = Some(k.clone());
                    break;
                }
            }
            k *= Rational::from_integer(2.into());
        }
        let Some(outer) = outer else { return Ok(Located::Unbounded(sign)) };
        // |rho| in [inner, outer]
        let (mut a, mut b) = (inner, outer);
        let half = Rational::new(1.into(), 2.into());
        while &b - &a > pow2_neg(self.precision) {
            let m = (&a + &b) * &half;
            match self.at(d, h, &sgn(m.clone()))? {
                Side::Equal => return Ok(Located::Equal(d.add(&h.scale_rational(&sgn(m))))),
                s if s == toward => a = m,
                _ => b = m,
            }
        }
        Ok(if sign > 0 { Located::Bracket(a, b) } else { Located::Bracket(-b, -a) })
    }
}

/// The rational of least height in `[a, b]`.
pub fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a <= b);
    if !a.is_positive() && !b.is_negative() {
        return Rational::zero();
    }
    if b.is_negative() {
        return -simplest_between(&-b, &-a);
    }
    if a.is_integer() {
        return a.clone();
    }
    let fl = a.floor();
    let c = &fl + Rational::one();
    if c <= *b {
        return c;
    }
    let lo = (b - &fl).recip();
    let hi = (a - &fl).recip();
    fl + simplest_between(&lo, &hi).recip()
}

pub(crate) fn rational_height(q: &Rational) -> num_bigint::BigInt {
    let n = q.numer().abs();
    if &n > q.denom() {
        n
    } else {
        q.denom().clone()
    }
}

pub(crate) struct Greedy<'a> {
    pub loc: Locator<'a>,
    pub basis: SpanBasis,
    pub dim: usize,
    pub budgets: Budgets,
}

pub(crate) enum Step {
    Realized(HahnSeries),
    /// Continue with this element.
    Absorbed(HahnSeries),
    Infinitesimal,
    Unbounded(i8),
    Unmatched(Rational, Rational),
}

impl Greedy<'_> {
    pub fn class_indices(&self) -> Vec<usize> {
        (0..self.basis.class_reps.len()).rev().collect()
    }

    pub fn class_value(&self, j: usize) -> Exponent {
        self.basis.class_reps[j].valuation().finite().cloned().expect("class representatives are nonzero")
    }

    fn members(&self, j: usize) -> Vec<usize> {
        (0..self.basis.generators.len()).filter(|&i| self.basis.class_of[i] == j).collect()
    }

    /// Combination of class `j` whose component real lies in `[a, b]`.
    fn match_in_class(&self, j: usize, a: &Rational, b: &Rational) -> Result<Option<HahnSeries>> {
        let members = self.members(j);
        let reals: Vec<&CoefficientReal> = members.iter().map(|&i| &self.basis.component_reals[i]).collect();
        let p = self.budgets.precision;
        if let [r] = reals.as_slice() {
            if let Some(rq) = r.as_rational() {
                let (lo, hi) = if rq.is_positive() { (a / rq, b / rq) } else { (b / rq, a / rq) };
                let s = simplest_between(&lo, &hi);
                let limit = num_bigint::BigInt::one() << (p / 4).max(4) as usize;
                if rational_height(&s) <= limit {
                    return Ok(Some(self.basis.generators[members[0]].scale_rational(&s)));
                }
                return Ok(None);
            }
        }
        // Search coefficient vectors by height.
        let gens: Vec<HahnSeries> = members.iter().map(|&i| self.basis.generators[i].clone()).collect();
        let approx: Vec<(Rational, Rational)> = reals.iter().map(|r| r.approx(p + 8)).collect::<Result<_>>()?;
        let qs = super::oracle::rationals_of_height(self.budgets.height);
        let mut idx = vec![0usize; gens.len()];
        loop {
            let s: Vec<&Rational> = idx.iter().map(|&i| &qs[i]).collect();
            let (mut lo, mut hi) = (Rational::zero(), Rational::zero());
            for (q, (l, h)) in s.iter().zip(&approx) {
                let (x, y) = (*q * l, *q * h);
                if x <= y {
                    lo += x;
                    hi += y;
                } else {
                    lo += y;
                    hi += x;
                }
            }
            if hi >= *a && lo <= *b && s.iter().any(|q| !q.is_zero()) {
                let v = gens.iter().zip(&s).fold(HahnSeries::zero(self.dim), |acc, (g, q)| acc.add(&g.scale_rational(q)));
                return Ok(Some(v));
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < qs.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                return Ok(None);
            }
        }
    }

    /// One class of the walk, starting from `d`.
    pub fn step(&self, d: &HahnSeries, j: usize) -> Result<Step> {
        let h = &self.basis.class_reps[j];
        Ok(match self.loc.locate(d, h)? {
            Located::Equal(e) => Step::Realized(e),
            Located::Infinitesimal => Step::Infinitesimal,
            Located::Unbounded(s) => Step::Unbounded(s),
            Located::Bracket(a, b) => match self.match_in_class(j, &a, &b)? {
                Some(m) => {
                    let d2 = d.add(&m);
                    match self.loc.locate(&d2, h)? {
                        Located::Equal(e) => Step::Realized(e),
                        Located::Infinitesimal => Step::Absorbed(d2),
                        _ => Step::Unmatched(a, b),
                    }
                }
                None => Step::Unmatched(a, b),
            },
        })
    }
}

fn basis_for(gens: &[HahnSeries], mode: Mode, dim: usize, budget: u32) -> Result<SpanBasis> {
    let mut g: Vec<HahnSeries> = gens.to_vec();
    if mode == Mode::Field {
        g.push(HahnSeries::one(dim));
    }
    valuation_basis(&g, budget)
}

pub(crate) fn greedy<'a>(oracle: &'a dyn CutOracle, gens: &[HahnSeries], mode: Mode, dim: usize, budgets: &Budgets) -> Result<Greedy<'a>> {
    Ok(Greedy { loc: Locator { oracle, precision: budgets.precision }, basis: basis_for(gens, mode, dim, budgets.precision)?, dim, budgets: budgets.clone() })
}

/// Do the oracle's approximants keep improving through the last one?
///
/// `Some(lower)` when they form a pseudo-Cauchy run on one side of the cut and
/// the known far bound is closer to the last approximant than the last gap.
fn improving_run(oracle: &dyn CutOracle, a: &[HahnSeries]) -> Result<Option<bool>> {
    if a.len() < 2 || !is_pseudo_cauchy_prefix(a)? {
        return Ok(None);
    }
    let sides: Vec<Side> = a.iter().map(|x| oracle.side(x)).collect::<Result<_>>()?;
    let lower = match sides[0] {
        Side::Below if sides.iter().all(|s| *s == Side::Below) => true,
        Side::Above if sides.iter().all(|s| *s == Side::Above) => false,
        _ => return Ok(None),
    };
    let n = a.len();
    let gap = a[n - 1].sub(&a[n - 2]).valuation();
    if let Some(u) = oracle.opposite() {
        if u.sub(&a[n - 1]).valuation() <= gap {
            return Ok(None);
        }
    }
    Ok(Some(lower))
}

/// Classify the cut of `oracle` over the span of `gens` (with `1` adjoined in
/// field mode).
pub fn classify_cut(oracle: &dyn CutOracle, gens: &[HahnSeries], mode: Mode, budgets: &Budgets) -> Result<CutClassification> {
    budgets.validate()?;
    let dim = gens.first().map(|g| g.dim()).or_else(|| oracle.approximants().first().map(|a| a.dim())).unwrap_or(1);
    if mode == Mode::Field {
        let a = oracle.approximants();
        if let Some(lower) = improving_run(oracle, &a)? {
            if a.len() < 3 {
                return Err(Error::BudgetExhausted(format!("classification: only {} approximants, still improving at the end of the budget", a.len())));
            }
            return Ok(CutClassification::Immediate { approximants: a, lower });
        }
    }
    let g = greedy(oracle, gens, mode, dim, budgets)?;
    let mut d = HahnSeries::zero(dim);
    let mut below = Vec::new();
    let order = g.class_indices();
    for (pos, &j) in order.iter().enumerate() {
        match g.step(&d, j)? {
            Step::Realized(e) => return Ok(CutClassification::Realized(e)),
            Step::Absorbed(d2) => {
                d = d2;
                below.push(g.class_value(j));
            }
            Step::Infinitesimal => below.push(g.class_value(j)),
            Step::Unbounded(sign) => {
                let above = order[pos..].iter().map(|&k| g.class_value(k)).collect();
                return Ok(CutClassification::Group { d0: d, sign, below, above });
            }
            Step::Unmatched(lo, hi) => {
                return Ok(CutClassification::Residue { d0: d, scale: g.basis.class_reps[j].clone(), value: g.class_value(j), lo, hi });
            }
        }
    }
    match oracle.side(&d)? {
        Side::Equal => Ok(CutClassification::Realized(d)),
        s => Ok(CutClassification::Group { d0: d, sign: if s == Side::Below { 1 } else { -1 }, below, above: Vec::new() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::oracle::{SequenceOracle, TargetOracle};
    use crate::hahn::parse_series;
    use crate::numbers::rational::{int, rat};
    use crate::valuation::PseudoSequence;

    fn s(t: &str) -> HahnSeries {
        parse_series(t, 1).unwrap()
    }

    fn classify(x0: &str, gens: &[&str], mode: Mode) -> CutClassification {
        let o = TargetOracle::new(s(x0), 64);
        let g: Vec<HahnSeries> = gens.iter().map(|x| s(x)).collect();
        classify_cut(&o, &g, mode, &Budgets::default()).unwrap()
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(1, 2));
        assert_eq!(simplest_between(&rat(-3, 2), &rat(-1, 2)), int(-1));
        assert_eq!(simplest_between(&rat(3, 10), &rat(34, 100)), rat(1, 3));
        assert_eq!(simplest_between(&rat(141, 100), &rat(1415, 1000)), rat(24, 17));
        assert_eq!(simplest_between(&rat(-1, 5), &rat(1, 5)), int(0));
    }

    #[test]
    fn residue_case() {
        match classify("alg[-2,0,1;1,2]*t", &["t"], Mode::Group) {
            CutClassification::Residue { d0, scale, lo, hi, .. } => {
                assert!(d0.is_zero());
                assert_eq!(scale, s("t"));
                assert!(lo < rat(1415, 1000) && hi > rat(1414, 1000));
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn group_case() {
        match classify("t^(1/2)", &["1", "t"], Mode::Field) {
            CutClassification::Group { d0, sign, below, above } => {
                assert!(d0.is_zero());
                assert_eq!(sign, 1);
                assert_eq!(below, vec![Exponent::from_ints(&[0])]);
                assert_eq!(above, vec![Exponent::from_ints(&[1])]);
            }
            other => panic!("{other}"),
        }
        // below everything: x - d0 smaller than every class
        match classify("t + 3*t^2 - t^7", &["t", "t^2"], Mode::Group) {
            CutClassification::Group { d0, sign, below, above } => {
                assert_eq!(d0, s("t + 3*t^2"));
                assert_eq!(sign, -1);
                assert_eq!(below.len(), 2);
                assert!(above.is_empty());
            }
            other => panic!("{other}"),
        }
        // infinitely large
        match classify("t^-5", &["t^-1"], Mode::Group) {
            CutClassification::Group { sign, below, above, .. } => {
                assert_eq!(sign, 1);
                assert!(below.is_empty());
                assert_eq!(above, vec![Exponent::from_ints(&[-1])]);
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn realized_case() {
        match classify("2/3*t - 5*t^2", &["t", "t^2"], Mode::Group) {
            CutClassification::Realized(x) => assert_eq!(x, s("2/3*t - 5*t^2")),
            other => panic!("{other}"),
        }
        match classify("alg[-2,0,1;1,2]*t + t^2", &["alg[-2,0,1;1,2]*t", "t^2"], Mode::Group) {
            CutClassification::Realized(_) => {}
            other => panic!("{other}"),
        }
        match classify("0", &[], Mode::Group) {
            CutClassification::Realized(x) => assert!(x.is_zero()),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn two_component_class() {
        // residues 1 and sqrt2 in the same class: 3 + 2*sqrt2 is matched
        match classify("3*t + alg[-8,0,1;2,3]*t", &["t", "alg[-2,0,1;1,2]*t"], Mode::Group) {
            CutClassification::Realized(_) => {}
            other => panic!("{other}"),
        }
    }

    #[test]
    fn immediate_case_needs_field_mode() {
        let seq = || PseudoSequence::generated(60, |i| (1..=i as i64 + 1).fold(HahnSeries::zero(1), |acc, j| acc.add(&HahnSeries::t_pow(Exponent::new(vec![int(1) - rat(1, j)])))));
        let o = SequenceOracle::new(seq(), 60, 9, 64);
        let c = classify_cut(&o, &[s("t")], Mode::Field, &Budgets::default()).unwrap();
        assert_eq!(c.tag(), "immediate-transcendental");
        let o = SequenceOracle::new(seq(), 60, 9, 64);
        let c = classify_cut(&o, &[s("t")], Mode::Group, &Budgets::default()).unwrap();
        assert_ne!(c.tag(), "immediate-transcendental");
        let o = SequenceOracle::new(seq(), 60, 2, 64);
        assert!(matches!(classify_cut(&o, &[s("t")], Mode::Field, &Budgets::default()), Err(Error::BudgetExhausted(_))));
    }
}
