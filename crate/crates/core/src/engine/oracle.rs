//! Cut oracles: who is below, above or equal to the element being realized.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicUsize, Ordering::Relaxed};
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::formula::{CutBounds, Env};
use crate::hahn::{compare_series_with, Exponent, HahnSeries};
use crate::numbers::CoefficientReal;
use crate::numbers::rational::Rational;
use crate::valuation::PseudoSequence;

/// Position of a queried element `d` relative to the cut: `Below` means `d < x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Below,
    Above,
    Equal,
}

impl Side {
    /// Side of `d` given `d.cmp(x)`.
    pub fn of(o: Ordering) -> Side {
        match o {
            Ordering::Less => Side::Below,
            Ordering::Greater => Side::Above,
            Ordering::Equal => Side::Equal,
        }
    }

    pub fn ordering(self) -> Ordering {
        match self {
            Side::Below => Ordering::Less,
            Side::Above => Ordering::Greater,
            Side::Equal => Ordering::Equal,
        }
    }
}

pub trait CutOracle: Send + Sync {
    fn side(&self, d: &HahnSeries) -> Result<Side>;

    fn label(&self) -> String;

    /// Substructure elements approaching the cut from one side, in the order
    /// they were produced. Empty when the oracle knows of none.
    fn approximants(&self) -> Vec<HahnSeries> {
        Vec::new()
    }

    /// A bound on the far side of the approximants, when one is known.
    fn opposite(&self) -> Option<HahnSeries> {
        None
    }

    /// Number of side queries answered so far.
    fn queries(&self) -> usize;
}

/// The cut of a known series.
pub struct TargetOracle {
    x0: HahnSeries,
    budget: u32,
    count: AtomicUsize,
}

impl TargetOracle {
    pub fn new(x0: HahnSeries, budget: u32) -> Self {
        TargetOracle { x0, budget, count: AtomicUsize::new(0) }
    }
}

impl CutOracle for TargetOracle {
    fn side(&self, d: &HahnSeries) -> Result<Side> {
        self.count.fetch_add(1, Relaxed);
        Ok(Side::of(compare_series_with(d, &self.x0, self.budget)?))
    }

    fn label(&self) -> String {
        format!("target {}", self.x0)
    }

    fn queries(&self) -> usize {
        self.count.load(Relaxed)
    }
}

/// The cut of the pseudo limit of a pseudo-Cauchy sequence.
///
/// `d` is decided at the first `m` with `v(d - a_m) < v(a_{m+1} - a_m)`: every
/// later term, and the limit, then sit on the same side of `d` as `a_m`.
pub struct SequenceOracle {
    seq: PseudoSequence,
    budget: usize,
    shown: usize,
    precision: u32,
    cache: Mutex<Vec<HahnSeries>>,
    count: AtomicUsize,
}

impl SequenceOracle {
    /// `budget` terms may be consulted per query; the first `shown` are
    /// offered as approximants.
    pub fn new(seq: PseudoSequence, budget: usize, shown: usize, precision: u32) -> Self {
        SequenceOracle { seq, budget, shown: shown.min(budget), precision, cache: Mutex::new(Vec::new()), count: AtomicUsize::new(0) }
    }

    fn terms(&self, k: usize) -> Result<Vec<HahnSeries>> {
        let mut c = self.cache.lock().unwrap();
        if c.len() < k {
            *c = self.seq.prefix(k)?;
        }
        Ok(c[..k].to_vec())
    }
}

impl CutOracle for SequenceOracle {
    fn side(&self, d: &HahnSeries) -> Result<Side> {
        self.count.fetch_add(1, Relaxed);
        let a = self.terms(self.budget)?;
        for w in a.windows(2) {
            let gap = w[1].sub(&w[0]).valuation();
            let off = d.sub(&w[0]);
            if off.valuation() < gap {
                return Ok(if off.sign(self.precision)? < 0 { Side::Below } else { Side::Above });
            }
        }
        Err(Error::BudgetExhausted(format!("side query at {d}: {} sequence terms do not separate it from the limit", self.budget)))
    }

    fn label(&self) -> String {
        format!("pseudo limit of a sequence ({} terms)", self.budget)
    }

    fn approximants(&self) -> Vec<HahnSeries> {
        self.terms(self.shown).unwrap_or_default()
    }

    fn queries(&self) -> usize {
        self.count.load(Relaxed)
    }
}

/// The cut of a completed type prefix.
///
/// The recorded bounds leave most queries open. Those are answered against a
/// fixed generic point strictly inside the bounds (see [`generic_point`]), so
/// the answers form a single cut.
pub struct TypeOracle {
    env: Env,
    bounds: CutBounds,
    point: HahnSeries,
    approximants: Vec<HahnSeries>,
    opposite: Option<HahnSeries>,
    count: AtomicUsize,
}

impl TypeOracle {
    pub fn new(bounds: CutBounds, env: Env) -> Result<Self> {
        let point = generic_point(&bounds, &env)?;
        Ok(TypeOracle { env, bounds, point, approximants: Vec::new(), opposite: None, count: AtomicUsize::new(0) })
    }

    pub fn with_approximants(mut self, a: Vec<HahnSeries>, opposite: Option<HahnSeries>) -> Self {
        self.approximants = a;
        self.opposite = opposite;
        self
    }

    pub fn bounds(&self) -> &CutBounds {
        &self.bounds
    }

    /// The element whose cut this oracle answers with.
    pub fn point(&self) -> &HahnSeries {
        &self.point
    }
}

impl CutOracle for TypeOracle {
    fn side(&self, d: &HahnSeries) -> Result<Side> {
        self.count.fetch_add(1, Relaxed);
        Ok(Side::of(compare_series_with(d, &self.point, self.env.budget)?))
    }

    fn label(&self) -> String {
        "completed type".into()
    }

    fn approximants(&self) -> Vec<HahnSeries> {
        self.approximants.clone()
    }

    fn opposite(&self) -> Option<HahnSeries> {
        self.opposite.clone()
    }

    fn queries(&self) -> usize {
        self.count.load(Relaxed)
    }
}

fn unit_exponent(dim: usize) -> Exponent {
    let mut c = vec![Rational::zero(); dim];
    c[0] = Rational::one();
    Exponent::new(c)
}

/// A rational strictly between two distinct reals `a < b`.
fn rational_strictly_between(a: &CoefficientReal, b: &CoefficientReal, budget: u32) -> Result<Rational> {
    for n in (8..=budget.max(8)).step_by(8) {
        let (_, a1) = a.approx(n)?;
        let (b0, _) = b.approx(n)?;
        if a1 < b0 {
            let q = (&b0 - &a1) / Rational::from_integer(4.into());
            return Ok(simplest_in(&(&a1 + &q), &(&b0 - &q)));
        }
    }
    Err(Error::ComparisonUndecidedAtPrecision(budget))
}

fn simplest_in(a: &Rational, b: &Rational) -> Rational {
    super::classify::simplest_between(a, b)
}

/// A simple element strictly between `l` and `u` (either may be absent).
///
/// Between `0` and `u > 0` it is a monomial one unit below `u` in size; between
/// positive bounds of different values it is the monomial at the middle value;
/// between bounds sharing a value it follows their common leading terms and then
/// takes the simplest coefficient strictly between.
pub fn between(l: Option<&HahnSeries>, u: Option<&HahnSeries>, dim: usize, budget: u32) -> Result<HahnSeries> {
    let sign = |x: &HahnSeries| x.sign(budget);
    let v = |x: &HahnSeries| x.valuation().finite().cloned().expect("nonzero");
    let e1 = unit_exponent(dim);
    Ok(match (l, u) {
        (None, None) => HahnSeries::zero(dim),
        (Some(l), None) => match sign(l)? {
            s if s < 0 => HahnSeries::zero(dim),
            0 => HahnSeries::one(dim),
            _ => HahnSeries::t_pow(v(l).sub(&e1)),
        },
        (None, Some(u)) => between(Some(&u.neg()), None, dim, budget)?.neg(),
        (Some(l), Some(u)) => {
            let (sl, su) = (sign(l)?, sign(u)?);
            if sl < 0 && su > 0 {
                HahnSeries::zero(dim)
            } else if su <= 0 {
                between(Some(&u.neg()), Some(&l.neg()), dim, budget)?.neg()
            } else if sl == 0 {
                HahnSeries::t_pow(v(u).add(&e1))
            } else {
                let (gl, gu) = (v(l), v(u));
                if gl > gu {
                    HahnSeries::t_pow(gu.midpoint(&gl))
                } else {
                    let cl = l.lead_coeff().unwrap().clone();
                    let cu = u.lead_coeff().unwrap().clone();
                    if crate::numbers::compare(&cl, &cu, budget)? == Ordering::Less {
                        HahnSeries::monomial(gl, rational_strictly_between(&cl, &cu, budget)?.into())
                    } else {
                        let lead = l.leading_monomial();
                        lead.add(&between(Some(&l.sub(&lead)), Some(&u.sub(&lead)), dim, budget)?)
                    }
                }
            }
        }
    })
}

/// The point a [`TypeOracle`] answers with: the forced value if there is one,
/// else [`between`] the bounds, moved off any excluded values.
pub fn generic_point(b: &CutBounds, env: &Env) -> Result<HahnSeries> {
    if let Some(p) = &b.point {
        return Ok(p.clone());
    }
    let u = b.upper.as_ref().map(|x| &x.value);
    let mut m = match (&b.lower, &b.upper) {
        (Some(l), Some(u)) if compare_series_with(&l.value, &u.value, env.budget)? == Ordering::Equal => return Ok(l.value.clone()),
        _ => between(b.lower.as_ref().map(|x| &x.value), u, env.dim, env.budget)?,
    };
    for _ in 0..=b.excluded.len() {
        let mut hit = false;
        for e in &b.excluded {
            if compare_series_with(e, &m, env.budget)? == Ordering::Equal {
                hit = true;
            }
        }
        if !hit {
            break;
        }
        m = between(Some(&m), u, env.dim, env.budget)?;
    }
    Ok(m)
}

/// Rationals `p/q` with `|p|, q <= h`, by increasing height, then value.
pub fn rationals_of_height(h: u64) -> Vec<Rational> {
    let h = h as i64;
    let mut out: Vec<(u64, Rational)> = Vec::new();
    for q in 1..=h {
        for p in -h..=h {
            let r = Rational::new(p.into(), q.into());
            out.push((height(&r), r));
        }
    }
    out.sort();
    out.dedup();
    out.into_iter().map(|(_, r)| r).collect()
}

fn height(q: &Rational) -> u64 {
    let n = q.numer().abs();
    let d = q.denom().clone();
    let m = if n > d { n } else { d };
    u64::try_from(m).unwrap_or(u64::MAX)
}

/// Nonzero rational combinations of `gens` with coefficients of height at most
/// `h`, by increasing height. The height is lowered until at most `cap`
/// combinations remain.
pub fn height_enumeration(gens: &[HahnSeries], h: u64, cap: usize) -> Vec<(Vec<Rational>, HahnSeries)> {
    if gens.is_empty() {
        return Vec::new();
    }
    let dim = gens[0].dim();
    let mut h = h.max(1);
    let mut qs = rationals_of_height(h);
    while h > 1 && (qs.len() as f64).powi(gens.len() as i32) > cap as f64 {
        h -= 1;
        qs = rationals_of_height(h);
    }
    let mut combos: Vec<(u64, Vec<Rational>)> = Vec::new();
    let mut idx = vec![0usize; gens.len()];
    loop {
        let s: Vec<Rational> = idx.iter().map(|&i| qs[i].clone()).collect();
        if s.iter().any(|q| !q.is_zero()) {
            combos.push((s.iter().map(height).max().unwrap_or(0), s));
        }
        if combos.len() > cap {
            break;
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
            break;
        }
    }
    combos.sort_by(|a, b| a.0.cmp(&b.0));
    combos
        .into_iter()
        .map(|(_, s)| {
            let v = gens.iter().zip(&s).fold(HahnSeries::zero(dim), |acc, (g, q)| if q.is_zero() { acc } else { acc.add(&g.scale_rational(q)) });
            (s, v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::formula::satisfying_cut;
    use crate::hahn::{parse_series, Exponent};
    use crate::numbers::rational::{int, rat};

    fn s(t: &str) -> HahnSeries {
        parse_series(t, 1).unwrap()
    }

    #[test]
    fn target_oracle_compares() {
        let o = TargetOracle::new(s("alg[-2,0,1;1,2]*t"), 64);
        assert_eq!(o.side(&s("t")).unwrap(), Side::Below);
        assert_eq!(o.side(&s("3/2*t")).unwrap(), Side::Above);
        assert_eq!(o.side(&s("alg[-2,0,1;1,2]*t")).unwrap(), Side::Equal);
        assert_eq!(o.queries(), 3);
    }

    #[test]
    fn sequence_oracle_decides_by_first_separating_term() {
        // partial sums of t^0 + t^1 + t^2 + ...
        let seq = PseudoSequence::generated(40, |i| (0..=i as i64).fold(HahnSeries::zero(1), |acc, j| acc.add(&HahnSeries::t_pow(Exponent::from_ints(&[j])))));
        let o = SequenceOracle::new(seq, 40, 5, 64);
        assert_eq!(o.side(&s("1")).unwrap(), Side::Below);
        assert_eq!(o.side(&s("1 + 2*t")).unwrap(), Side::Above);
        assert_eq!(o.side(&s("1 + t + t^2 + t^3")).unwrap(), Side::Below);
        assert_eq!(o.approximants().len(), 5);
        let short = SequenceOracle::new(PseudoSequence::generated(3, |i| HahnSeries::t_pow(Exponent::from_ints(&[i as i64]))), 3, 3, 64);
        assert!(matches!(short.side(&s("t^5")), Err(Error::BudgetExhausted(_))));
    }

    #[test]
    fn type_oracle_answers_with_a_generic_point() {
        let env = Env::new(1).with("g", s("t"));
        let b = satisfying_cut(&[parse_formula("0 < x").unwrap(), parse_formula("x <= g").unwrap()], "x", &env).unwrap().unwrap();
        let o = TypeOracle::new(b, env).unwrap();
        assert_eq!(o.point(), &s("t^2"));
        assert_eq!(o.side(&s("-1")).unwrap(), Side::Below);
        assert_eq!(o.side(&s("1/2*t")).unwrap(), Side::Above);
        assert_eq!(o.side(&s("t^3")).unwrap(), Side::Below);
    }

    #[test]
    fn generic_points() {
        let b = |l: Option<&str>, u: Option<&str>| between(l.map(s).as_ref(), u.map(s).as_ref(), 1, 64).unwrap();
        assert_eq!(b(None, None), s("0"));
        assert_eq!(b(Some("-3"), Some("t")), s("0"));
        assert_eq!(b(Some("30*t^2"), Some("1/30*t")), s("t^(3/2)"));
        assert_eq!(b(Some("t"), Some("2*t")), s("3/2*t"));
        assert_eq!(b(Some("t + t^2"), Some("t + 2*t^2")), s("t + 3/2*t^2"));
        assert_eq!(b(Some("5*t^-1"), None), s("t^-2"));
        assert_eq!(b(None, Some("-t")), s("-t^0"));
        assert_eq!(b(Some("0"), None), s("1"));
        assert_eq!(b(Some("-2*t"), Some("-t")), s("-3/2*t"));
        let r = b(Some("alg[-2,0,1;1,2]"), Some("3/2"));
        assert_eq!(r, s("13/9"));
    }

    #[test]
    fn enumeration_by_height() {
        assert_eq!(rationals_of_height(1), vec![int(-1), int(0), int(1)]);
        assert_eq!(rationals_of_height(2).len(), 7);
        assert!(rationals_of_height(8).contains(&rat(-7, 8)));
        let e = height_enumeration(&[s("t"), s("t^2")], 2, 1000);
        assert_eq!(e.len(), 48);
        assert!(e[..8].iter().all(|(c, _)| c.iter().all(|q| q.is_integer() && q.abs() <= Rational::one())));
        assert!(height_enumeration(&[s("t"), s("t^2"), s("t^3")], 8, 5000).len() <= 5001);
    }
}
