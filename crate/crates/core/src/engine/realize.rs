//! Building an element that fills a classified cut.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::classify::{greedy, rational_height, simplest_between, CutClassification, Step};
use super::oracle::{height_enumeration, CutOracle, Side};
use super::{Budgets, Mode};
use crate::error::{Error, Result};
use crate::hahn::{compare_series_with, Exponent, HahnSeries};
use crate::numbers::poly::QPoly;
use crate::numbers::rational::{pow2_neg, Rational};
use crate::numbers::{CoefficientReal, OracleReal, RealAlgebraic};
use crate::trees::{find_path_bounded, TreeOracle};
use crate::valuation::{is_pseudo_limit, pseudo_limit_of};

/// A filling element and how it was found.
#[derive(Clone, Debug)]
pub struct Witness {
    pub value: HahnSeries,
    pub case: String,
    pub notes: Vec<String>,
    /// Side queries the value was checked against.
    pub checked: usize,
}

pub fn realize_cut_group(oracle: Arc<dyn CutOracle>, class: &CutClassification, gens: &[HahnSeries], budgets: &Budgets) -> Result<Witness> {
    realize(oracle, class, gens, Mode::Group, budgets)
}

pub fn realize_cut_field(oracle: Arc<dyn CutOracle>, class: &CutClassification, gens: &[HahnSeries], budgets: &Budgets) -> Result<Witness> {
    realize(oracle, class, gens, Mode::Field, budgets)
}

fn unit(dim: usize) -> Exponent {
    let mut c = vec![Rational::zero(); dim];
    c[0] = Rational::one();
    Exponent::new(c)
}

/// An exponent strictly between `lo` and `hi` (either may be absent). The
/// midpoint is used unless a point with denominators at most `denom` is found
/// in the first coordinate where the two differ.
pub fn fill_exponent(lo: Option<&Exponent>, hi: Option<&Exponent>, denom: u64, dim: usize) -> Exponent {
    match (lo, hi) {
        (None, None) => Exponent::zero(dim),
        (Some(a), None) => a.add(&unit(dim)),
        (None, Some(b)) => b.sub(&unit(dim)),
        (Some(a), Some(b)) => {
            let m = a.midpoint(b);
            let small = |q: &Rational| q.denom().to_u64().is_some_and(|d| d <= denom);
            if m.coords().iter().all(small) {
                return m;
            }
            let i = (0..dim).find(|&i| a.coords()[i] != b.coords()[i]).expect("distinct exponents");
            let (x, y, mid) = (&a.coords()[i], &b.coords()[i], &m.coords()[i]);
            let mut best: Option<Rational> = None;
            for q in 1..=denom as i64 {
                let qq = Rational::from_integer(q.into());
                let p = (mid * &qq).round();
                let r = p / &qq;
                if &r > x && &r < y && best.as_ref().map_or(true, |b| (&r - mid).abs() < (b - mid).abs()) {
                    best = Some(r);
                }
            }
            match best {
                Some(r) => {
                    let mut c: Vec<Rational> = a.coords()[..i].to_vec();
                    c.push(r);
                    c.resize(dim, Rational::zero());
                    Exponent::new(c)
                }
                None => m,
            }
        }
    }
}

/// A low-degree algebraic number in `[lo, hi]`, if one with small integer
/// coefficients has a root there. Rationals of height up to `2^16` come first,
/// then quadratics with coefficients up to 12, then cubics up to 6.
pub fn recognize_algebraic(lo: &Rational, hi: &Rational) -> Option<RealAlgebraic> {
    let q = simplest_between(lo, hi);
    if rational_height(&q) <= BigInt::from(1u32 << 16) {
        return Some(RealAlgebraic::from_rational(&q));
    }
    // Evaluate on a common dyadic scale: lo = L / 2^b, hi = H / 2^b.
    let b = 80u32;
    let scale = Rational::from_integer(BigInt::one() << b as usize);
    let l = (lo * &scale).floor().to_integer();
    let h = (hi * &scale).ceil().to_integer();
    let one_b = BigInt::one() << b as usize;
    let eval = |c: &[i64], x: &BigInt| -> BigInt {
        let mut acc = BigInt::zero();
        let deg = c.len() - 1;
        for k in (0..=deg).rev() {
            acc = acc * x + BigInt::from(c[k]) * num_traits::pow(one_b.clone(), deg - k);
        }
        acc
    };
    let mid = (lo + hi).to_f64().unwrap_or(0.0) / 2.0;
    for (deg, bound) in [(2usize, 12i64), (3, 6)] {
        let mut best: Option<(i64, Vec<i64>)> = None;
        let mut c = vec![-bound; deg + 1];
        c[deg] = 1;
        loop {
            let height = c.iter().map(|x| x.abs()).max().unwrap();
            if best.as_ref().map_or(true, |(bh, _)| height < *bh) {
                let fx = c.iter().rev().fold(0.0f64, |acc, &k| acc * mid + k as f64);
                let scale_f = c.iter().map(|x| x.abs() as f64).sum::<f64>() * (1.0 + mid.abs()).powi(deg as i32);
                if fx.abs() <= 1e-6 * scale_f {
                    let (a, z) = (eval(&c, &l), eval(&c, &h));
                    if a.sign() != z.sign() || a.is_zero() || z.is_zero() {
                        best = Some((height, c.clone()));
                    }
                }
            }
            // odometer over c[0..deg], then leading coefficient 1..=bound
            let mut k = 0;
            loop {
                if k == deg {
                    c[deg] += 1;
                    break;
                }
                c[k] += 1;
                if c[k] <= bound {
                    break;
                }
                c[k] = -bound;
                k += 1;
            }
            if c[deg] > bound {
                break;
            }
        }
        if let Some((_, c)) = best {
            let p = QPoly::from_ints(&c);
            let (lo_d, hi_d) = (Rational::new(l.clone(), one_b.clone()), Rational::new(h.clone(), one_b.clone()));
            if let Ok(a) = RealAlgebraic::from_poly(&p, lo_d, hi_d) {
                if a.degree() == deg {
                    return Some(a);
                }
            }
        }
    }
    None
}

/// `lo <= r <= hi` with `d0 + r * scale` compared against the oracle at each query.
fn residue_oracle(oracle: Arc<dyn CutOracle>, d0: HahnSeries, scale: HahnSeries, lo: Rational, hi: Rational) -> OracleReal {
    OracleReal::from_fn("residue of the cut", move |n| {
        let (mut a, mut b) = (lo.clone(), hi.clone());
        let half = Rational::new(1.into(), 2.into());
        while &b - &a > pow2_neg(n) {
            let m = (&a + &b) * &half;
            match oracle.side(&d0.add(&scale.scale_rational(&m)))? {
                Side::Below => a = m,
                Side::Above => b = m,
                Side::Equal => return Ok((m.clone(), m)),
            }
        }
        Ok((a, b))
    })
}

fn abs_series(x: &HahnSeries, budget: u32) -> Result<HahnSeries> {
    Ok(if x.sign(budget)? < 0 { x.neg() } else { x.clone() })
}

/// Pseudo limit of the leftmost admissible subsequence of the approximants.
///
/// A subsequence is admissible when each kept term lies on the approximants'
/// side of the cut and consecutive kept terms shrink: `p * |a_l - a_j| <
/// |a_j - a_i|` with `p` the position of `a_j`. Selections are the nodes of a
/// tree (bit 0 keeps the term) and the leftmost path of full length is taken.
fn immediate_fill(oracle: &dyn CutOracle, a: &[HahnSeries], lower: bool, budgets: &Budgets) -> Result<(HahnSeries, Vec<String>)> {
    let want = if lower { Side::Below } else { Side::Above };
    let ok: Vec<bool> = a.iter().map(|x| oracle.side(x).map(|s| s == want)).collect::<Result<_>>()?;
    let terms = a.to_vec();
    let budget = budgets.precision;
    let tree = TreeOracle::new("approximant selections", move |s| {
        let kept: Vec<usize> = s.0.iter().enumerate().filter(|(_, b)| !**b).map(|(i, _)| i).collect();
        if kept.iter().any(|&i| !ok[i]) {
            return false;
        }
        kept.windows(3).enumerate().all(|(p, w)| {
            let near = terms[w[2]].sub(&terms[w[1]]).scale_rational(&Rational::from_integer((p as i64 + 2).into()));
            let far = terms[w[1]].sub(&terms[w[0]]);
            match (abs_series(&near, budget), abs_series(&far, budget)) {
                (Ok(n), Ok(f)) => compare_series_with(&n, &f, budget).map(|o| o == Ordering::Less).unwrap_or(false),
                _ => false,
            }
        })
    });
    let path = find_path_bounded(&tree, a.len()).ok_or_else(|| Error::BudgetExhausted("approximant selection: no admissible path".into()))?;
    let kept: Vec<HahnSeries> = path.0.iter().zip(a).filter(|(b, _)| !**b).map(|(_, x)| x.clone()).collect();
    if kept.len() < 3 {
        return Err(Error::BudgetExhausted(format!("approximant selection: {} terms kept, 3 needed", kept.len())));
    }
    let mut notes = vec![format!("selection path {path}, {} of {} approximants kept", kept.len(), a.len())];
    let consistent = |l: &HahnSeries| -> Result<bool> {
        for x in kept.iter().chain(oracle.opposite().iter()) {
            if Side::of(compare_series_with(x, l, budget)?) != oracle.side(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let l0 = pseudo_limit_of(&kept)?;
    if consistent(&l0)? {
        notes.push("pseudo limit of the kept terms".into());
        return Ok((l0, notes));
    }
    // Push the last kept term towards the cut by a monomial smaller than both
    // the last gap and the distance to the far bound.
    let n = kept.len();
    let last = &kept[n - 1];
    let dim = last.dim();
    let mut gamma = last.sub(&kept[n - 2]).valuation().finite().cloned().expect("distinct terms");
    if let Some(u) = oracle.opposite() {
        if let Some(e) = u.sub(last).valuation().finite() {
            gamma = gamma.max(e.clone());
        }
    }
    let gamma = gamma.add(&unit(dim));
    let eps = HahnSeries::t_pow(gamma.clone());
    let l1 = if lower { last.add(&eps) } else { last.sub(&eps) };
    if is_pseudo_limit(&l1, &kept)? && consistent(&l1)? {
        notes.push(format!("pseudo limit moved off the last kept term by t^{gamma}"));
        return Ok((l1, notes));
    }
    Err(Error::PseudoLimitUnverified(l1.to_string()))
}

fn dimension_guard(gens: usize, below: &[Exponent], above: &[Exponent]) -> Result<()> {
    // the new value adds one to the rank of the value data
    let distinct = below.len() + above.len();
    if distinct > gens + 1 {
        return Err(Error::OracleInconsistent(format!("{distinct} values observed from {gens} parameters")));
    }
    Ok(())
}

fn realize(oracle: Arc<dyn CutOracle>, class: &CutClassification, gens: &[HahnSeries], mode: Mode, budgets: &Budgets) -> Result<Witness> {
    budgets.validate()?;
    let dim = gens.first().map(|g| g.dim()).or_else(|| oracle.approximants().first().map(|a| a.dim())).unwrap_or(1);
    let g = greedy(oracle.as_ref(), gens, mode, dim, budgets)?;
    let mut notes = Vec::new();
    let mut pseudo = false;
    let (value, case) = match class {
        CutClassification::Realized(x) => (x.clone(), "realized".to_string()),
        CutClassification::Group { d0, sign, below, above } => {
            if mode == Mode::Field {
                dimension_guard(gens.len() + 1, below, above)?;
            }
            let gamma = fill_exponent(below.iter().max(), above.iter().min(), budgets.denom, dim);
            let m = HahnSeries::t_pow(gamma.clone());
            notes.push(format!("new value {gamma}"));
            let w = if *sign > 0 { d0.add(&m) } else { d0.sub(&m) };
            (w, if mode == Mode::Field { "case 3: value fill".into() } else { "value fill".into() })
        }
        CutClassification::Residue { d0, scale, lo, hi, .. } => {
            let coef: CoefficientReal = match recognize_algebraic(lo, hi) {
                Some(r) => {
                    notes.push(format!("residue recognized as {r}"));
                    r.into()
                }
                None => {
                    notes.push("residue kept as an oracle real".into());
                    residue_oracle(oracle.clone(), d0.clone(), scale.clone(), lo.clone(), hi.clone()).into()
                }
            };
            let mut w = d0.add(&scale.scale(&coef));
            if !coef.is_oracle() {
                // Continue the walk below the residue's class.
                let j = g.basis.class_reps.iter().position(|h| h == scale).unwrap_or(0);
                for k in (0..j).rev() {
                    match g.step(&w, k)? {
                        Step::Realized(e) => {
                            w = e;
                            break;
                        }
                        Step::Absorbed(e) => w = e,
                        Step::Infinitesimal => {}
                        Step::Unbounded(_) | Step::Unmatched(..) => break,
                    }
                }
            }
            (w, if mode == Mode::Field { "case 2: residue fill".into() } else { "residue fill".into() })
        }
        CutClassification::Immediate { approximants, lower } => {
            if mode == Mode::Group {
                return Err(Error::OracleInconsistent("immediate-transcendental cut in group mode".into()));
            }
            pseudo = true;
            let (w, n) = immediate_fill(oracle.as_ref(), approximants, *lower, budgets)?;
            notes.extend(n);
            (w, "case 1: pseudo limit".into())
        }
    };
    // Check the value against side queries of bounded height.
    let mut checked = 0;
    let mut queries: Vec<HahnSeries> = height_enumeration(&g.basis.generators, budgets.height, 4096).into_iter().map(|(_, v)| v).collect();
    queries.extend(oracle.approximants());
    for q in &queries {
        let want = oracle.side(q)?;
        let got = Side::of(compare_series_with(q, &value, budgets.precision)?);
        if want != got {
            return Err(if pseudo {
                Error::PseudoLimitUnverified(q.to_string())
            } else {
                Error::OracleInconsistent(format!("witness {value} disagrees with the cut at {q}"))
            });
        }
        checked += 1;
    }
    Ok(Witness { value, case, notes, checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::classify::classify_cut;
    use crate::engine::oracle::{SequenceOracle, TargetOracle};
    use crate::hahn::parse_series;
    use crate::numbers::rational::{int, rat};
    use crate::valuation::PseudoSequence;

    fn s(t: &str) -> HahnSeries {
        parse_series(t, 1).unwrap()
    }

    fn run(x0: &str, gens: &[&str], mode: Mode) -> (CutClassification, Witness) {
        let o: Arc<dyn CutOracle> = Arc::new(TargetOracle::new(s(x0), 64));
        let g: Vec<HahnSeries> = gens.iter().map(|x| s(x)).collect();
        let b = Budgets::default();
        let c = classify_cut(o.as_ref(), &g, mode, &b).unwrap();
        let w = match mode {
            Mode::Group => realize_cut_group(o, &c, &g, &b),
            Mode::Field => realize_cut_field(o, &c, &g, &b),
        }
        .unwrap();
        (c, w)
    }

    #[test]
    fn exponents_between() {
        let e = |x: &[i64]| Exponent::from_ints(x);
        assert_eq!(fill_exponent(Some(&e(&[0])), Some(&e(&[1])), 8, 1), Exponent::new(vec![rat(1, 2)]));
        assert_eq!(fill_exponent(None, Some(&e(&[1])), 8, 1), e(&[0]));
        assert_eq!(fill_exponent(Some(&e(&[2])), None, 8, 1), e(&[3]));
        assert_eq!(fill_exponent(None, None, 8, 2), e(&[0, 0]));
        let a = Exponent::new(vec![rat(1, 7)]);
        let b = Exponent::new(vec![rat(1, 6)]);
        let m = fill_exponent(Some(&a), Some(&b), 8, 1);
        assert!(a < m && m < b);
        let m = fill_exponent(Some(&Exponent::new(vec![rat(1, 9)])), Some(&Exponent::new(vec![rat(1, 2)])), 8, 1);
        assert_eq!(m, Exponent::new(vec![rat(2, 7)]));
    }

    #[test]
    fn recognition() {
        let sq2 = RealAlgebraic::sqrt(&int(2)).unwrap();
        let (lo, hi) = sq2.approx(64);
        assert_eq!(recognize_algebraic(&lo, &hi).unwrap().to_string(), "alg[-2,0,1;1,2]");
        let (lo, hi) = (rat(29, 40) - pow2_neg(70), rat(29, 40) + pow2_neg(70));
        assert_eq!(recognize_algebraic(&lo, &hi).unwrap().as_rational(), Some(rat(29, 40)));
        // a cubic: x^3 - 2
        let c = RealAlgebraic::new(vec![int(-2), int(0), int(0), int(1)], int(1), int(2)).unwrap();
        let (lo, hi) = c.approx(64);
        assert_eq!(recognize_algebraic(&lo, &hi).unwrap().degree(), 3);
        // pi is not recognized at this precision
        let (lo, hi) = (rat(314159265358979, 100000000000000), rat(314159265358980, 100000000000000));
        assert!(recognize_algebraic(&lo, &hi).is_none());
    }

    #[test]
    fn residue_fill_recovers_the_coefficient() {
        let (c, w) = run("alg[-2,0,1;1,2]*t", &["t"], Mode::Group);
        assert_eq!(c.tag(), "residue-transcendental");
        assert_eq!(w.value.to_literal(), "alg[-2,0,1;1,2]*t^(1)");
        let (c, w) = run("alg[-3,0,1;1,2] + t", &["1", "t"], Mode::Field);
        assert_eq!(c.tag(), "residue-transcendental");
        assert_eq!(w.value, s("alg[-3,0,1;1,2] + t"));
        assert_eq!(w.case, "case 2: residue fill");
    }

    #[test]
    fn value_fill_uses_the_midpoint() {
        let (c, w) = run("t^(1/2)", &["1", "t"], Mode::Field);
        assert_eq!(c.tag(), "group-transcendental");
        assert_eq!(w.value, s("t^(1/2)"));
        let (_, w) = run("t^(1/3)", &["1", "t"], Mode::Field);
        assert_eq!(w.value, s("t^(1/2)"));
        let (_, w) = run("t - t^9", &["t", "t^2"], Mode::Group);
        assert_eq!(w.value, s("t - t^3"));
        assert!(w.checked > 0);
    }

    #[test]
    fn immediate_fill_is_a_pseudo_limit() {
        let seq = PseudoSequence::generated(60, |i| (1..=i as i64 + 1).fold(HahnSeries::zero(1), |acc, j| acc.add(&HahnSeries::t_pow(Exponent::new(vec![int(1) - rat(1, j)])))));
        let o: Arc<dyn CutOracle> = Arc::new(SequenceOracle::new(seq.clone(), 60, 9, 64));
        let b = Budgets::default();
        let g = [s("t")];
        let c = classify_cut(o.as_ref(), &g, Mode::Field, &b).unwrap();
        let w = realize_cut_field(o.clone(), &c, &g, &b).unwrap();
        assert_eq!(w.case, "case 1: pseudo limit");
        let a = seq.prefix(9).unwrap();
        assert!(is_pseudo_limit(&w.value, &a).unwrap());
        assert!(matches!(realize_cut_group(o, &c, &g, &b), Err(Error::OracleInconsistent(_))));
    }
}
