use std::cmp::Ordering;

use num_traits::{One, Zero};
use proptest::prelude::*;
use recsat::hahn::{compare_series, valuation};
use recsat::numbers::rational::rat;
use recsat::numbers::{CoefficientReal, RealAlgebraic};
use recsat::valuation::{check_pseudo_cauchy, is_valuation_independent, pseudo_limit, pseudo_limit_of, term_sign};
use recsat::{parse_series, valuation_basis, Exponent, HahnSeries, PseudoSequence, Rational, SpanBasis, Value};

const BUDGET: u32 = 64;

fn s(text: &str) -> HahnSeries {
    parse_series(text, 1).unwrap()
}

fn root2() -> CoefficientReal {
    RealAlgebraic::sqrt(&rat(2, 1)).unwrap().into()
}

/// Few exponents and small coefficients, so value classes collide often.
fn element() -> impl Strategy<Value = HahnSeries> {
    let coeff = prop_oneof![
        4 => (-4i64..=4, 1i64..=3).prop_filter("nonzero", |(p, _)| *p != 0).prop_map(|(p, q)| CoefficientReal::from(rat(p, q))),
        1 => Just(root2()),
    ];
    prop::collection::vec((0i64..=3, coeff), 1..=3)
        .prop_map(|ts| HahnSeries::from_terms(1, ts.into_iter().map(|(e, c)| (Exponent::from_ints(&[e]), c)), None))
        .prop_filter("nonzero", |x| !x.is_zero())
}

fn rational_element() -> impl Strategy<Value = HahnSeries> {
    prop::collection::vec((0i64..=3, -3i64..=3), 1..=3)
        .prop_map(|ts| HahnSeries::from_terms(1, ts.into_iter().filter(|(_, c)| *c != 0).map(|(e, c)| (Exponent::from_ints(&[e]), CoefficientReal::from(rat(c, 1)))), None))
        .prop_filter("nonzero", |x| !x.is_zero())
}

fn q_vec(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-8i64..=8, 1i64..=8), n).prop_map(|v| v.into_iter().map(|(p, q)| rat(p, q)).collect())
}

fn combine(qs: &[Rational], gs: &[HahnSeries]) -> HahnSeries {
    qs.iter().zip(gs).fold(HahnSeries::zero(1), |acc, (q, g)| acc.add(&g.scale_rational(q)))
}

/// Rank of the coefficient matrix of rational-coefficient series, by plain elimination.
fn rank(gs: &[HahnSeries]) -> usize {
    let exps: Vec<Exponent> = {
        let mut e: Vec<Exponent> = gs.iter().flat_map(|g| g.terms().iter().map(|(e, _)| e.clone())).collect();
        e.sort();
        e.dedup();
        e
    };
    let mut rows: Vec<Vec<Rational>> = gs
        .iter()
        .map(|g| exps.iter().map(|e| g.terms().iter().find(|(f, _)| f == e).map_or(Rational::zero(), |(_, c)| c.as_rational().unwrap().clone())).collect())
        .collect();
    let mut r = 0;
    for col in 0..exps.len() {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = &rows[i][col] / &rows[r][col];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

fn check_basis(gs: &[HahnSeries], b: &SpanBasis) -> Result<(), TestCaseError> {
    prop_assert!(is_valuation_independent(&b.generators, BUDGET).unwrap());
    for (i, g) in b.generators.iter().enumerate() {
        prop_assert_eq!(&combine(&b.change_of_basis[i], gs), g);
        prop_assert_eq!(compare_series(g, &HahnSeries::zero(1)).unwrap(), Ordering::Greater);
    }
    for w in b.generators.windows(2) {
        prop_assert_eq!(compare_series(&w[0], &w[1]).unwrap(), Ordering::Less);
    }
    for g in gs {
        let coords = b.express(g, BUDGET).unwrap();
        prop_assert!(coords.is_some(), "{} not in the span", g);
        prop_assert_eq!(&b.combine(&coords.unwrap(), 1), g);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn basis_is_independent_and_spans(gs in prop::collection::vec(element(), 1..=4)) {
        let b = valuation_basis(&gs, BUDGET).unwrap();
        check_basis(&gs, &b)?;
    }

    #[test]
    fn basis_size_is_the_rank(gs in prop::collection::vec(rational_element(), 1..=5)) {
        let b = valuation_basis(&gs, BUDGET).unwrap();
        prop_assert_eq!(b.len(), rank(&gs));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn value_of_a_combination_is_the_least_value(gs in prop::collection::vec(element(), 1..=4), qs in prop::collection::vec(q_vec(4), 200)) {
        let b = valuation_basis(&gs, BUDGET).unwrap();
        for q in &qs {
            let q = &q[..b.len()];
            let direct = valuation(&combine(q, &b.generators));
            let least = q.iter().zip(&b.generators).filter(|(c, _)| !c.is_zero()).map(|(_, g)| valuation(g)).min().unwrap_or(Value::Infinity);
            prop_assert_eq!(direct, least);
        }
    }
}

fn all_vectors(m: usize) -> Vec<Vec<Rational>> {
    (0..7usize.pow(m as u32)).map(|mut k| (0..m).map(|_| { let d = (k % 7) as i64 - 3; k /= 7; rat(d, 1) }).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn term_sign_agrees_with_series_order(gs in prop::collection::vec(element(), 1..=3)) {
        let b = valuation_basis(&gs, BUDGET).unwrap();
        for sv in all_vectors(b.len()) {
            let want = match compare_series(&combine(&sv, &b.generators), &HahnSeries::zero(1)).unwrap() {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            };
            prop_assert_eq!(term_sign(&sv, &b, BUDGET).unwrap(), want, "s = {:?}", sv);
        }
    }
}

/// A pseudo-Cauchy prefix: each step adds a term of strictly larger value plus a tail above it.
fn pseudo_cauchy() -> impl Strategy<Value = Vec<HahnSeries>> {
    let start = prop::collection::vec((-2i64..=2, -3i64..=3), 0..=2);
    let steps = prop::collection::vec((1i64..=3, 1i64..=4, -3i64..=3, 1i64..=3, -2i64..=2), 2..=7);
    (start, steps).prop_map(|(start, steps)| {
        let mut a = HahnSeries::from_terms(1, start.into_iter().filter(|(_, c)| *c != 0).map(|(e, c)| (Exponent::from_ints(&[e]), CoefficientReal::from(rat(c, 1)))), None);
        let mut e = rat(0, 1);
        let mut out = vec![a.clone()];
        for (num, den, c, tail_gap, tail_c) in steps {
            e += rat(num, den);
            let c = if c == 0 { 1 } else { c };
            let mut step = HahnSeries::t_pow(Exponent::first(1, e.clone())).scale_rational(&rat(c, 1));
            if tail_c != 0 {
                step = step.add(&HahnSeries::t_pow(Exponent::first(1, &e + rat(tail_gap, 2))).scale_rational(&rat(tail_c, 1)));
            }
            a = a.add(&step);
            out.push(a.clone());
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pseudo_limit_meets_the_equalities(a in pseudo_cauchy()) {
        let x = pseudo_limit_of(&a).unwrap();
        for i in 0..a.len() - 1 {
            prop_assert_eq!(valuation(&x.sub(&a[i])), valuation(&a[i + 1].sub(&a[i])), "i = {}", i);
        }
    }

    #[test]
    fn last_element_is_an_earlier_limit(a in pseudo_cauchy()) {
        let last = a.last().unwrap();
        for i in 0..a.len().saturating_sub(2) {
            prop_assert_eq!(valuation(&last.sub(&a[i])), valuation(&a[i + 1].sub(&a[i])), "i = {}", i);
        }
    }
}

#[test]
fn independence_examples() {
    assert!(is_valuation_independent(&[s("t"), s("t^2")], BUDGET).unwrap());
    assert!(!is_valuation_independent(&[s("t"), s("2*t")], BUDGET).unwrap());
    assert!(!is_valuation_independent(&[s("t + t^2"), s("t")], BUDGET).unwrap());
    // the witness of the last one: q = (1, -1) lands strictly above min(1, 1)
    assert_eq!(valuation(&s("t + t^2").sub(&s("t"))), valuation(&s("t^2")));
    assert!(is_valuation_independent(&[s("t"), s("alg[-2,0,1;1,2]*t")], BUDGET).unwrap());
}

#[test]
fn basis_examples() {
    assert_eq!(valuation_basis(&[s("t")], BUDGET).unwrap().generators, vec![s("t")]);
    let b = valuation_basis(&[s("t + t^2"), s("t")], BUDGET).unwrap();
    let mut gens = b.generators.clone();
    gens.sort_by(|x, y| compare_series(x, y).unwrap());
    assert_eq!(gens, vec![s("t^2"), s("t")]);
    let gs = [s("t"), s("t^2"), s("t + t^2")];
    let b = valuation_basis(&gs, BUDGET).unwrap();
    assert_eq!(b.len(), 2);
    assert_eq!(rank(&gs), 2);
    for g in &gs {
        assert!(b.express(g, BUDGET).unwrap().is_some());
    }
}

#[test]
fn term_sign_examples() {
    let b = SpanBasis::from_independent(vec![s("t"), s("alg[-2,0,1;1,2]*t")], BUDGET).unwrap();
    assert_eq!(term_sign(&[Rational::zero(), Rational::zero()], &b, BUDGET).unwrap(), 0);
    assert_eq!(term_sign(&[rat(-5, 1), Rational::zero()], &b, BUDGET).unwrap(), -1);
    let sv = [rat(-3, 1), rat(2, 1)];
    // 2 sqrt 2 - 3 < 0 since 8 < 9
    assert_eq!(term_sign(&sv, &b, BUDGET).unwrap(), -1);
    assert_eq!(compare_series(&b.combine(&sv, 1), &HahnSeries::zero(1)).unwrap(), Ordering::Less);
    let one = SpanBasis::from_independent(vec![s("t^3")], BUDGET).unwrap();
    assert_eq!(term_sign(&[Rational::one()], &one, BUDGET).unwrap(), 1);
}

fn factorial(j: i64) -> i64 {
    (1..=j).product()
}

#[test]
fn pseudo_cauchy_examples() {
    let sums = PseudoSequence::generated(5, |i| (0..=i as i64).fold(HahnSeries::zero(1), |acc, j| acc.add(&HahnSeries::t_pow(Exponent::from_ints(&[j])))));
    assert!(check_pseudo_cauchy(&sums, 5).unwrap());
    let lin = PseudoSequence::generated(3, |i| s("t").scale_rational(&rat(i as i64, 1)));
    assert!(!check_pseudo_cauchy(&lin, 3).unwrap());
    // sum over 1 <= j <= i+1 of t^(2 - 1/j) / j!: exponents 1, 3/2, 5/3, ... strictly increase
    let fact = PseudoSequence::generated(6, |i| {
        (1..=i as i64 + 1).fold(HahnSeries::zero(1), |acc, j| acc.add(&HahnSeries::t_pow(Exponent::first(1, rat(2 * j - 1, j))).scale_rational(&rat(1, factorial(j)))))
    });
    assert!(check_pseudo_cauchy(&fact, 6).unwrap());
    assert!(matches!(check_pseudo_cauchy(&fact, 7), Err(recsat::Error::TruncationInsufficient(_))));
}

#[test]
fn pseudo_limit_examples() {
    let a = [s("1"), s("1 + t^(1/2)"), s("1 + t^(1/2) + t^(2/3)")];
    let x = pseudo_limit_of(&a).unwrap();
    assert_eq!(valuation(&x.sub(&a[0])), valuation(&a[1].sub(&a[0])));
    assert_eq!(valuation(&x.sub(&a[1])), valuation(&a[2].sub(&a[1])));
    let sums = PseudoSequence::generated(4, |i| (0..=i as i64).fold(HahnSeries::zero(1), |acc, j| acc.add(&HahnSeries::t_pow(Exponent::from_ints(&[j])))));
    let x = pseudo_limit(&sums, 4).unwrap();
    assert_eq!(x, s("1 + t + t^2 + t^3"));
    let repeated = [s("1"), s("1 + t"), s("1 + t")];
    assert!(matches!(pseudo_limit_of(&repeated), Err(recsat::Error::NotPseudoCauchy(_))));
}
