//! Valuation independence and valuation bases of finite-rank ℚ-subspaces.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hahn::{compare_series_with, Exponent, HahnSeries, Value};
use crate::numbers::creal::CoefficientReal;
use crate::numbers::field::common_coordinates;
use crate::numbers::linalg::solve_columns;
use crate::numbers::rational::Rational;
use crate::numbers::{coefficient_relations, RealAlgebraic};

/// A valuation basis `0 < g_1 < … < g_m` together with its archimedean data.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    pub generators: Vec<HahnSeries>,
    /// Index into `class_reps` for each generator.
    pub class_of: Vec<usize>,
    /// One positive representative per class, `h_1 << h_2 << …`.
    pub class_reps: Vec<HahnSeries>,
    /// `g_i / h_{class_of[i]}` as a real.
    pub component_reals: Vec<CoefficientReal>,
    /// `generators[i] = Σ_k change_of_basis[i][k] * input[k]`.
    pub change_of_basis: Vec<Vec<Rational>>,
}

fn lead_exp(x: &HahnSeries) -> Option<Exponent> {
    x.valuation().finite().cloned()
}

/// Group indices by valuation.
fn classes(gs: &[HahnSeries]) -> Vec<(Exponent, Vec<usize>)> {
    let mut out: Vec<(Exponent, Vec<usize>)> = Vec::new();
    for (i, g) in gs.iter().enumerate() {
        let e = lead_exp(g).expect("nonzero element");
        match out.iter_mut().find(|(x, _)| *x == e) {
            Some((_, v)) => v.push(i),
            None => out.push((e, vec![i])),
        }
    }
    out
}

pub fn is_valuation_independent(gs: &[HahnSeries], budget: u32) -> Result<bool> {
    if gs.iter().any(|g| g.valuation() == Value::Infinity) {
        return Ok(false);
    }
    for (_, idx) in classes(gs) {
        let leads: Vec<CoefficientReal> = idx.iter().map(|&i| gs[i].lead_coeff().unwrap().clone()).collect();
        if !coefficient_relations(&leads, budget)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Valuation basis of the ℚ-span of `gs`.
///
/// Repeatedly cancels the leading coefficients of a ℚ-dependent class. Each
/// step raises one valuation inside the finite union of input supports, so
/// the loop terminates.
pub fn valuation_basis(gs: &[HahnSeries], budget: u32) -> Result<SpanBasis> {
    let n = gs.len();
    let mut work: Vec<(HahnSeries, Vec<Rational>)> = gs
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            (g.clone(), v)
        })
        .collect();
    'outer: loop {
        let series: Vec<HahnSeries> = work.iter().map(|(g, _)| g.clone()).collect();
        for (_, idx) in classes(&series) {
            if idx.len() < 2 {
                continue;
            }
            let leads: Vec<CoefficientReal> = idx.iter().map(|&i| series[i].lead_coeff().unwrap().clone()).collect();
            let rels = coefficient_relations(&leads, budget)?;
            let Some(rel) = rels.first() else { continue };
            // replace the longest element involved, so short generators survive
            let pivot = (0..idx.len()).filter(|&j| !rel[j].is_zero()).max_by_key(|&j| (series[idx[j]].terms().len(), j)).unwrap();
            let qp = rel[pivot].clone();
            let mut comb = HahnSeries::zero(series[0].dim());
            let mut cv = vec![Rational::zero(); n];
            for (j, &i) in idx.iter().enumerate() {
                if rel[j].is_zero() {
                    continue;
                }
                let q = &rel[j] / &qp;
                comb = comb.add(&work[i].0.scale_rational(&q));
                for (c, w) in cv.iter_mut().zip(&work[i].1) {
                    *c += &q * w;
                }
            }
            let target = idx[pivot];
            if comb.is_zero() {
                work.remove(target);
            } else {
                work[target] = (comb, cv);
            }
            continue 'outer;
        }
        break;
    }
    for (g, v) in work.iter_mut() {
        if g.sign(budget)? < 0 {
            *g = g.neg();
            for c in v.iter_mut() {
                *c = -c.clone();
            }
        }
    }
    let mut err = None;
    work.sort_by(|a, b| match compare_series_with(&a.0, &b.0, budget) {
        Ok(o) => o,
        Err(e) => {
            err.get_or_insert(e);
            Ordering::Equal
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    from_sorted(work.into_iter().unzip(), budget)
}

fn from_sorted((generators, change_of_basis): (Vec<HahnSeries>, Vec<Vec<Rational>>), _budget: u32) -> Result<SpanBasis> {
    let mut class_reps: Vec<HahnSeries> = Vec::new();
    let mut class_of = Vec::with_capacity(generators.len());
    let mut component_reals = Vec::with_capacity(generators.len());
    for g in &generators {
        let e = lead_exp(g).unwrap();
        let j = match class_reps.iter().position(|h| lead_exp(h).as_ref() == Some(&e)) {
            Some(j) => j,
            None => {
                class_reps.push(g.clone());
                class_reps.len() - 1
            }
        };
        class_of.push(j);
        component_reals.push(g.lead_coeff().unwrap().div(class_reps[j].lead_coeff().unwrap())?);
    }
    Ok(SpanBasis { generators, class_of, class_reps, component_reals, change_of_basis })
}

impl SpanBasis {
    /// Build from generators already known to be a sorted positive valuation basis.
    pub fn from_independent(gens: Vec<HahnSeries>, budget: u32) -> Result<Self> {
        if !is_valuation_independent(&gens, budget)? {
            return Err(Error::Unsupported("generators are not valuation independent".into()));
        }
        let n = gens.len();
        let id = (0..n).map(|i| (0..n).map(|k| if i == k { Rational::one() } else { Rational::zero() }).collect()).collect();
        from_sorted((gens, id), budget)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.generators.first().map(|g| g.dim())
    }

    /// `Σ s_i g_i` computed in the model.
    pub fn combine(&self, s: &[Rational], dim: usize) -> HahnSeries {
        s.iter().zip(&self.generators).fold(HahnSeries::zero(dim), |acc, (q, g)| if q.is_zero() { acc } else { acc.add(&g.scale_rational(q)) })
    }

    /// Valuation of `Σ s_i g_i` read off the basis.
    pub fn value_of(&self, s: &[Rational]) -> Value {
        s.iter()
            .zip(&self.generators)
            .filter(|(q, _)| !q.is_zero())
            .map(|(_, g)| g.valuation())
            .min()
            .unwrap_or(Value::Infinity)
    }

    /// Coordinates of `x` in the basis, if `x` lies in the span.
    pub fn express(&self, x: &HahnSeries, budget: u32) -> Result<Option<Vec<Rational>>> {
        let mut rest = x.clone();
        let mut coords = vec![Rational::zero(); self.len()];
        while let Some((e, c)) = rest.leading().cloned() {
            let idx: Vec<usize> = (0..self.len()).filter(|&i| lead_exp(&self.generators[i]).as_ref() == Some(&e)).collect();
            if idx.is_empty() {
                return Ok(None);
            }
            let mut leads: Vec<CoefficientReal> = idx.iter().map(|&i| self.generators[i].lead_coeff().unwrap().clone()).collect();
            let q = if leads.iter().chain(std::iter::once(&c)).all(|x| !x.is_oracle()) {
                leads.push(c.clone());
                let exact: Vec<RealAlgebraic> = leads.iter().map(|x| x.exact().unwrap()).collect();
                let cols = common_coordinates(&exact);
                let (target, basis) = cols.split_last().unwrap();
                match solve_columns(basis, target) {
                    Some(q) => q,
                    None => return Ok(None),
                }
            } else {
                // only a generator structurally proportional to `c` can be matched
                let mut found = None;
                for (j, l) in leads.iter().enumerate() {
                    if let Some(ratio) = c.div(l)?.as_rational() {
                        let mut q = vec![Rational::zero(); idx.len()];
                        q[j] = ratio.clone();
                        found = Some(q);
                        break;
                    }
                }
                match found {
                    Some(q) => q,
                    None => return Err(Error::ComparisonUndecidedAtPrecision(budget)),
                }
            };
            for (j, &i) in idx.iter().enumerate() {
                if !q[j].is_zero() {
                    coords[i] += &q[j];
                    rest = rest.sub(&self.generators[i].scale_rational(&q[j]));
                }
            }
            if rest.valuation() <= Value::Finite(e) {
                return Ok(None);
            }
        }
        if rest.trunc().is_some() {
            return Err(Error::TruncationInsufficient("remainder lies beyond the truncation bound".into()));
        }
        Ok(Some(coords))
    }
}

/// Sign of `Σ s_i g_i` from the basis data alone: only the class of least
/// valuation among the supported generators matters, and there the sign is
/// that of `Σ s_i r_i`.
pub fn term_sign(s: &[Rational], basis: &SpanBasis, budget: u32) -> Result<i8> {
    if s.len() != basis.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), found: s.len() });
    }
    let Some(top) = (0..s.len()).filter(|&i| !s[i].is_zero()).map(|i| basis.class_of[i]).max() else {
        return Ok(0);
    };
    let mut acc = CoefficientReal::zero();
    for i in 0..s.len() {
        if basis.class_of[i] == top && !s[i].is_zero() {
            acc = acc.add(&basis.component_reals[i].scale(&s[i]));
        }
    }
    acc.sign(budget)
}
