//! A shared number field for finitely many real algebraic numbers.
//!
//! Every element is written as a ℚ-vector in the power basis of one primitive
//! element, which turns ℚ-linear dependence into a kernel computation.

use num_traits::{One, Zero};

use super::algebraic::RealAlgebraic;
use super::linalg::column_kernel;
use super::poly::QPoly;
use super::rational::{int, Rational};

/// `ℚ[y] / m(y)` with `m` monic irreducible.
#[derive(Clone, Debug)]
struct Field {
    m: QPoly,
}

impl Field {
    fn reduce(&self, p: &QPoly) -> QPoly {
        p.rem(&self.m)
    }

    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.reduce(&a.mul(b))
    }

    fn inv(&self, a: &QPoly) -> QPoly {
        // extended Euclid: s*a + t*m = 1
        let (mut r0, mut r1) = (self.m.clone(), a.clone());
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::constant(Rational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant since m is irreducible and a != 0 mod m
        self.reduce(&s0.scale(&(Rational::one() / r0.coeff(0))))
    }

    /// Evaluate a ℚ-polynomial at a field element.
    fn eval(&self, p: &QPoly, at: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, at).add(&QPoly::constant(c.clone()));
        }
        acc
    }
}

/// Polynomials in `X` whose coefficients lie in a [`Field`].
type FPoly = Vec<QPoly>;

fn trim(mut p: FPoly) -> FPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn frem(f: &Field, a: &FPoly, b: &FPoly) -> FPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv_lc = f.inv(&b[db]);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = f.mul(r.last().unwrap(), &inv_lc);
        for (j, bc) in b.iter().enumerate() {
            r[k + j] = f.reduce(&r[k + j].sub(&f.mul(&c, bc)));
        }
        r = trim(r);
    }
    r
}

fn fgcd(f: &Field, a: FPoly, b: FPoly) -> FPoly {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = frem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// `m(y - kX)` expanded in `X` over the field.
fn substituted(f: &Field, m: &QPoly, k: &Rational) -> FPoly {
    let y = f.reduce(&QPoly::x());
    // (y - kX) as FPoly
    let lin: FPoly = vec![y, QPoly::constant(-k.clone())];
    let mut acc: FPoly = Vec::new();
    for c in m.coeffs().iter().rev() {
        // acc = acc * lin + c
        let mut next = vec![QPoly::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, l) in lin.iter().enumerate() {
                next[i + j] = f.reduce(&next[i + j].add(&f.mul(a, l)));
            }
        }
        next[0] = next[0].add(&QPoly::constant(c.clone()));
        acc = trim(next);
    }
    acc
}

/// Coordinates of `elems` in a common power basis `1, θ, …, θ^{d-1}`.
pub fn common_coordinates(elems: &[RealAlgebraic]) -> Vec<Vec<Rational>> {
    let mut theta = RealAlgebraic::from_rational(&Rational::zero());
    let mut field = Field { m: QPoly::x() };
    let mut reps: Vec<QPoly> = Vec::with_capacity(elems.len());
    for c in elems {
        if let Some(q) = c.as_rational() {
            reps.push(QPoly::constant(q));
            continue;
        }
        let pc = c.poly().monic();
        let mut k = 1i64;
        loop {
            let kq = int(k);
            let cand = theta.add(&c.mul(&RealAlgebraic::from_rational(&kq)));
            let nf = Field { m: cand.poly().monic() };
            let p1: FPoly = pc.coeffs().iter().map(|a| QPoly::constant(a.clone())).collect();
            let p2 = substituted(&nf, &field.m, &kq);
            let g = fgcd(&nf, p1, p2);
            if g.len() == 2 {
                let c_in = nf.reduce(&nf.mul(&g[0], &nf.inv(&g[1])).neg());
                let y = nf.reduce(&QPoly::x());
                let old_theta = nf.reduce(&y.sub(&c_in.scale(&kq)));
                for r in reps.iter_mut() {
                    *r = nf.eval(r, &old_theta);
                }
                reps.push(c_in);
                theta = cand;
                field = nf;
                break;
            }
            k += 1;
        }
    }
    let d = field.m.degree().unwrap_or(1).max(1);
    reps.iter().map(|r| (0..d).map(|i| r.coeff(i)).collect()).collect()
}

/// Basis of all rational vectors `q` with `Σ q_i * elems[i] = 0`.
pub fn rational_relations(elems: &[RealAlgebraic]) -> Vec<Vec<Rational>> {
    if elems.is_empty() {
        return Vec::new();
    }
    column_kernel(&common_coordinates(elems))
}

pub fn linearly_independent(elems: &[RealAlgebraic]) -> bool {
    rational_relations(elems).is_empty()
}
