//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial is the empty vector. Everything the real-algebraic layer
//! needs lives here: Sturm chains, root counting, square-free parts,
//! resultants by evaluation/interpolation and exact factorization over ℤ.

use std::fmt;

use algebraics::polynomial::Polynomial as IntPolynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of `self(x)` as -1, 0, 1.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &Rational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn pow(&self, e: usize) -> QPoly {
        let mut acc = QPoly::constant(Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lc();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lc();
        self.scale(&(Rational::one() / lc))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`, monic.
    pub fn square_free(&self) -> QPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// `self(-x)`
    pub fn reflect(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect())
    }

    /// `x^deg * self(1/x)`
    pub fn reverse(&self) -> QPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        QPoly::new(c)
    }

    /// `self(x - s)`
    pub fn shift(&self, s: &Rational) -> QPoly {
        let lin = QPoly::linear_root(s);
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&QPoly::constant(c.clone()));
        }
        acc
    }

    /// `self(x / k)` scaled to keep integrality irrelevant; roots are multiplied by `k`.
    pub fn scale_roots(&self, k: &Rational) -> QPoly {
        let inv = Rational::one() / k;
        let mut p = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &p);
            p *= &inv;
        }
        QPoly::new(out)
    }

    /// Standard Sturm chain `p, p', -rem(p, p'), ...`.
    pub fn sturm_chain(&self) -> Vec<QPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        chain.retain(|p| !p.is_zero());
        chain
    }

    /// Number of distinct real roots in the closed interval `[lo, hi]`.
    pub fn count_roots(&self, lo: &Rational, hi: &Rational) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let sf = self.square_free();
        let chain = sf.sturm_chain();
        let var = |x: &Rational| {
            let mut last = 0i8;
            let mut changes = 0usize;
            for p in &chain {
                let s = p.sign_at(x);
                if s != 0 {
                    if last != 0 && s != last {
                        changes += 1;
                    }
                    last = s;
                }
            }
            changes
        };
        let inner = var(lo).saturating_sub(var(hi));
        inner + usize::from(sf.sign_at(lo) == 0)
    }

    /// Cauchy bound: every real root has absolute value below the result.
    pub fn root_bound(&self) -> Rational {
        let lc = self.lc().abs();
        let m = self.coeffs[..self.coeffs.len() - 1].iter().map(|c| c.abs() / &lc).max().unwrap_or_else(Rational::zero);
        m + Rational::one()
    }

    /// Primitive integer polynomial with positive leading coefficient and the same roots.
    pub fn to_primitive_ints(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
        if ints.last().unwrap().is_negative() {
            for c in ints.iter_mut() {
                *c = -&*c;
            }
        }
        ints
    }

    /// Irreducible factors over ℚ (primitive integer form), multiplicities dropped.
    pub fn irreducible_factors(&self) -> Vec<QPoly> {
        let ints = self.to_primitive_ints();
        if ints.len() <= 2 {
            return vec![QPoly::from_bigints(&ints)];
        }
        let p: IntPolynomial<BigInt> = ints.into();
        p.factor()
            .polynomial_factors
            .into_iter()
            .map(|f| QPoly::from_bigints(&f.polynomial.into_coefficients()))
            .filter(|f| f.degree().unwrap_or(0) > 0)
            .collect()
    }
}

/// Determinant over ℚ by Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    det
}

/// Resultant of two univariate polynomials via the Sylvester matrix.
pub fn resultant(f: &QPoly, g: &QPoly) -> Rational {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Rational::zero();
    };
    if m == 0 && n == 0 {
        return Rational::one();
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Rational::zero(); size];
        for (j, c) in f.coeffs.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Rational::zero(); size];
        for (j, c) in g.coeffs.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> QPoly {
    let mut acc = QPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = QPoly::constant(Rational::one());
        let mut denom = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&QPoly::linear_root(xj));
                denom *= xi - xj;
            }
        }
        acc = acc.add(&basis.scale(&(yi / denom)));
    }
    acc
}

/// Polynomial whose roots include every `a + b` for roots `a` of `p`, `b` of `q`:
/// `Res_y(p(y), q(x - y))`.
pub fn sum_polynomial(p: &QPoly, q: &QPoly) -> QPoly {
    let n = p.degree().unwrap() * q.degree().unwrap();
    let xs: Vec<Rational> = (0..=n as i64).map(int).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| {
            // q(x - y) as a polynomial in y
            let qy = q.reflect().shift(x);
            resultant(p, &qy)
        })
        .collect();
    interpolate(&xs, &ys)
}

/// Polynomial whose roots include every `a * b`: `Res_y(p(y), y^deg q * q(x / y))`.
pub fn product_polynomial(p: &QPoly, q: &QPoly) -> QPoly {
    let dq = q.degree().unwrap();
    let n = p.degree().unwrap() * dq;
    let xs: Vec<Rational> = (1..=n as i64 + 1).map(int).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| {
            let mut pow = Rational::one();
            let mut coeffs = vec![Rational::zero(); dq + 1];
            for i in 0..=dq {
                coeffs[dq - i] = q.coeff(i) * &pow;
                pow *= x;
            }
            resultant(p, &QPoly::new(coeffs))
        })
        .collect();
    interpolate(&xs, &ys)
}
