//! Real algebraic numbers as (minimal polynomial, isolating interval).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{product_polynomial, sum_polynomial, QPoly};
use super::rational::{fmt_rational, midpoint, parse_rational, pow2_neg, Rational};
use crate::error::{Error, Result};

/// A real root of an irreducible integer polynomial.
///
/// The polynomial is always the primitive minimal polynomial with positive
/// leading coefficient, and the interval is the canonical one: the coarsest
/// dyadic cell `[j/2^k, (j+1)/2^k]`, `k >= 0`, holding no other root. Rational
/// values use a degree-one polynomial and the point interval. Because the
/// representation is canonical, structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RealAlgebraic {
    poly: QPoly,
    lo: Rational,
    hi: Rational,
}

impl fmt::Debug for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", fmt_rational(&q));
        }
        let cs: Vec<String> = self.poly.coeffs().iter().map(fmt_rational).collect();
        write!(f, "alg[{};{},{}]", cs.join(","), fmt_rational(&self.lo), fmt_rational(&self.hi))
    }
}

/// Bisect an isolating interval of a simple root once.
fn bisect(p: &QPoly, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mid = midpoint(lo, hi);
    let sm = p.sign_at(&mid);
    if sm == 0 {
        return (mid.clone(), mid);
    }
    let sl = p.sign_at(lo);
    if sl == 0 {
        return (lo.clone(), lo.clone());
    }
    if sl != sm {
        (lo.clone(), mid)
    } else {
        (mid, hi.clone())
    }
}

impl RealAlgebraic {
    /// The root of `coeffs` (lowest degree first) isolated in `[lo, hi]`.
    pub fn new(coeffs: Vec<Rational>, lo: Rational, hi: Rational) -> Result<Self> {
        Self::from_poly(&QPoly::new(coeffs), lo, hi)
    }

    pub fn from_poly(p: &QPoly, lo: Rational, hi: Rational) -> Result<Self> {
        if p.degree().unwrap_or(0) == 0 {
            return Err(Error::MalformedAlgebraic("constant polynomial has no isolated root".into()));
        }
        if lo > hi {
            return Err(Error::MalformedAlgebraic(format!("empty interval [{lo}, {hi}]")));
        }
        let n = p.count_roots(&lo, &hi);
        if n != 1 {
            return Err(Error::MalformedAlgebraic(format!("interval [{lo}, {hi}] holds {n} roots")));
        }
        let factor = p
            .irreducible_factors()
            .into_iter()
            .find(|f| f.count_roots(&lo, &hi) == 1)
            .expect("one irreducible factor carries the root");
        Ok(Self::canonical(factor, lo, hi))
    }

    pub fn from_rational(q: &Rational) -> Self {
        RealAlgebraic { poly: QPoly::from_bigints(&QPoly::linear_root(q).to_primitive_ints()), lo: q.clone(), hi: q.clone() }
    }

    /// `sqrt(q)` for positive rational `q`.
    pub fn sqrt(q: &Rational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::MalformedAlgebraic("square root of a non-positive rational".into()));
        }
        let p = QPoly::new(vec![-q.clone(), Rational::zero(), Rational::one()]);
        let hi = q + Rational::one();
        Self::from_poly(&p, Rational::zero(), hi)
    }

    /// Build from an irreducible primitive factor and any isolating interval.
    fn canonical(p: QPoly, lo: Rational, hi: Rational) -> Self {
        let p = QPoly::from_bigints(&p.to_primitive_ints());
        if p.degree() == Some(1) {
            let r = -p.coeff(0) / p.coeff(1);
            return RealAlgebraic { poly: p, lo: r.clone(), hi: r };
        }
        let (mut lo, mut hi) = (lo, hi);
        let mut k: u32 = 0;
        loop {
            let scale = Rational::from_integer(num_bigint::BigInt::one() << k as usize);
            let cell = |x: &Rational| (x * &scale).floor();
            // Roots of an irreducible polynomial of degree >= 2 are never dyadic,
            // so bisection eventually puts the root strictly inside one cell.
            while cell(&lo) != cell(&hi) {
                (lo, hi) = bisect(&p, &lo, &hi);
            }
            let c = cell(&lo);
            let clo = &c / &scale;
            let chi = (&c + Rational::one()) / &scale;
            if p.count_roots(&clo, &chi) == 1 {
                return RealAlgebraic { poly: p, lo: clo, hi: chi };
            }
            k += 1;
        }
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.degree() == 1).then(|| self.lo.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.degree() == 1 && self.lo.is_zero()
    }

    /// An isolating interval of width at most `2^-n`; successive `n` give nested intervals.
    pub fn approx(&self, n: u32) -> (Rational, Rational) {
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        let w = pow2_neg(n);
        while &hi - &lo > w {
            (lo, hi) = bisect(&self.poly, &lo, &hi);
        }
        (lo, hi)
    }

    /// `floor(self * 2^n)`.
    pub fn floor_scaled(&self, n: u32) -> num_bigint::BigInt {
        let scale = Rational::from_integer(num_bigint::BigInt::one() << n as usize);
        if let Some(q) = self.as_rational() {
            return (q * scale).floor().to_integer();
        }
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        while (&lo * &scale).floor() != (&hi * &scale).floor() {
            (lo, hi) = bisect(&self.poly, &lo, &hi);
        }
        (lo * scale).floor().to_integer()
    }

    /// Refine until the interval excludes `x` (which must differ from the value).
    fn refine_away(&self, x: &Rational) -> (Rational, Rational) {
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        while &lo <= x && x <= &hi {
            (lo, hi) = bisect(&self.poly, &lo, &hi);
        }
        (lo, hi)
    }

    pub fn sign(&self) -> i8 {
        if let Some(q) = self.as_rational() {
            return if q.is_zero() { 0 } else if q.is_positive() { 1 } else { -1 };
        }
        let (lo, _) = self.refine_away(&Rational::zero());
        if lo.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        if let Some(r) = self.as_rational() {
            return r.cmp(q);
        }
        let (lo, _) = self.refine_away(q);
        if &lo > q {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    pub fn neg(&self) -> Self {
        if let Some(q) = self.as_rational() {
            return Self::from_rational(&-q);
        }
        // the minimal dyadic cell is mirror-invariant, so no re-isolation is needed
        let poly = QPoly::from_bigints(&self.poly.reflect().to_primitive_ints());
        RealAlgebraic { poly, lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    /// `r + s sqrt(d)` for a quadratic value.
    fn quadratic(&self) -> Option<Quadratic> {
        if self.degree() != 2 {
            return None;
        }
        let c: Vec<BigInt> = self.poly.coeffs().iter().map(|x| x.to_integer()).collect();
        let d = &c[1] * &c[1] - BigInt::from(4) * &c[2] * &c[0];
        let r = Rational::new(-c[1].clone(), BigInt::from(2) * &c[2]);
        let s = Rational::new(BigInt::one(), BigInt::from(2) * &c[2]);
        let s = if self.cmp_rational(&r) == Ordering::Greater { s } else { -s };
        Some(Quadratic { r, s, d })
    }

    /// `q` with `other = q * self`, if there is one.
    pub fn rational_ratio(&self, other: &Self) -> Option<Rational> {
        let d = self.degree();
        if d < 2 || other.degree() != d {
            return None;
        }
        let (p, r) = (self.poly.coeffs(), other.poly.coeffs());
        let k = (0..d).rev().find(|&i| !p[i].is_zero())?;
        if r[k].is_zero() {
            return None;
        }
        // matching the two top nonzero coefficients pins q^(d-k)
        let power = (&r[k] / &r[d]) / (&p[k] / &p[d]);
        for q in rational_roots(&power, (d - k) as u32) {
            if &QPoly::from_bigints(&self.poly.scale_roots(&q).to_primitive_ints()) != other.poly() {
                continue;
            }
            // q * self is some root of other's polynomial; the cell decides which
            let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
            loop {
                let (a, b) = if q.is_positive() { (&lo * &q, &hi * &q) } else { (&hi * &q, &lo * &q) };
                if other.lo <= a && b <= other.hi {
                    return Some(q);
                }
                if b < other.lo || other.hi < a {
                    break;
                }
                (lo, hi) = bisect(&self.poly, &lo, &hi);
            }
        }
        None
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => return Self::from_rational(&(a + b)),
            (Some(q), None) => return other.add_rational(&q),
            (None, Some(q)) => return self.add_rational(&q),
            _ => {}
        }
        if let Some((a, b)) = same_quadratic_field(self, other) {
            return a.combine(&a.r + &b.r, &a.s + &b.s);
        }
        if let Some(q) = self.rational_ratio(other) {
            return self.mul_rational(&(q + Rational::one()));
        }
        self.add_general(other)
    }

    fn add_general(&self, other: &Self) -> Self {
        let s = sum_polynomial(&self.poly, &other.poly).square_free();
        let (mut a, mut b) = ((self.lo.clone(), self.hi.clone()), (other.lo.clone(), other.hi.clone()));
        loop {
            let lo = &a.0 + &b.0;
            let hi = &a.1 + &b.1;
            if s.count_roots(&lo, &hi) == 1 {
                return Self::from_poly(&s, lo, hi).expect("isolated sum root");
            }
            a = bisect(&self.poly, &a.0, &a.1);
            b = bisect(&other.poly, &b.0, &b.1);
        }
    }

    fn add_rational(&self, q: &Rational) -> Self {
        if let Some(a) = self.quadratic() {
            return a.combine(&a.r + q, a.s.clone());
        }
        Self::canonical(self.poly.shift(q), &self.lo + q, &self.hi + q)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => return Self::from_rational(&(a * b)),
            (Some(q), None) => return other.mul_rational(&q),
            (None, Some(q)) => return self.mul_rational(&q),
            _ => {}
        }
        if let Some((a, b)) = same_quadratic_field(self, other) {
            return a.combine(&a.r * &b.r + &a.s * &b.s * &a.d, &a.r * &b.s + &b.r * &a.s);
        }
        self.mul_general(other)
    }

    fn mul_general(&self, other: &Self) -> Self {
        let s = product_polynomial(&self.poly, &other.poly).square_free();
        let (mut a, mut b) = ((self.lo.clone(), self.hi.clone()), (other.lo.clone(), other.hi.clone()));
        loop {
            let ps = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
            let lo = ps.iter().min().unwrap().clone();
            let hi = ps.iter().max().unwrap().clone();
            if s.count_roots(&lo, &hi) == 1 {
                return Self::from_poly(&s, lo, hi).expect("isolated product root");
            }
            a = bisect(&self.poly, &a.0, &a.1);
            b = bisect(&other.poly, &b.0, &b.1);
        }
    }

    fn mul_rational(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::from_rational(q);
        }
        if let Some(a) = self.quadratic() {
            return a.combine(&a.r * q, &a.s * q);
        }
        let (lo, hi) = if q.is_positive() { (&self.lo * q, &self.hi * q) } else { (&self.hi * q, &self.lo * q) };
        Self::canonical(self.poly.scale_roots(q), lo, hi)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&(Rational::one() / q)));
        }
        if let Some(a) = self.quadratic() {
            let n = &a.r * &a.r - &a.s * &a.s * &a.d;
            return Ok(a.combine(&a.r / &n, -&a.s / &n));
        }
        let (lo, hi) = self.refine_away(&Rational::zero());
        Ok(Self::canonical(self.poly.reverse(), Rational::one() / hi, Rational::one() / lo))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Parse `alg[c0,...,ck; lo,hi]` or a plain rational.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        let Some(body) = s.strip_prefix("alg[").and_then(|b| b.strip_suffix(']')) else {
            return Ok(Self::from_rational(&parse_rational(s)?));
        };
        let (cs, iv) = body
            .split_once(';')
            .ok_or_else(|| Error::Syntax { column: 1, message: format!("missing `;` in `{s}`") })?;
        let coeffs = cs.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        let bounds = iv.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        if bounds.len() != 2 {
            return Err(Error::Syntax { column: 1, message: format!("interval needs two bounds in `{s}`") });
        }
        Self::new(coeffs, bounds[0].clone(), bounds[1].clone())
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let (lo, hi) = self.approx(60);
        midpoint(&lo, &hi).to_f64().unwrap_or(f64::NAN)
    }
}

impl PartialOrd for RealAlgebraic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealAlgebraic {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        if let Some(q) = other.as_rational() {
            return self.cmp_rational(&q);
        }
        if let Some(q) = self.as_rational() {
            return other.cmp_rational(&q).reverse();
        }
        if let Some((a, b)) = same_quadratic_field(self, other) {
            return quadratic_sign(&(&a.r - &b.r), &(&a.s - &b.s), &a.d);
        }
        if let Some(q) = self.rational_ratio(other) {
            // other - self = (q - 1) * self
            let d = (q - Rational::one()) * Rational::from_integer(self.sign().into());
            return if d.is_positive() { Ordering::Less } else { Ordering::Greater };
        }
        let (mut a, mut b) = ((self.lo.clone(), self.hi.clone()), (other.lo.clone(), other.hi.clone()));
        loop {
            if a.1 < b.0 {
                return Ordering::Less;
            }
            if b.1 < a.0 {
                return Ordering::Greater;
            }
            a = bisect(&self.poly, &a.0, &a.1);
            b = bisect(&other.poly, &b.0, &b.1);
        }
    }
}

/// `r + s sqrt(d)` with `d > 1` not a square.
struct Quadratic {
    r: Rational,
    s: Rational,
    d: BigInt,
}

impl Quadratic {
    /// `r + s sqrt(d)` in the field of `self`, in canonical form.
    fn combine(&self, r: Rational, s: Rational) -> RealAlgebraic {
        if s.is_zero() {
            return RealAlgebraic::from_rational(&r);
        }
        let d = Rational::from_integer(self.d.clone());
        let p = QPoly::new(vec![&r * &r - &s * &s * &d, -(&r + &r), Rational::one()]);
        let poly = QPoly::from_bigints(&p.to_primitive_ints());
        // Coarsest dyadic level separating the value from its conjugate. Once
        // separated they stay separated, and the gap exceeds 2|s| since d > 1.
        let cell = |k: usize| {
            let scale = Rational::from_integer(BigInt::one() << k);
            let (rk, sk) = (&r * &scale, &s * &scale);
            let j = floor_quadratic(&rk, &sk, &self.d);
            let apart = j != floor_quadratic(&rk, &-&sk, &self.d);
            (apart, j, scale)
        };
        let gap = (&s + &s).abs();
        let (mut lo_k, mut hi_k) = (0usize, 0usize);
        while Rational::from_integer(BigInt::one() << hi_k) * &gap < Rational::one() {
            hi_k += 1;
        }
        while lo_k < hi_k {
            let mid = (lo_k + hi_k) / 2;
            if cell(mid).0 {
                hi_k = mid;
            } else {
                lo_k = mid + 1;
            }
        }
        let (_, j, scale) = cell(hi_k);
        let lo = Rational::from_integer(j) / &scale;
        let hi = &lo + Rational::one() / &scale;
        RealAlgebraic { poly, lo, hi }
    }
}

/// Both values as elements of one real quadratic field, if they share one.
fn same_quadratic_field(x: &RealAlgebraic, y: &RealAlgebraic) -> Option<(Quadratic, Quadratic)> {
    let (a, b) = (x.quadratic()?, y.quadratic()?);
    let prod = &a.d * &b.d;
    let m = prod.sqrt();
    if &m * &m != prod {
        return None;
    }
    // sqrt(d_b) = (m / d_a) sqrt(d_a)
    let f = Rational::new(m, a.d.clone());
    let b = Quadratic { r: b.r, s: b.s * f, d: a.d.clone() };
    Some((a, b))
}

/// Order of `a + s sqrt(d)` against zero, for non-square `d`.
fn quadratic_sign(a: &Rational, s: &Rational, d: &BigInt) -> Ordering {
    let zero = Rational::zero();
    if s.is_zero() {
        return a.cmp(&zero);
    }
    if a.is_zero() || a.is_positive() == s.is_positive() {
        return s.cmp(&zero);
    }
    if a * a > s * s * Rational::from_integer(d.clone()) {
        a.cmp(&zero)
    } else {
        s.cmp(&zero)
    }
}

/// `floor(r + s sqrt(d))` for non-square `d`.
fn floor_quadratic(r: &Rational, s: &Rational, d: &BigInt) -> BigInt {
    let u = s * s * Rational::from_integer(d.clone());
    let (n, m) = (u.numer(), u.denom());
    // sqrt(u) lies in [k/m, (k+1)/m]
    let k = Rational::new((n * m).sqrt(), m.clone());
    let lower = if s.is_positive() { r + k } else { r - k - Rational::new(BigInt::one(), m.clone()) };
    let f = lower.floor().to_integer();
    let next = Rational::from_integer(&f + 1);
    if quadratic_sign(&(r - next), s, d) == Ordering::Less {
        f
    } else {
        f + 1
    }
}

/// Rational `n`-th roots of `x`, both signs when `n` is even.
fn rational_roots(x: &Rational, n: u32) -> Vec<Rational> {
    if n == 0 || (n % 2 == 0 && x.is_negative()) {
        return Vec::new();
    }
    let exact = |v: &num_bigint::BigInt| {
        let r = v.abs().nth_root(n);
        (num_traits::pow(r.clone(), n as usize) == v.abs()).then_some(r)
    };
    let (Some(a), Some(b)) = (exact(x.numer()), exact(x.denom())) else {
        return Vec::new();
    };
    let r = Rational::new(a, b);
    if n % 2 == 0 {
        vec![r.clone(), -r]
    } else if x.is_negative() {
        vec![-r]
    } else {
        vec![r]
    }
}

/// Sign of the root of `a`.
pub fn ralg_sign(a: &RealAlgebraic) -> i8 {
    a.sign()
}
