//! Binary trees, dyadic interval coding, and bounded path search.
//!
//! Node `σ` codes the half-open interval `[Σ σ(i) 2^-(i+1), that + 2^-|σ|)`.
//! Half-open cells give dyadic reals a unique path (the one ending in zeros).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numbers::rational::{fmt_rational, pow2_neg, Rational};
use crate::numbers::{default_precision, OracleReal};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct BinString(pub Vec<bool>);

impl BinString {
    pub fn empty() -> Self {
        BinString(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, bit: bool) -> Self {
        let mut v = self.0.clone();
        v.push(bit);
        BinString(v)
    }

    pub fn prefix(&self, k: usize) -> Self {
        BinString(self.0[..k.min(self.0.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Self) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn comparable(&self, other: &Self) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// All strings of length `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = BinString> {
        (0u64..(1u64 << n)).map(move |k| BinString((0..n).map(|i| (k >> (n - 1 - i)) & 1 == 1).collect()))
    }
}

impl fmt::Display for BinString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{}", if *b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromStr for BinString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = if s == "ε" || s == "\"\"" { "" } else { s };
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Syntax { column: i + 1, message: format!("`{c}` is not a bit") }),
            })
            .collect::<Result<Vec<_>>>()
            .map(BinString)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DyadicInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub closed_lo: bool,
}

impl DyadicInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &Rational) -> bool {
        (if self.closed_lo { q >= &self.lo } else { q > &self.lo }) && q < &self.hi
    }

    pub fn contains_interval(&self, o: &DyadicInterval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn disjoint(&self, o: &DyadicInterval) -> bool {
        self.hi <= o.lo || o.hi <= self.lo
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}, {})", if self.closed_lo { '[' } else { '(' }, fmt_rational(&self.lo), fmt_rational(&self.hi))
    }
}

pub fn node_interval(s: &BinString) -> DyadicInterval {
    let mut lo = Rational::zero();
    for (i, b) in s.0.iter().enumerate() {
        if *b {
            lo += pow2_neg(i as u32 + 1);
        }
    }
    let hi = &lo + pow2_neg(s.len() as u32);
    DyadicInterval { lo, hi, closed_lo: true }
}

type Membership = Arc<dyn Fn(&BinString) -> bool + Send + Sync>;

/// A tree given by a membership test, closed under prefixes by construction:
/// `σ` belongs only when the raw test accepts every prefix of `σ`.
#[derive(Clone)]
pub struct TreeOracle {
    raw: Membership,
    label: String,
}

impl fmt::Debug for TreeOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreeOracle({})", self.label)
    }
}

impl TreeOracle {
    pub fn new(label: impl Into<String>, f: impl Fn(&BinString) -> bool + Send + Sync + 'static) -> Self {
        TreeOracle { raw: Arc::new(f), label: label.into() }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn contains(&self, s: &BinString) -> bool {
        (0..=s.len()).all(|k| (self.raw)(&s.prefix(k)))
    }

    pub fn full() -> Self {
        TreeOracle::new("full", |_| true)
    }

    /// The single infinite path `bits` followed by zeros.
    pub fn single(bits: BinString) -> Self {
        let label = format!("single:{bits}");
        TreeOracle::new(label, move |s| {
            let k = s.len().min(bits.len());
            s.0[..k] == bits.0[..k] && s.0[k..].iter().all(|b| !b)
        })
    }

    /// The prefix closure of finitely many nodes.
    pub fn finite(nodes: Vec<BinString>) -> Self {
        TreeOracle::new(format!("finite:{}", nodes.len()), move |s| nodes.iter().any(|n| s.is_prefix_of(n)))
    }

    /// A pseudo-random tree: each node survives with probability 3/4.
    pub fn seeded(seed: u64) -> Self {
        TreeOracle::new(format!("seeded:{seed}"), move |s| {
            if s.is_empty() {
                return true;
            }
            let mut h = seed ^ 0x9E37_79B9_7F4A_7C15;
            for b in &s.0 {
                h = splitmix(h ^ (*b as u64 + 1));
            }
            h = splitmix(h ^ s.len() as u64);
            h % 4 != 0
        })
    }

    /// `full`, `single:<bits>`, `seeded:<n>`, or newline-separated bit strings.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec == "full" {
            return Ok(Self::full());
        }
        if let Some(bits) = spec.strip_prefix("single:") {
            return Ok(Self::single(bits.parse()?));
        }
        if let Some(n) = spec.strip_prefix("seeded:") {
            let seed = n.trim().parse().map_err(|_| Error::Syntax { column: 8, message: format!("bad seed `{n}`") })?;
            return Ok(Self::seeded(seed));
        }
        let nodes = spec.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(str::parse).collect::<Result<Vec<BinString>>>()?;
        Ok(Self::finite(nodes))
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Which half of `cell` holds `r`: `false` for `[lo, mid)`, `true` for `[mid, hi)`.
fn decide_half(r: &OracleReal, mid: &Rational, budget: u32) -> Result<bool> {
    for n in 0..=budget {
        let (a, b) = r.approx(n)?;
        if &b < mid {
            return Ok(false);
        }
        if &a >= mid {
            return Ok(true);
        }
    }
    Err(Error::BoundaryUndecided(budget))
}

/// The first `k` binary digits of `r ∈ [0, 1)` under the half-open convention.
pub fn bits_of(r: &OracleReal, k: usize, budget: u32) -> Result<BinString> {
    let mut s = BinString::empty();
    for _ in 0..k {
        let cell = node_interval(&s);
        let mid = (&cell.lo + &cell.hi) / Rational::from_integer(2.into());
        s = s.child(decide_half(r, &mid, budget)?);
    }
    Ok(s)
}

/// The chain of nodes of length `0..=depth` whose intervals contain `r`.
pub fn path_from_real(t: &TreeOracle, r: &OracleReal, depth: usize) -> Result<Vec<BinString>> {
    path_from_real_with(t, r, depth, default_precision())
}

pub fn path_from_real_with(t: &TreeOracle, r: &OracleReal, depth: usize, budget: u32) -> Result<Vec<BinString>> {
    let mut s = BinString::empty();
    let mut out = Vec::with_capacity(depth + 1);
    for level in 0..=depth {
        if !t.contains(&s) {
            return Err(Error::NodeNotInTree(s.to_string()));
        }
        out.push(s.clone());
        if level == depth {
            break;
        }
        let cell = node_interval(&s);
        let mid = (&cell.lo + &cell.hi) / Rational::from_integer(2.into());
        s = s.child(decide_half(r, &mid, budget)?);
    }
    Ok(out)
}

/// Interval of the deepest node of a chain.
pub fn real_from_path(chain: &[BinString]) -> Result<DyadicInterval> {
    let Some(last) = chain.last() else {
        return Err(Error::NotAChain);
    };
    for w in chain.windows(2) {
        if w[1].len() != w[0].len() + 1 || !w[0].is_prefix_of(&w[1]) {
            return Err(Error::NotAChain);
        }
    }
    Ok(node_interval(last))
}

/// Leftmost node of length `depth` in `t`, by depth-first search.
pub fn find_path_bounded(t: &TreeOracle, depth: usize) -> Option<BinString> {
    fn go(t: &TreeOracle, s: BinString, depth: usize) -> Option<BinString> {
        if !(t.raw)(&s) {
            return None;
        }
        if s.len() == depth {
            return Some(s);
        }
        go(t, s.child(false), depth).or_else(|| go(t, s.child(true), depth))
    }
    go(t, BinString::empty(), depth)
}

/// Real whose binary digits alternate between those of `r1` and `r2`.
pub fn join(r1: &OracleReal, r2: &OracleReal) -> OracleReal {
    join_with(r1, r2, default_precision())
}

pub fn join_with(r1: &OracleReal, r2: &OracleReal, budget: u32) -> OracleReal {
    let (a, b) = (r1.clone(), r2.clone());
    OracleReal::from_fn(format!("join({},{})", r1.label(), r2.label()), move |n| {
        let k = n as usize;
        let x = bits_of(&a, k.div_ceil(2), budget).map_err(|e| Error::OracleFailure(e.to_string()))?;
        let y = bits_of(&b, k / 2, budget).map_err(|e| Error::OracleFailure(e.to_string()))?;
        let bits: Vec<bool> = (0..k).map(|i| if i % 2 == 0 { x.0[i / 2] } else { y.0[i / 2] }).collect();
        let cell = node_interval(&BinString(bits));
        Ok((cell.lo, cell.hi))
    })
}

/// The two reals whose digits sit at even and at odd positions of `r`.
pub fn deinterleave(r: &OracleReal) -> (OracleReal, OracleReal) {
    deinterleave_with(r, default_precision())
}

pub fn deinterleave_with(r: &OracleReal, budget: u32) -> (OracleReal, OracleReal) {
    let part = |offset: usize, name: &str| {
        let r = r.clone();
        OracleReal::from_fn(format!("{name}({})", r.label()), move |n| {
            let k = n as usize;
            let bits = bits_of(&r, 2 * k + offset, budget).map_err(|e| Error::OracleFailure(e.to_string()))?;
            let own: Vec<bool> = (0..k).map(|i| bits.0[2 * i + offset]).collect();
            let cell = node_interval(&BinString(own));
            Ok((cell.lo, cell.hi))
        })
    };
    (part(0, "even"), part(1, "odd"))
}

/// `[0, 1)` as an interval, for reports.
pub fn unit_interval() -> DyadicInterval {
    DyadicInterval { lo: Rational::zero(), hi: Rational::one(), closed_lo: true }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rational::rat;

    fn b(s: &str) -> BinString {
        s.parse().unwrap()
    }

    #[test]
    fn intervals() {
        assert_eq!(node_interval(&b("")).to_string(), "[0, 1)");
        assert_eq!(node_interval(&b("1")).to_string(), "[1/2, 1)");
        assert_eq!(node_interval(&b("101")).to_string(), "[5/8, 3/4)");
    }

    #[test]
    fn paths() {
        let third = OracleReal::rational_approx(rat(1, 3));
        let p = path_from_real(&TreeOracle::full(), &third, 3).unwrap();
        assert_eq!(p.iter().map(|s| s.to_string()).collect::<Vec<_>>(), ["", "0", "01", "010"]);
        let zero = OracleReal::constant(rat(0, 1));
        let p = path_from_real(&TreeOracle::full(), &zero, 2).unwrap();
        assert_eq!(p.iter().map(|s| s.to_string()).collect::<Vec<_>>(), ["", "0", "00"]);
        assert_eq!(real_from_path(&[b(""), b("1"), b("10")]).unwrap().to_string(), "[1/2, 3/4)");
        assert_eq!(real_from_path(&[b(""), b("10")]), Err(Error::NotAChain));
        assert!(matches!(path_from_real(&TreeOracle::single(b("1")), &third, 2), Err(Error::NodeNotInTree(_))));
        let half = OracleReal::rational_approx(rat(1, 2));
        assert_eq!(path_from_real_with(&TreeOracle::full(), &half, 2, 10), Err(Error::BoundaryUndecided(10)));
    }

    #[test]
    fn search() {
        assert_eq!(find_path_bounded(&TreeOracle::full(), 5), Some(b("00000")));
        assert_eq!(find_path_bounded(&TreeOracle::single(b("1")), 3), Some(b("100")));
        let finite = TreeOracle::parse("01\n10").unwrap();
        assert_eq!(find_path_bounded(&finite, 2), Some(b("01")));
        assert_eq!(find_path_bounded(&finite, 3), None);
    }

    #[test]
    fn joins() {
        let z = OracleReal::constant(rat(0, 1));
        let (lo, _) = join(&z, &z).approx(10).unwrap();
        assert_eq!(lo, rat(0, 1));
        let h = OracleReal::constant(rat(1, 2));
        let j = join(&h, &z);
        let (lo, hi) = j.approx(8).unwrap();
        assert_eq!((lo, hi), (rat(1, 2), rat(1, 2) + pow2_neg(8)));
        let (e, o) = deinterleave(&join(&OracleReal::rational_approx(rat(1, 3)), &OracleReal::rational_approx(rat(1, 5))));
        let (a, bb) = e.approx(20).unwrap();
        assert!(a <= rat(1, 3) && rat(1, 3) <= bb);
        let (a, bb) = o.approx(20).unwrap();
        assert!(a <= rat(1, 5) && rat(1, 5) <= bb);
    }

    #[test]
    fn seeded_trees_are_prefix_closed() {
        let t = TreeOracle::seeded(7);
        for n in 0..=8 {
            for s in BinString::all_of_length(n) {
                if t.contains(&s) {
                    assert!((0..n).all(|k| t.contains(&s.prefix(k))));
                }
            }
        }
    }
}
