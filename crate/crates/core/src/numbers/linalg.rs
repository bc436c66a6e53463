//! Exact linear algebra over ℚ: row reduction, rank, kernel.

use num_traits::{One, Zero};

use super::rational::Rational;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{ q : Σ q_i * cols[i] = 0 }` where each `cols[i]` is a vector of length `d`.
pub fn column_kernel(cols: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = cols.len();
    let d = cols.iter().map(|c| c.len()).max().unwrap_or(0);
    let mut m: Vec<Vec<Rational>> = (0..d).map(|i| (0..n).map(|j| cols[j].get(i).cloned().unwrap_or_else(Rational::zero)).collect()).collect();
    let pivots = rref(&mut m);
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        out.push(v);
    }
    out
}

/// Solve `Σ x_i * cols[i] = target` if possible.
pub fn solve_columns(cols: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let mut ext = cols.to_vec();
    ext.push(target.iter().map(|x| -x.clone()).collect());
    let ker = column_kernel(&ext);
    let n = cols.len();
    let v = ker.into_iter().find(|v| !v[n].is_zero())?;
    let s = v[n].clone();
    Some(v[..n].iter().map(|x| x / &s).collect())
}
