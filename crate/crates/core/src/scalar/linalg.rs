use num_traits::{One, Zero};

use super::Rational;

/// Outcome of an exact solve of `A x = b` with at least as many rows as
/// columns.
#[derive(Debug, PartialEq)]
pub enum Solve {
    Unique(Vec<Rational>),
    Inconsistent,
    RankDeficient,
}

/// Gaussian elimination over `Q`. Rows beyond the rank act as consistency
/// checks.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Solve {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();
    for c in 0..cols {
        let Some(p) = (c..rows).find(|&r| !m[r][c].is_zero()) else {
            return Solve::RankDeficient;
        };
        m.swap(p, c);
        let inv = m[c][c].recip();
        for k in c..=cols {
            m[c][k] *= &inv;
        }
        for r in 0..rows {
            if r == c || m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for k in c..=cols {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
    }
    if m[cols..].iter().any(|r| !r[cols].is_zero()) {
        return Solve::Inconsistent;
    }
    Solve::Unique(m.into_iter().take(cols).map(|r| r[cols].clone()).collect())
}

/// Inverse of a square matrix, if it exists.
pub fn invert(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(p, c);
        let inv = m[c][c].recip();
        for k in c..2 * n {
            m[c][k] *= &inv;
        }
        for r in 0..n {
            if r == c || m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for k in c..2 * n {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}
