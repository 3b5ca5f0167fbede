use std::collections::HashMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{KqError, Result};
use crate::scalar::linalg::{solve, Solve};
use crate::scalar::{int, Beta, Rational};
use crate::symfun::{FinitePoly, Partition, StrictPartition};

const MAX_VARS: usize = 8;
const SEED: u64 = 0x6751_0a7c;

/// Truncated polynomial in β with rational coefficients.
type BetaPoly = Vec<Rational>;

fn poly_mul(a: &BetaPoly, b: &BetaPoly, len: usize) -> BetaPoly {
    let mut out = vec![int(0); len];
    for (i, x) in a.iter().enumerate() {
        if *x == int(0) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len.saturating_sub(i)) {
            out[i + j] += x * y;
        }
    }
    out
}

fn truncated(mut v: BetaPoly, len: usize) -> BetaPoly {
    v.resize(len, int(0));
    v.truncate(len);
    v
}

/// `GQ_λ(x_1,…,x_n)` through x-degree `degree`, from the symmetrization
/// definition.
///
/// Summing over `S_n` and dividing by `(n-r)!` is the same as summing over
/// ordered choices of the `r` distinguished variables, because the factors
/// attached to the remaining `n-r` variables are symmetric in them. The sum
/// is evaluated at random integer points as a polynomial in β and each
/// homogeneous piece is interpolated in monomial symmetric polynomials.
pub fn gq_oracle(lam: &StrictPartition, vars: usize, degree: usize, beta: &Beta) -> Result<FinitePoly> {
    if vars > MAX_VARS {
        return Err(KqError::TooManyVariables(vars));
    }
    let w = lam.weight();
    if w > degree {
        return Err(KqError::WeightExceedsDegree { weight: w, degree });
    }
    let mut out = FinitePoly::zero(vars);
    if lam.len() > vars {
        return Ok(out);
    }
    let len = degree - w + 1;
    let bases: Vec<Vec<Partition>> = (0..len)
        .map(|k| {
            Partition::all_of_weight(w + k)
                .into_iter()
                .filter(|mu| mu.len() <= vars)
                .collect()
        })
        .collect();
    let unknowns = bases.iter().map(Vec::len).max().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut count = unknowns + 6;
    let coeffs = loop {
        let points: Vec<Vec<Rational>> = (0..count)
            .map(|_| sample(&mut rng, 64, vars).into_iter().map(|v| int(v as i64 + 1)).collect())
            .collect();
        let values: Vec<BetaPoly> = points.par_iter().map(|x| tuple_sum(lam.parts(), x, len)).collect();
        match interpolate(&bases, &points, &values, lam)? {
            Some(c) => break c,
            None => count += unknowns,
        }
    };
    for (k, (basis, cs)) in bases.iter().zip(&coeffs).enumerate() {
        let bk = beta.pow(k as u32);
        for (mu, c) in basis.iter().zip(cs) {
            if *c == int(0) {
                continue;
            }
            let mut e: Vec<u32> = mu.parts().to_vec();
            e.resize(vars, 0);
            e.sort_unstable();
            loop {
                out.add_term(e.clone(), bk.scale(c));
                if !next_permutation(&mut e) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// `None` if the sample points do not separate the basis.
fn interpolate(
    bases: &[Vec<Partition>],
    points: &[Vec<Rational>],
    values: &[BetaPoly],
    lam: &StrictPartition,
) -> Result<Option<Vec<Vec<Rational>>>> {
    let mut all = Vec::new();
    for (k, basis) in bases.iter().enumerate() {
        let a: Vec<Vec<Rational>> = points
            .iter()
            .map(|x| basis.iter().map(|mu| monomial_symmetric_eval(mu, x)).collect())
            .collect();
        let b: Vec<Rational> = values.iter().map(|v| v[k].clone()).collect();
        match solve(&a, &b) {
            Solve::Unique(c) => all.push(c),
            Solve::RankDeficient => return Ok(None),
            Solve::Inconsistent => {
                return Err(KqError::OracleNotPolynomial(format!("{lam} at beta^{k}")));
            }
        }
    }
    Ok(Some(all))
}

/// `Σ over ordered distinct (i_1..i_r) of Π_a [[x_{i_a}]]^{λ_a}
/// Π_{j not among i_1..i_a} (x_{i_a} ⊕ x_j)/(x_{i_a} ⊖ x_j)`.
fn tuple_sum(parts: &[u32], x: &[Rational], len: usize) -> BetaPoly {
    let n = x.len();
    // (x+y+βxy)(1+βy)/(x-y)
    let kernel: Vec<Vec<BetaPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        return Vec::new();
                    }
                    let (a, b) = (&x[i], &x[j]);
                    let den = a - b;
                    let v = vec![(a + b) / &den, (a * b + (a + b) * b) / &den, (a * b * b) / &den];
                    truncated(v, len)
                })
                .collect()
        })
        .collect();
    let bracket = |i: usize, a: u32| -> BetaPoly {
        let xa = num_traits::pow(x[i].clone(), a as usize);
        truncated(vec![&xa * int(2), &xa * &x[i]], len)
    };
    let mut one = vec![int(0); len];
    one[0] = int(1);
    let mut total = vec![int(0); len];
    let mut used = vec![false; n];
    descend(parts, 0, &one, &mut used, &kernel, &bracket, len, &mut total);
    total
}

#[allow(clippy::too_many_arguments)]
fn descend(
    parts: &[u32],
    a: usize,
    acc: &BetaPoly,
    used: &mut [bool],
    kernel: &[Vec<BetaPoly>],
    bracket: &dyn Fn(usize, u32) -> BetaPoly,
    len: usize,
    total: &mut BetaPoly,
) {
    if a == parts.len() {
        for (t, v) in total.iter_mut().zip(acc) {
            *t += v;
        }
        return;
    }
    let n = used.len();
    for i in 0..n {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut v = poly_mul(acc, &bracket(i, parts[a]), len);
        for j in 0..n {
            if !used[j] {
                v = poly_mul(&v, &kernel[i][j], len);
            }
        }
        descend(parts, a + 1, &v, used, kernel, bracket, len, total);
        used[i] = false;
    }
}

/// `m_μ(x)`: each variable takes one part or none, counted by part value so
/// every distinct monomial appears once.
pub fn monomial_symmetric_eval(mu: &Partition, x: &[Rational]) -> Rational {
    let mult: Vec<(u32, u32)> = mu.multiplicities().into_iter().collect();
    let mut states: HashMap<Vec<u32>, Rational> = HashMap::new();
    states.insert(mult.iter().map(|&(_, m)| m).collect(), int(1));
    for xi in x {
        let mut next: HashMap<Vec<u32>, Rational> = HashMap::new();
        for (st, v) in &states {
            *next.entry(st.clone()).or_insert_with(|| int(0)) += v;
            for (t, &(part, _)) in mult.iter().enumerate() {
                if st[t] == 0 {
                    continue;
                }
                let mut s2 = st.clone();
                s2[t] -= 1;
                let term = v * num_traits::pow(xi.clone(), part as usize);
                *next.entry(s2).or_insert_with(|| int(0)) += term;
            }
        }
        states = next;
    }
    states.remove(&vec![0; mult.len()]).unwrap_or_else(|| int(0))
}

fn next_permutation(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
