use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::{Partition, PSeries};
use crate::error::{KqError, Result};
use crate::scalar::{factorial, linalg, BetaScalar, Rational};

/// Polynomial in `x_1..x_n` with β-scalar coefficients, keyed by exponent
/// vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinitePoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, BetaScalar>,
}

impl FinitePoly {
    pub fn zero(vars: usize) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        let mut s = Self::zero(vars);
        s.add_term(vec![0; vars], BetaScalar::one());
        s
    }

    pub fn num_vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BetaScalar> {
        &self.terms
    }

    pub fn coeff(&self, exps: &[u32]) -> BetaScalar {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BetaScalar) {
        assert_eq!(exps.len(), self.vars, "exponent vector has the wrong length");
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&exps) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(exps, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for (e, c) in &other.terms {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut s = Self::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                s.add_term(e, ca * cb);
            }
        }
        s
    }

    pub fn scale(&self, c: &BetaScalar) -> Self {
        let mut s = Self::zero(self.vars);
        for (e, v) in &self.terms {
            s.add_term(e.clone(), v * c);
        }
        s
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().sum::<u32>() as usize).max()
    }

    /// Drops monomials of total degree above `d`.
    pub fn truncate(&self, d: usize) -> Self {
        Self {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() as usize <= d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> BetaScalar {
        let mut acc = BetaScalar::zero();
        for (e, c) in &self.terms {
            let mut m = Rational::one();
            for (x, &k) in point.iter().zip(e) {
                m *= num_traits::pow(x.clone(), k as usize);
            }
            acc = &acc + &c.scale(&m);
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        let mut orbits: BTreeMap<Vec<u32>, (usize, &BetaScalar)> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut key = e.clone();
            key.sort_unstable_by(|a, b| b.cmp(a));
            let entry = orbits.entry(key).or_insert((0, c));
            if entry.1 != c {
                return false;
            }
            entry.0 += 1;
        }
        orbits.iter().all(|(key, (count, _))| *count == orbit_size(key))
    }
}

/// Number of distinct rearrangements of an exponent vector.
fn orbit_size(exps: &[u32]) -> usize {
    let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
    for &e in exps {
        *mult.entry(e).or_insert(0) += 1;
    }
    let mut n = factorial(exps.len() as u32);
    for m in mult.values() {
        n /= factorial(*m);
    }
    usize::try_from(n).expect("orbit size fits in usize")
}

/// Power sum `x_1^k + ... + x_n^k`.
fn power_sum(vars: usize, k: u32) -> FinitePoly {
    let mut s = FinitePoly::zero(vars);
    for i in 0..vars {
        let mut e = vec![0; vars];
        e[i] = k;
        s.add_term(e, BetaScalar::one());
    }
    s
}

/// Specializes power sums to `n` variables.
pub fn eval_finite(f: &PSeries, vars: usize) -> FinitePoly {
    let sums: Vec<FinitePoly> = (0..=f.degree_bound() as u32).map(|k| power_sum(vars, k)).collect();
    let mut cache: BTreeMap<Partition, FinitePoly> = BTreeMap::new();
    let mut out = FinitePoly::zero(vars);
    for (lam, c) in f.terms() {
        let m = finite_monomial(lam, &sums, vars, &mut cache);
        out = out.add(&m.scale(c));
    }
    out
}

fn finite_monomial(
    lam: &Partition,
    sums: &[FinitePoly],
    vars: usize,
    cache: &mut BTreeMap<Partition, FinitePoly>,
) -> FinitePoly {
    if lam.is_empty() {
        return FinitePoly::one(vars);
    }
    if let Some(v) = cache.get(lam) {
        return v.clone();
    }
    let parts = lam.parts();
    let rest = Partition::new(parts[1..].to_vec()).expect("suffix of a partition");
    let v = sums[parts[0] as usize].mul(&finite_monomial(&rest, sums, vars, cache));
    cache.insert(lam.clone(), v.clone());
    v
}

/// Coefficient of `x^μ` in `p_ν` for enough variables: the number of ways
/// to distribute the parts of ν over the first `ℓ(μ)` variables so that
/// variable `i` receives total `μ_i`.
pub fn power_sum_monomial_coeff(nu: &Partition, mu: &Partition) -> u64 {
    fn go(parts: &[u32], room: &mut [u32]) -> u64 {
        let Some((&first, rest)) = parts.split_first() else {
            return u64::from(room.iter().all(|&r| r == 0));
        };
        let mut total = 0;
        for i in 0..room.len() {
            if room[i] >= first {
                room[i] -= first;
                total += go(rest, room);
                room[i] += first;
            }
        }
        total
    }
    if nu.weight() != mu.weight() {
        return 0;
    }
    go(nu.parts(), &mut mu.parts().to_vec())
}

/// The unique power-sum series of degree at most `degree` whose image in
/// `vars` variables agrees with `g` through that degree.
pub fn from_finite(g: &FinitePoly, vars: usize, degree: usize) -> Result<PSeries> {
    if g.num_vars() != vars {
        return Err(KqError::Parse(format!(
            "polynomial has {} variables, expected {vars}",
            g.num_vars()
        )));
    }
    if vars < degree {
        return Err(KqError::UnderDetermined { vars, degree });
    }
    if !g.is_symmetric() {
        return Err(KqError::NotSymmetric(vars));
    }
    let mut out = PSeries::zero(degree);
    for d in 0..=degree {
        let parts = Partition::all_of_weight(d);
        let rhs: Vec<BetaScalar> = parts
            .iter()
            .map(|mu| {
                let mut e = mu.parts().to_vec();
                e.resize(vars, 0);
                g.coeff(&e)
            })
            .collect();
        if rhs.iter().all(BetaScalar::is_zero) {
            continue;
        }
        // rows indexed by μ, columns by ν: Σ_ν a_ν L[ν][μ] = c_μ
        let l: Vec<Vec<Rational>> = parts
            .iter()
            .map(|mu| {
                parts
                    .iter()
                    .map(|nu| Rational::from_integer(BigInt::from(power_sum_monomial_coeff(nu, mu))))
                    .collect()
            })
            .collect();
        let inv = linalg::invert(&l).expect("power sums are independent in enough variables");
        for (row, nu) in inv.iter().zip(&parts) {
            let mut a = BetaScalar::zero();
            for (w, c) in row.iter().zip(&rhs) {
                if !c.is_zero() {
                    a = &a + &c.scale(w);
                }
            }
            out.add_term(nu.clone(), a);
        }
    }
    Ok(out)
}
