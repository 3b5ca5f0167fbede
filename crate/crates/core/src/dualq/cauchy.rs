use std::collections::BTreeMap;

use num_traits::One;

use crate::scalar::{binom_general, int, rat, sign, Beta, BetaScalar, Rational};
use crate::symfun::{z_lambda, DeformedBasis, DeformedMonomials, Partition};

/// Symmetric series in two alphabets, `Σ c p_λ(x) p_μ(y)`, cut at joint
/// degree `|λ| + |μ| <= degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries {
    degree: usize,
    terms: BTreeMap<(Partition, Partition), BetaScalar>,
}

impl BiSeries {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.add_term(Partition::empty(), Partition::empty(), BetaScalar::one());
        s
    }

    pub fn degree_bound(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<(Partition, Partition), BetaScalar> {
        &self.terms
    }

    pub fn add_term(&mut self, x: Partition, y: Partition, c: BetaScalar) {
        if c.is_zero() || x.weight() + y.weight() > self.degree {
            return;
        }
        let key = (x, y);
        let v = match self.terms.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if v.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree.min(other.degree));
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &other.terms {
                if a.weight() + b.weight() + x.weight() + y.weight() <= out.degree {
                    out.add_term(a.union(x), b.union(y), c * d);
                }
            }
        }
        out
    }

    /// `exp(self)` for a series without constant term.
    pub fn exp(&self) -> Self {
        let mut out = Self::one(self.degree);
        let mut power = Self::one(self.degree);
        let mut inv_fact = Rational::one();
        for n in 1..=self.degree {
            power = power.mul(self);
            if power.terms.is_empty() {
                break;
            }
            inv_fact /= int(n as i64);
            for ((x, y), c) in &power.terms {
                out.add_term(x.clone(), y.clone(), c.scale(&inv_fact));
            }
        }
        out
    }
}

/// `Π_{i,j} (1 - x̄_i y_j)/(1 - x_i y_j)` with `x̄ = -x/(1+βx)`, expanded as
/// `exp(Σ_k (p_k(x) - p_k(x̄)) p_k(y)/k)`.
pub fn cauchy_kernel_direct(degree: usize, beta: &Beta) -> BiSeries {
    let mut log = BiSeries::zero(degree);
    for k in 1..=(degree / 2) as i64 {
        let y = Partition::single(k as u32);
        log.add_term(Partition::single(k as u32), y.clone(), BetaScalar::from_rational(rat(1, k)));
        // p_k(x̄) = (-1)^k Σ_{m>=k} C(-k, m-k) β^{m-k} p_m(x)
        for m in k..=(degree as i64 - k) {
            let w = binom_general(-k, (m - k) as u32) * rat(-sign(k), k);
            log.add_term(Partition::single(m as u32), y.clone(), beta.pow((m - k) as u32).scale(&w));
        }
    }
    log.exp()
}

/// `Σ_{λ odd} 2^{ℓ(λ)} z_λ^{-1} p^{(β)}_λ(x) p^{[β]}_λ(y)`, cut at the same
/// joint degree. A summand has joint degree at least `|λ| + ℓ(λ)`.
pub fn cauchy_kernel_expansion(degree: usize, beta: &Beta) -> BiSeries {
    let mut paren = DeformedMonomials::new(DeformedBasis::Paren, degree, beta);
    let mut bracket = DeformedMonomials::new(DeformedBasis::Bracket, degree, beta);
    let mut out = BiSeries::zero(degree);
    for lam in Partition::all_up_to(degree) {
        if !lam.is_odd() || lam.weight() + lam.len() > degree {
            continue;
        }
        let w = int(1 << lam.len()) / z_lambda(&lam);
        let fx = paren.get(&lam);
        let gy = bracket.get(&lam);
        for (a, c) in fx.terms() {
            for (b, d) in gy.terms() {
                out.add_term(a.clone(), b.clone(), (c * d).scale(&w));
            }
        }
    }
    out
}
