use std::collections::BTreeMap;

use super::{Partition, PSeries};
use crate::scalar::{binom_general, int, rat, sign, Beta, BetaScalar};

/// Coefficients `c_0..c_N` of `exp(Σ_{k≥1} a_k z^k)` where `a[k]` is the
/// coefficient of `z^k`; `a[0]` is ignored. Uses `n c_n = Σ k a_k c_{n-k}`.
pub fn exp_z_series(a: &[PSeries], degree: usize) -> Vec<PSeries> {
    let n_max = a.len().saturating_sub(1);
    let mut c = vec![PSeries::one(degree)];
    for n in 1..=n_max {
        let mut acc = PSeries::zero(degree);
        for k in 1..=n {
            if a[k].is_zero() || c[n - k].is_zero() {
                continue;
            }
            acc.add_assign(&a[k].mul(&c[n - k]).scale_rational(&int(k as i64)));
        }
        c.push(acc.scale_rational(&rat(1, n as i64)));
    }
    c
}

/// `q_0..q_D`, the coefficients of `exp(2 Σ_{n odd} p_n z^n / n)`.
pub fn q_series(degree: usize) -> Vec<PSeries> {
    let a: Vec<PSeries> = (0..=degree)
        .map(|k| {
            if k % 2 == 1 {
                PSeries::p(degree, k as u32).scale_rational(&rat(2, k as i64))
            } else {
                PSeries::zero(degree)
            }
        })
        .collect();
    exp_z_series(&a, degree)
}

/// `p_n(x / (1 + (β/2) x))` expanded in plain power sums.
pub fn p_beta(n: u32, degree: usize, beta: &Beta) -> PSeries {
    let half = beta.half();
    let mut s = PSeries::zero(degree);
    for m in n as usize..=degree {
        let k = (m - n as usize) as u32;
        let c = half.pow(k).scale(&(binom_general(m as i64 - 1, k) * int(sign(k as i64))));
        s.add_term(Partition::single(m as u32), c);
    }
    s
}

/// `p_n(x + β/2) - p_n(β/2)` expanded in plain power sums.
pub fn p_bracket(n: u32, degree: usize, beta: &Beta) -> PSeries {
    let half = beta.half();
    let mut s = PSeries::zero(degree);
    for i in 1..=n {
        let c = half.pow(n - i).scale(&binom_general(n as i64, i));
        s.add_term(Partition::single(i), c);
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeformedBasis {
    /// `p^{(β)}`: substituted power sums, leading term plus higher degrees.
    Paren,
    /// `p^{[β]}`: shifted power sums, leading term plus lower degrees.
    Bracket,
}

impl DeformedBasis {
    pub fn name(self) -> &'static str {
        match self {
            DeformedBasis::Paren => "beta-paren",
            DeformedBasis::Bracket => "beta-bracket",
        }
    }

    pub fn generator(self, n: u32, degree: usize, beta: &Beta) -> PSeries {
        match self {
            DeformedBasis::Paren => p_beta(n, degree, beta),
            DeformedBasis::Bracket => p_bracket(n, degree, beta),
        }
    }
}

/// Products of deformed generators, memoized per partition.
pub struct DeformedMonomials {
    which: DeformedBasis,
    degree: usize,
    gens: Vec<PSeries>,
    cache: BTreeMap<Partition, PSeries>,
}

impl DeformedMonomials {
    pub fn new(which: DeformedBasis, degree: usize, beta: &Beta) -> Self {
        let gens = (0..=degree as u32)
            .map(|n| if n == 0 { PSeries::one(degree) } else { which.generator(n, degree, beta) })
            .collect();
        Self {
            which,
            degree,
            gens,
            cache: BTreeMap::new(),
        }
    }

    pub fn basis(&self) -> DeformedBasis {
        self.which
    }

    pub fn get(&mut self, lam: &Partition) -> PSeries {
        if let Some(v) = self.cache.get(lam) {
            return v.clone();
        }
        let v = if lam.is_empty() {
            PSeries::one(self.degree)
        } else {
            let parts = lam.parts();
            let rest = Partition::new(parts[1..].to_vec()).expect("suffix of a partition");
            let tail = self.get(&rest);
            self.gens[parts[0] as usize].mul(&tail)
        };
        self.cache.insert(lam.clone(), v.clone());
        v
    }
}

/// Coefficients `c_λ` with `f = Σ c_λ p^{(β)}_λ` (or `p^{[β]}_λ`) modulo
/// degree above the bound. Both bases are unitriangular against `p_λ`, so
/// elimination runs upward in degree for the paren basis and downward for
/// the bracket basis.
pub fn to_deformed_basis(f: &PSeries, which: DeformedBasis, beta: &Beta) -> BTreeMap<Partition, BetaScalar> {
    let mut mons = DeformedMonomials::new(which, f.degree_bound(), beta);
    to_deformed_basis_with(f, &mut mons)
}

pub fn to_deformed_basis_with(f: &PSeries, mons: &mut DeformedMonomials) -> BTreeMap<Partition, BetaScalar> {
    let mut rest = f.clone();
    let mut out = BTreeMap::new();
    loop {
        let next = match mons.basis() {
            DeformedBasis::Paren => rest.terms().iter().next(),
            DeformedBasis::Bracket => rest.terms().iter().next_back(),
        };
        let Some((lam, c)) = next.map(|(l, c)| (l.clone(), c.clone())) else {
            break;
        };
        let m = mons.get(&lam);
        rest.add_scaled(&m, &-&c);
        debug_assert!(rest.coeff(&lam).is_zero());
        out.insert(lam, c);
    }
    out
}

/// Inverse of [`to_deformed_basis`].
pub fn from_deformed_basis(
    coeffs: &BTreeMap<Partition, BetaScalar>,
    which: DeformedBasis,
    degree: usize,
    beta: &Beta,
) -> PSeries {
    let mut mons = DeformedMonomials::new(which, degree, beta);
    let mut out = PSeries::zero(degree);
    for (lam, c) in coeffs {
        out.add_scaled(&mons.get(lam), c);
    }
    out
}
