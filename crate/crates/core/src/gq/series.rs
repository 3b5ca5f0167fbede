use std::collections::BTreeMap;

use crate::scalar::{binom_general, rat, sign, Beta, BetaScalar};
use crate::symfun::{exp_z_series, PSeries};

/// `GQ(z) = Σ_n GQ_n z^n`, stored for `n_min <= n <= D`. Values outside
/// the stored range are recomputed from the regular part on request.
#[derive(Clone, Debug)]
pub struct GQSeries {
    degree: usize,
    n_min: i64,
    neg_beta: BetaScalar,
    /// `P_m`: coefficients of `exp(Σ p_m/m (z^m - (-β)^m - (-z-β)^m))`.
    regular: Vec<PSeries>,
    coeffs: Vec<PSeries>,
}

impl GQSeries {
    pub fn degree_bound(&self) -> usize {
        self.degree
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    /// `GQ_n = Σ_{m >= max(n,0)} (-β)^{m-n} P_m`.
    pub fn coeff(&self, n: i64) -> PSeries {
        if n > self.degree as i64 {
            return PSeries::zero(self.degree);
        }
        if n >= self.n_min {
            return self.coeffs[(n - self.n_min) as usize].clone();
        }
        self.regular_coeff(n)
    }

    fn regular_coeff(&self, n: i64) -> PSeries {
        let mut acc = PSeries::zero(self.degree);
        for m in n.max(0)..=self.degree as i64 {
            acc.add_scaled(&self.regular[m as usize], &self.neg_beta.pow((m - n) as u32));
        }
        acc
    }

    pub fn coefficients(&self) -> BTreeMap<i64, PSeries> {
        (self.n_min..=self.degree as i64).zip(self.coeffs.iter().cloned()).collect()
    }
}

/// Expands `θ(z) / ((1+βz^{-1}) θ(-β) θ(-z-β))` with `θ(a) = exp(Σ p_n a^n/n)`.
pub fn gq_series(degree: usize, n_min: i64, beta: &Beta) -> GQSeries {
    let d = degree as i64;
    let b = beta.scalar();
    let neg_beta = -b.clone();
    // exponent as a polynomial in z; z^0 collects -2(-β)^m p_m/m
    let mut a = vec![PSeries::zero(degree); degree + 1];
    let mut a0 = PSeries::zero(degree);
    for m in 1..=d {
        let pm = PSeries::p(degree, m as u32).scale_rational(&rat(1, m));
        a0.add_scaled(&pm, &neg_beta.pow(m as u32).scale(&rat(-2, 1)));
        for j in 1..=m {
            // z^m - (-z-β)^m at z^j
            let mut c = neg_beta
                .pow((m - j) as u32)
                .scale(&(binom_general(m, j as u32) * rat(-sign(j), 1)));
            if j == m {
                c = &c + &BetaScalar::one();
            }
            a[j as usize].add_scaled(&pm, &c);
        }
    }
    let base = a0.exp();
    let regular: Vec<PSeries> = exp_z_series(&a, degree).into_iter().map(|c| c.mul(&base)).collect();
    let mut s = GQSeries {
        degree,
        n_min,
        neg_beta,
        regular,
        coeffs: Vec::new(),
    };
    s.coeffs = (n_min..=d).map(|n| s.regular_coeff(n)).collect();
    debug_assert!(s.coeffs.iter().zip(n_min..).all(|(c, n)| c.lowest_degree().is_none_or(|l| l as i64 >= n)));
    s
}

