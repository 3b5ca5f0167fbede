use std::collections::BTreeMap;

use crate::error::{KqError, Result};
use crate::fock::{apply_big_g_word, g_bra, vacuum_coeff};
use crate::scalar::{binom_general, int, inv_pow2, sign, Beta, BetaScalar};
use crate::symfun::{to_deformed_basis, z_lambda, DeformedBasis, Partition, PSeries, StrictPartition};

/// `I(m, n)`, the one-slot value of the fermionic pairing.
#[derive(Clone, Debug)]
pub struct ITable {
    beta: Beta,
}

impl ITable {
    pub fn new(beta: Beta) -> Self {
        Self { beta }
    }

    pub fn get(&self, m: i64, n: i64) -> BetaScalar {
        if m < n {
            BetaScalar::zero()
        } else if m == n {
            BetaScalar::from_int(if m == 0 { 1 } else { 2 })
        } else {
            self.beta.negated().pow((m - n) as u32)
        }
    }
}

/// `^g⟨μ|λ⟩^G` computed on bra words inside the Fock space.
pub fn fock_pairing(mu: &[i64], lam: &[i64], beta: &Beta) -> BetaScalar {
    vacuum_coeff(&apply_big_g_word(&g_bra(mu, beta), lam, beta))
}

/// `Π I(μ_i, λ_i)` with the shorter word padded by zeros. Unequal lengths
/// of the same parity do not force zero: `^g⟨μ|∅⟩^G = (-β)^{|μ|}` for
/// instance. Opposite parity is zero by fermion number.
pub fn pairing_formula(mu: &[i64], lam: &[i64], beta: &Beta) -> BetaScalar {
    if (mu.len() + lam.len()) % 2 == 1 {
        return BetaScalar::zero();
    }
    let t = ITable::new(beta.clone());
    let n = mu.len().max(lam.len());
    let at = |w: &[i64], i: usize| w.get(i).copied().unwrap_or(0);
    (0..n).fold(BetaScalar::one(), |acc, i| &acc * &t.get(at(mu, i), at(lam, i)))
}

/// `row(λ/μ) = ℓ(λ) - #{i : λ_i = μ_i > 0}`.
pub fn row(lam: &StrictPartition, mu: &StrictPartition) -> usize {
    let same = lam
        .parts()
        .iter()
        .zip(mu.parts())
        .filter(|(a, b)| a == b)
        .count();
    lam.len() - same
}

/// Closed form of `⟨GQ_λ, o_μ⟩`: nonzero exactly when `λ ⊆ μ`, whatever
/// the lengths.
pub fn inner_product_formula(lam: &StrictPartition, mu: &StrictPartition, beta: &Beta) -> BetaScalar {
    if !lam.contained_in(mu) {
        return BetaScalar::zero();
    }
    beta.negated()
        .pow((mu.weight() - lam.weight()) as u32)
        .scale(&inv_pow2(row(mu, lam)))
}

fn odd_expansion(f: &PSeries, which: DeformedBasis, beta: &Beta) -> Result<BTreeMap<Partition, BetaScalar>> {
    let cs = to_deformed_basis(f, which, beta);
    if let Some(lam) = cs.keys().find(|l| !l.is_odd()) {
        return Err(KqError::EvenSupport(lam.parts().to_vec(), which.name()));
    }
    Ok(cs)
}

/// `⟨f, g⟩` with `⟨p^{(β)}_λ, p^{[β]}_μ⟩ = 2^{-ℓ(λ)} z_λ δ_{λμ}`.
///
/// The paren expansion of `f` is exact up to the degree bound because
/// `p^{(β)}_λ` starts in degree `|λ|`; the bracket expansion of `g` is
/// exact because `p^{[β]}_λ` ends there. So `g` must fit under `f`'s bound.
pub fn bilinear_pair(f: &PSeries, g: &PSeries, beta: &Beta) -> Result<BetaScalar> {
    if let Some(top) = g.top_degree() {
        if top > f.degree_bound() {
            return Err(KqError::DegreeMismatch(f.degree_bound(), top));
        }
    }
    let a = odd_expansion(f, DeformedBasis::Paren, beta)?;
    let b = odd_expansion(g, DeformedBasis::Bracket, beta)?;
    let mut acc = BetaScalar::zero();
    for (lam, d) in &b {
        if let Some(c) = a.get(lam) {
            acc = &acc + &(c * d).scale(&(z_lambda(lam) * inv_pow2(lam.len())));
        }
    }
    Ok(acc)
}

/// Whether `g(t, -t-β, x_3, …)` is independent of `t`. The substitution is
/// polynomial, so nothing is truncated: `p_k ↦ p_k + t^k + (-t-β)^k`.
pub fn check_dual_cancellation(g: &PSeries, vars: usize, beta: &Beta) -> Result<bool> {
    let top = g.top_degree().unwrap_or(0);
    if vars < top + 2 {
        return Err(KqError::UnderDetermined { vars, degree: top });
    }
    let d = g.degree_bound();
    // shift[k][e]: coefficient of t^e in t^k + (-t-β)^k
    let nb = beta.negated().scalar();
    let shift: Vec<Vec<BetaScalar>> = (0..=top)
        .map(|k| {
            (0..=k)
                .map(|e| {
                    let w = binom_general(k as i64, e as u32) * int(sign(e as i64));
                    let mut c = nb.pow((k - e) as u32).scale(&w);
                    if e == k {
                        c = &c + &BetaScalar::one();
                    }
                    c
                })
                .collect()
        })
        .collect();
    // t-polynomials with series coefficients
    let mut total: Vec<PSeries> = vec![PSeries::zero(d); top + 1];
    for (lam, c) in g.terms() {
        let mut acc = vec![PSeries::constant(d, c.clone())];
        for &k in lam.parts() {
            let k = k as usize;
            let mut next = vec![PSeries::zero(d); acc.len() + k];
            for (i, a) in acc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                next[i].add_assign(&a.mul(&PSeries::p(d, k as u32)));
                for (e, s) in shift[k].iter().enumerate() {
                    if !s.is_zero() {
                        next[i + e].add_scaled(a, s);
                    }
                }
            }
            acc = next;
        }
        for (e, a) in acc.into_iter().enumerate() {
            total[e].add_assign(&a);
        }
    }
    Ok(total.iter().skip(1).all(PSeries::is_zero))
}
