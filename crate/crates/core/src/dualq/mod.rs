//! The dual side: `q^{[β]}_n`, `o_λ` by three routes, `gp_λ`, the deformed
//! bilinear form and the fermionic pairing table.

mod cauchy;
mod pairing;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;

pub use cauchy::{cauchy_kernel_direct, cauchy_kernel_expansion, BiSeries};
pub use pairing::{
    bilinear_pair, check_dual_cancellation, fock_pairing, inner_product_formula, pairing_formula, row, ITable,
};

use crate::error::{KqError, Result};
use crate::fock::{bra_lambda, g_ket, h_bra_expansion, pair, HBraExpansion};
use crate::laurent::{dual_two_point_kernel, g_column, g_table, Expansion, LaurentBlock, Window};
use crate::scalar::{binom_general, inv_pow2, pfaffian, rat, Beta, BetaScalar, SkewArray};
use crate::symfun::{exp_z_series, DeformedBasis, PSeries, StrictPartition};

/// `q^{[β]}_0 … q^{[β]}_order`, the coefficients of
/// `exp(Σ p_n (z^n - z̄^n)/n)` with `z̄ = -z/(1+βz)`. Each `q^{[β]}_n` has
/// degree at most `n`, so `order` may exceed the degree bound.
pub fn q_bracket_series(order: usize, degree: usize, beta: &Beta) -> Vec<PSeries> {
    let b = beta.scalar();
    let mut a = vec![PSeries::zero(degree); order + 1];
    for n in 1..=degree.min(order) as i64 {
        let pn = PSeries::p(degree, n as u32).scale_rational(&rat(1, n));
        // z̄^n = (-1)^n Σ_j C(-n, j) β^j z^{n+j}
        for j in 0..=(order as i64 - n) {
            let mut c = b.pow(j as u32).scale(&(binom_general(-n, j as u32) * rat(-crate::scalar::sign(n), 1)));
            if j == 0 {
                c = &c + &BetaScalar::one();
            }
            a[(n + j) as usize].add_scaled(&pn, &c);
        }
    }
    exp_z_series(&a, degree)
}

/// `o_n = 1/2 Σ_k (-β)^k q^{[β]}_{n-k}`, zero for `n < 0`.
#[derive(Clone, Debug)]
pub struct OSeries {
    degree: usize,
    coeffs: Vec<PSeries>,
}

impl OSeries {
    pub fn degree_bound(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, n: i64) -> PSeries {
        if n < 0 {
            return PSeries::zero(self.degree);
        }
        self.coeffs.get(n as usize).cloned().unwrap_or_else(|| PSeries::zero(self.degree))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

pub fn o_series(degree: usize, beta: &Beta) -> OSeries {
    o_series_from(&q_bracket_series(degree, degree, beta), degree, beta)
}

fn o_series_from(q: &[PSeries], degree: usize, beta: &Beta) -> OSeries {
    let nb = beta.negated().scalar();
    let coeffs = (0..q.len())
        .map(|n| {
            let mut acc = PSeries::zero(degree);
            for k in 0..=n {
                acc.add_scaled(&q[n - k], &nb.pow(k as u32));
            }
            acc.scale_rational(&rat(1, 2))
        })
        .collect();
    OSeries { degree, coeffs }
}

/// Shared state for the dual functions at one degree bound and one β.
pub struct DualEngine {
    degree: usize,
    beta: Beta,
    q: OnceLock<Vec<PSeries>>,
    o: OnceLock<OSeries>,
    psi: OnceLock<Result<LaurentBlock>>,
    hbra: OnceLock<HBraExpansion>,
    gp: Mutex<HashMap<StrictPartition, PSeries>>,
}

impl DualEngine {
    pub fn new(degree: usize, beta: Beta) -> Self {
        Self {
            degree,
            beta,
            q: OnceLock::new(),
            o: OnceLock::new(),
            psi: OnceLock::new(),
            hbra: OnceLock::new(),
            gp: Mutex::new(HashMap::new()),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn beta(&self) -> &Beta {
        &self.beta
    }

    /// `q^{[β]}_n` for `0 <= n <= 2D`; the upper half feeds the Ψ block.
    fn q(&self) -> &[PSeries] {
        self.q.get_or_init(|| q_bracket_series(2 * self.degree, self.degree, &self.beta))
    }

    pub fn q_n(&self, n: i64) -> PSeries {
        if n < 0 {
            return PSeries::zero(self.degree);
        }
        self.q()[n as usize].clone()
    }

    pub fn o_series(&self) -> &OSeries {
        self.o.get_or_init(|| o_series_from(self.q(), self.degree, &self.beta))
    }

    pub fn o_n(&self, n: i64) -> PSeries {
        self.o_series().coeff(n)
    }

    fn check(&self, lam: &StrictPartition) -> Result<()> {
        if lam.weight() > self.degree {
            return Err(KqError::WeightExceedsDegree {
                weight: lam.weight(),
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// `o_λ = 2^{-r} Pf(ζ)` with
    /// `ζ_{i,j} = Σ g^{i,j}_{p,q} q^{[β]}_{λ_i-p} q^{[β]}_{λ_j-q}`.
    pub fn pfaffian_1(&self, lam: &StrictPartition) -> Result<PSeries> {
        self.check(lam)?;
        let parts: Vec<i64> = lam.parts().iter().map(|&x| x as i64).collect();
        let r = parts.len();
        let rp = r + r % 2;
        let cells = upper_cells(rp);
        let values: Vec<PSeries> = cells
            .par_iter()
            .map(|&(i, j)| {
                let li = parts[i];
                let mut acc = PSeries::zero(self.degree);
                if j == r {
                    for ((p, _), c) in g_column(i + 1, li, &self.beta).entries() {
                        acc.add_scaled(&self.q_n(li - p), c);
                    }
                    return acc;
                }
                let lj = parts[j];
                for ((p, q), c) in g_table(i + 1, j + 1, li, lj, &self.beta).entries() {
                    acc.add_scaled(&self.q_n(li - p).mul(&self.q_n(lj - q)), c);
                }
                acc
            })
            .collect();
        let pf = pfaffian(&assemble(rp, &cells, values), PSeries::one(self.degree))?;
        Ok(pf.scale_rational(&inv_pow2(r)))
    }

    fn psi(&self) -> Result<&LaurentBlock> {
        self.psi
            .get_or_init(|| psi_block(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `o_{(a,b)}`: a quarter of the `z_1^a z_2^b` coefficient of
    /// `Ψ = (1+βz_1)^{-1} (1+βz_2)^{-2} q^{[β]}(z_1) q^{[β]}(z_2) (z_1-z_2)/(z_1+z_2+βz_1z_2)`.
    /// The block is bounded below by `b >= 0` and `a >= -b`.
    pub fn two_index(&self, a: i64, b: i64) -> Result<PSeries> {
        if b < 0 || a + b < 0 {
            return Ok(PSeries::zero(self.degree));
        }
        Ok(self.psi()?.coefficient(&[a, b])?.scale_rational(&rat(1, 4)))
    }

    /// `o_λ = Pf(κ)` with
    /// `κ_{i,j} = Σ β^{k+l} C(1-i,k) C(2-j,l) o_{(λ_i-k, λ_j-l)}`.
    pub fn pfaffian_2(&self, lam: &StrictPartition) -> Result<PSeries> {
        self.check(lam)?;
        let parts: Vec<i64> = lam.parts().iter().map(|&x| x as i64).collect();
        let r = parts.len();
        let rp = r + r % 2;
        let cells = upper_cells(rp);
        let values: Vec<Result<PSeries>> = cells
            .par_iter()
            .map(|&(i, j)| {
                let li = parts[i];
                let ci = -(i as i64);
                let mut acc = PSeries::zero(self.degree);
                if j == r {
                    for k in 0..=li {
                        let c = self.beta.pow(k as u32).scale(&binom_general(ci, k as u32));
                        acc.add_scaled(&self.o_n(li - k), &c);
                    }
                    return Ok(acc);
                }
                let lj = parts[j];
                let cj = 1 - j as i64;
                for l in 0..=lj {
                    for k in 0..=(li + lj - l) {
                        let w = binom_general(ci, k as u32) * binom_general(cj, l as u32);
                        if w == crate::scalar::int(0) {
                            continue;
                        }
                        let c = self.beta.pow((k + l) as u32).scale(&w);
                        acc.add_scaled(&self.two_index(li - k, lj - l)?, &c);
                    }
                }
                Ok(acc)
            })
            .collect();
        let values = values.into_iter().collect::<Result<Vec<_>>>()?;
        pfaffian(&assemble(rp, &cells, values), PSeries::one(self.degree))
    }

    pub fn h_bra(&self) -> &HBraExpansion {
        self.hbra
            .get_or_init(|| h_bra_expansion(DeformedBasis::Bracket, self.degree, &self.beta))
    }

    /// `2^{-r} ⟨0|e^{H^{[β]}}|λ⟩^g` with `|λ⟩^g = e^{-θ} φ̂_{λ_1} e^{-θ} ⋯ φ̂_{λ_r} (e^{-θ} φ̂_0)|0⟩`.
    pub fn fermionic(&self, lam: &StrictPartition) -> Result<PSeries> {
        self.check(lam)?;
        let mut word: Vec<i64> = lam.parts().iter().map(|&x| x as i64).collect();
        if word.len() % 2 == 1 {
            word.push(0);
        }
        let ket = g_ket(&word, &self.beta);
        let v = self.h_bra().contract(|mu| pair(&bra_lambda(mu.parts()), &ket));
        Ok(v.scale_rational(&inv_pow2(lam.len())))
    }

    /// `gp_λ = o_λ - Σ (-β)^{|λ|-|μ|} / 2^{row(λ/μ)} gp_μ` over all strict
    /// `μ ⊊ λ`, the empty partition included.
    pub fn gp(&self, lam: &StrictPartition) -> Result<PSeries> {
        self.check(lam)?;
        if let Some(v) = self.gp.lock().expect("gp cache").get(lam) {
            return Ok(v.clone());
        }
        let mut acc = self.pfaffian_1(lam)?;
        let nb = self.beta.negated().scalar();
        for mu in StrictPartition::all_up_to(lam.weight()) {
            if mu == *lam || !mu.contained_in(lam) {
                continue;
            }
            let c = nb
                .pow((lam.weight() - mu.weight()) as u32)
                .scale(&inv_pow2(row(lam, &mu)));
            acc.add_scaled(&self.gp(&mu)?, &-c);
        }
        self.gp.lock().expect("gp cache").insert(lam.clone(), acc.clone());
        Ok(acc)
    }
}

fn upper_cells(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn assemble(n: usize, cells: &[(usize, usize)], values: Vec<PSeries>) -> SkewArray<PSeries> {
    let map: HashMap<(usize, usize), PSeries> = cells.iter().copied().zip(values).collect();
    SkewArray::from_fn(n, |i, j| map[&(i, j)].clone())
}

fn psi_block(e: &DualEngine) -> Result<LaurentBlock> {
    let d = e.degree as i64;
    let deg = e.degree;
    let dirs = [Expansion::Ascending, Expansion::Ascending];
    let b = e.beta.scalar();
    let twisted = |n: i64, power: i64| {
        let mut acc = PSeries::zero(deg);
        for k in 0..=n {
            let c = b.pow(k as u32).scale(&binom_general(-power, k as u32));
            acc.add_scaled(&e.q_n(n - k), &c);
        }
        acc
    };
    // the kernel lowers z_1 by up to D, so z_1 must be known through 2D
    let left = LaurentBlock::univariate(Expansion::Ascending, Window::new(0, 2 * d), deg, (0..=2 * d).map(|n| (n, twisted(n, 1))))
        .embed(0, &dirs);
    let right = LaurentBlock::univariate(Expansion::Ascending, Window::new(0, d), deg, (0..=d).map(|n| (n, twisted(n, 2))))
        .embed(1, &dirs);
    let kernel = dual_two_point_kernel(&e.beta, d, deg)?;
    left.mul(&right)?.mul(&kernel)
}

pub fn o_pfaffian_1(lam: &StrictPartition, degree: usize, beta: &Beta) -> Result<PSeries> {
    DualEngine::new(degree, beta.clone()).pfaffian_1(lam)
}

pub fn o_two_index(a: i64, b: i64, degree: usize, beta: &Beta) -> Result<PSeries> {
    DualEngine::new(degree, beta.clone()).two_index(a, b)
}

pub fn o_pfaffian_2(lam: &StrictPartition, degree: usize, beta: &Beta) -> Result<PSeries> {
    DualEngine::new(degree, beta.clone()).pfaffian_2(lam)
}

pub fn o_fermionic(lam: &StrictPartition, degree: usize, beta: &Beta) -> Result<PSeries> {
    DualEngine::new(degree, beta.clone()).fermionic(lam)
}

pub fn gp(lam: &StrictPartition, degree: usize, beta: &Beta) -> Result<PSeries> {
    DualEngine::new(degree, beta.clone()).gp(lam)
}
