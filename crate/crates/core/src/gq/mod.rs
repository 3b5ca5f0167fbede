//! `GQ_λ` by four independent routes: Pfaffian I (kernel coefficient
//! tables), Pfaffian II (two-index values), the fermionic expectation, and
//! brute-force symmetrization in finitely many variables.

mod cancellation;
mod oracle;
mod series;

use std::sync::OnceLock;

use rayon::prelude::*;

pub use cancellation::check_kq_cancellation;
pub use oracle::{gq_oracle, monomial_symmetric_eval};
pub use series::{gq_series, GQSeries};

use crate::error::{KqError, Result};
use crate::fock::{apply_big_g_word, bra_lambda, h_bra_expansion, vacuum_coeff, HBraExpansion};
use crate::laurent::{f_column, f_table, two_point_kernel, Expansion, KernelCoeffTable, LaurentBlock, Window};
use crate::scalar::{binom_general, pfaffian, sign, Beta, BetaScalar, SkewArray};
use crate::symfun::{q_series, DeformedBasis, PSeries, StrictPartition};

/// Shared state for computing many `GQ_λ` at one degree bound and one
/// value of β. The generating series, the two-index block and the
/// fermionic bridge are built on first use.
pub struct GqEngine {
    degree: usize,
    beta: Beta,
    corrupt_f_table: bool,
    series: OnceLock<GQSeries>,
    block: OnceLock<Result<LaurentBlock>>,
    hbra: OnceLock<HBraExpansion>,
}

impl GqEngine {
    pub fn new(degree: usize, beta: Beta) -> Self {
        Self {
            degree,
            beta,
            corrupt_f_table: false,
            series: OnceLock::new(),
            block: OnceLock::new(),
            hbra: OnceLock::new(),
        }
    }

    /// Fault injection for the verification harness: perturbs `f^{1,2}_{0,0}`.
    pub fn with_corrupt_f_table(mut self) -> Self {
        self.corrupt_f_table = true;
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn beta(&self) -> &Beta {
        &self.beta
    }

    pub fn series(&self) -> &GQSeries {
        self.series.get_or_init(|| gq_series(self.degree, -(self.degree as i64), &self.beta))
    }

    /// `GQ_n`, the one-row value at any integer `n`.
    pub fn gq_n(&self, n: i64) -> PSeries {
        self.series().coeff(n)
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

    fn f_entries(&self, i: usize, j: usize, r: usize, p_max: i64, s_max: i64) -> KernelCoeffTable {
        let mut t = f_table(i, j, r, p_max, s_max, &self.beta);
        if self.corrupt_f_table && i == 1 && j == 2 {
            t.insert(0, 0, &t.get(0, 0) + &crate::scalar::BetaScalar::one());
        }
        t
    }

    /// Pfaffian formula with `τ_{i,j} = Σ f^{i,j}_{p,q} GQ_{λ_i+p} GQ_{λ_j+q}`.
    /// `GQ_n` has lowest degree `>= max(n, 0)`, so only `p <= D - λ_i` and
    /// `p + q <= D - λ_i - λ_j` can contribute.
    pub fn pfaffian_1(&self, lam: &StrictPartition) -> Result<PSeries> {
        self.pfaffian_1_windowed(lam, 0)
    }

    /// Pfaffian I with every summation window widened by `slack`; used to
    /// confirm that the derived windows lose nothing.
    pub(crate) fn pfaffian_1_windowed(&self, lam: &StrictPartition, slack: i64) -> Result<PSeries> {
        self.check(lam)?;
        let d = self.degree as i64;
        let parts: Vec<i64> = lam.parts().iter().map(|&x| x as i64).collect();
        let r = parts.len();
        let rp = r + r % 2;
        let entry = |i: usize, j: usize| -> PSeries {
            let li = parts[i];
            let mut acc = PSeries::zero(self.degree);
            if j == r {
                let t = f_column(i + 1, r, d - li + slack, &self.beta);
                for ((p, _), c) in t.entries() {
                    acc.add_scaled(&self.gq_n(li + p), c);
                }
                return acc;
            }
            let lj = parts[j];
            let t = self.f_entries(i + 1, j + 1, r, d - li + slack, d - li - lj + slack);
            for ((p, q), c) in t.entries() {
                let a = self.gq_n(li + p);
                if a.is_zero() {
                    continue;
                }
                acc.add_scaled(&a.mul(&self.gq_n(lj + q)), c);
            }
            acc
        };
        let cells: Vec<(usize, usize)> = (0..rp).flat_map(|i| (i + 1..rp).map(move |j| (i, j))).collect();
        let values: Vec<PSeries> = cells.par_iter().map(|&(i, j)| entry(i, j)).collect();
        let a = SkewArray::from_fn(rp, |i, j| {
            values[cells.iter().position(|&c| c == (i, j)).expect("cell")].clone()
        });
        pfaffian(&a, PSeries::one(self.degree))
    }

    fn block(&self) -> Result<&LaurentBlock> {
        self.block
            .get_or_init(|| two_index_block(self, 0))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Coefficient of `z_1^a z_2^b` in
    /// `(1+βz_1^{-1})^{-1} GQ(z_1) GQ(z_2) (z_1-z_2)/(z_1+z_2+β)`.
    /// Its lowest degree is at least `a + b`, so it vanishes past the bound.
    pub fn two_index(&self, a: i64, b: i64) -> Result<PSeries> {
        if a + b > self.degree as i64 {
            return Ok(PSeries::zero(self.degree));
        }
        let margin = (-a).max(-b).max(0);
        if margin == 0 {
            return self.block()?.coefficient(&[a, b]);
        }
        two_index_block(self, margin)?.coefficient(&[a, b])
    }

    /// Pfaffian formula with `ρ_{i,j} = Σ β^{k+l} C(i+1-r',k) C(j-r',l) GQ_{(λ_i+k, λ_j+l)}`.
    pub fn pfaffian_2(&self, lam: &StrictPartition) -> Result<PSeries> {
        self.check(lam)?;
        let d = self.degree as i64;
        let parts: Vec<i64> = lam.parts().iter().map(|&x| x as i64).collect();
        let r = parts.len();
        let rp = (r + r % 2) as i64;
        let mut cells = Vec::new();
        for i in 0..rp as usize {
            for j in i + 1..rp as usize {
                cells.push((i, j));
            }
        }
        let values: Vec<Result<PSeries>> = cells
            .par_iter()
            .map(|&(i, j)| {
                let li = parts[i];
                let ci = i as i64 + 2 - rp;
                let mut acc = PSeries::zero(self.degree);
                if j == r {
                    for k in 0..=(d - li) {
                        let c = self.beta.pow(k as u32).scale(&binom_general(ci, k as u32));
                        acc.add_scaled(&self.gq_n(li + k), &c);
                    }
                    return Ok(acc);
                }
                let lj = parts[j];
                let cj = j as i64 + 1 - rp;
                for k in 0..=(d - li - lj) {
                    for l in 0..=(d - li - lj - k) {
                        let w = binom_general(ci, k as u32) * binom_general(cj, l as u32);
                        if w == crate::scalar::int(0) {
                            continue;
                        }
                        let c = self.beta.pow((k + l) as u32).scale(&w);
                        acc.add_scaled(&self.two_index(li + k, lj + l)?, &c);
                    }
                }
                Ok(acc)
            })
            .collect();
        let values: Vec<PSeries> = values.into_iter().collect::<Result<_>>()?;
        let a = SkewArray::from_fn(rp as usize, |i, j| {
            values[cells.iter().position(|&c| c == (i, j)).expect("cell")].clone()
        });
        pfaffian(&a, PSeries::one(self.degree))
    }

    pub fn h_bra(&self) -> &HBraExpansion {
        self.hbra
            .get_or_init(|| h_bra_expansion(DeformedBasis::Paren, self.degree, &self.beta))
    }

    /// `⟨0|e^{H^{(β)}} φ^{(β)}_{λ_1} e^Θ ⋯ φ^{(β)}_{λ_r} e^Θ (φ^{(β)}_0 e^Θ)|0⟩`
    /// with the bra expanded over `⟨μ|`.
    pub fn fermionic(&self, lam: &StrictPartition) -> Result<PSeries> {
        self.check(lam)?;
        let mut word: Vec<i64> = lam.parts().iter().map(|&x| x as i64).collect();
        if word.len() % 2 == 1 {
            word.push(0);
        }
        Ok(self
            .h_bra()
            .contract(|mu| vacuum_coeff(&apply_big_g_word(&bra_lambda(mu.parts()), &word, &self.beta))))
    }
}

fn two_index_block(e: &GqEngine, margin: i64) -> Result<LaurentBlock> {
    let d = e.degree as i64;
    let deg = e.degree;
    let dirs = [Expansion::Descending, Expansion::Descending];
    let k = d + margin;
    let series = e.series();
    // (1+βz^{-1})^{-1} GQ(z_1), needed for u_1 = -a <= margin
    let inv = LaurentBlock::univariate(
        Expansion::Descending,
        Window::new(0, d + margin),
        deg,
        (0..=d + margin).map(|m| (-m, PSeries::constant(deg, e.beta.negated().pow(m as u32)))),
    );
    let g1 = LaurentBlock::univariate(
        Expansion::Descending,
        Window::new(-d, margin),
        deg,
        (-margin..=d).map(|n| (n, series.coeff(n))),
    );
    let left = inv.mul(&g1)?.embed(0, &dirs);
    // GQ(z_2) must reach far enough down to meet the kernel's z_2^{k} terms
    let g2 = LaurentBlock::univariate(
        Expansion::Descending,
        Window::new(-d, k + margin),
        deg,
        (-(k + margin)..=d).map(|n| (n, series.coeff(n))),
    )
    .embed(1, &dirs);
    let kernel = two_point_kernel(&e.beta, -k, deg)?;
    left.mul(&g2)?.mul(&kernel)
}

pub fn gq_pfaffian_1(lam: &StrictPartition, degree: usize, beta: &Beta) -> Result<PSeries> {
    GqEngine::new(degree, beta.clone()).pfaffian_1(lam)
}

pub fn gq_two_index(a: i64, b: i64, degree: usize, beta: &Beta) -> Result<PSeries> {
    GqEngine::new(degree, beta.clone()).two_index(a, b)
}

pub fn gq_pfaffian_2(lam: &StrictPartition, degree: usize, beta: &Beta) -> Result<PSeries> {
    GqEngine::new(degree, beta.clone()).pfaffian_2(lam)
}

pub fn gq_fermionic(lam: &StrictPartition, degree: usize, beta: &Beta) -> Result<PSeries> {
    GqEngine::new(degree, beta.clone()).fermionic(lam)
}

/// Schur's `Q_λ` from `Q_{(a,b)} = q_a q_b + 2 Σ_{k>=1} (-1)^k q_{a+k} q_{b-k}`
/// and a Pfaffian. Kept apart from the deformed machinery so that the
/// fermionic route does not lean on Pfaffian I.
pub fn classical_q(lam: &StrictPartition, degree: usize) -> Result<PSeries> {
    if lam.weight() > degree {
        return Err(KqError::WeightExceedsDegree { weight: lam.weight(), degree });
    }
    let q = q_series(degree);
    let qn = |n: i64| usize::try_from(n).ok().and_then(|n| q.get(n)).cloned().unwrap_or_else(|| PSeries::zero(degree));
    let two_row = |a: i64, b: i64| {
        let mut s = qn(a).mul(&qn(b));
        for k in 1..=b {
            s.add_scaled(&qn(a + k).mul(&qn(b - k)), &BetaScalar::from_int(2 * sign(k)));
        }
        s
    };
    let mut parts: Vec<i64> = lam.parts().iter().map(|&x| x as i64).collect();
    if parts.len() % 2 == 1 {
        parts.push(0);
    }
    let a = SkewArray::from_fn(parts.len(), |i, j| two_row(parts[i], parts[j]));
    pfaffian(&a, PSeries::one(degree))
}

#[cfg(test)]
mod tests;
