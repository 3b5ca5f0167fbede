use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::gq::classical_q;
use crate::scalar::{inv_pow2, Beta, BetaScalar};
use crate::symfun::{DeformedBasis, PSeries, StrictPartition};

/// `⟨0|e^{H}` written as `Σ_μ w_μ ⟨μ|` over strict `μ` with `|μ| <= D`,
/// where `w_μ = 2^{-ℓ(μ)} Q_μ` with power sums replaced by the deformed
/// generators of the chosen flavor.
///
/// For the paren flavor `w_μ` starts in degree `|μ|`, so the cut at `D` is
/// exact for any ket. The bracket generators carry lower-degree terms;
/// there the cut is exact on kets of grade at most `D`, which is all the
/// dual side ever pairs with.
#[derive(Clone, Debug)]
pub struct HBraExpansion {
    degree: usize,
    flavor: DeformedBasis,
    weights: BTreeMap<StrictPartition, PSeries>,
}

impl HBraExpansion {
    pub fn degree_bound(&self) -> usize {
        self.degree
    }

    pub fn flavor(&self) -> DeformedBasis {
        self.flavor
    }

    pub fn weights(&self) -> &BTreeMap<StrictPartition, PSeries> {
        &self.weights
    }

    pub fn weight(&self, mu: &StrictPartition) -> PSeries {
        self.weights.get(mu).cloned().unwrap_or_else(|| PSeries::zero(self.degree))
    }

    /// `Σ_μ w_μ · value(μ)`, where `value(μ)` is the pairing of `⟨μ|` with
    /// whatever the caller is evaluating.
    pub fn contract(&self, value: impl Fn(&StrictPartition) -> BetaScalar + Sync) -> PSeries {
        let parts: Vec<PSeries> = self
            .weights
            .par_iter()
            .filter_map(|(mu, w)| {
                let v = value(mu);
                (!v.is_zero()).then(|| w.scale(&v))
            })
            .collect();
        let mut acc = PSeries::zero(self.degree);
        for p in &parts {
            acc.add_assign(p);
        }
        acc
    }
}

pub fn h_bra_expansion(flavor: DeformedBasis, degree: usize, beta: &Beta) -> HBraExpansion {
    let images: Vec<PSeries> = (0..=degree as u32)
        .map(|n| if n == 0 { PSeries::one(degree) } else { flavor.generator(n, degree, beta) })
        .collect();
    let weights = StrictPartition::all_up_to(degree)
        .into_par_iter()
        .map(|mu| {
            let q = classical_q(&mu, degree).expect("weight within the degree bound");
            let w = q.substitute(&images).scale_rational(&inv_pow2(mu.len()));
            (mu, w)
        })
        .collect();
    HBraExpansion { degree, flavor, weights }
}
