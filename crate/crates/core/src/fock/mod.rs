//! Neutral fermions on normal-ordered bra and ket words.
//!
//! Bras live in `E` (indices `<= 0`, grade `<= 0`), kets in `F` (indices
//! `>= 0`, grade `>= 0`). Every formally infinite operator sum is cut off
//! by that grading, which is exact.

mod hbra;
mod ops;
mod state;

pub use hbra::{h_bra_expansion, HBraExpansion};
pub use ops::{
    bra_apply_b, bra_apply_exp_theta, bra_apply_phi, bra_apply_phi_beta, bra_apply_phi_hat_star, ket_apply_b,
    ket_apply_exp_theta, ket_apply_phi, ket_apply_phi_hat, pair, star_bra, star_ket, two_point, vacuum_expectation,
    wick_expectation,
};
pub use state::{BraState, KetState, Word};

use crate::scalar::Beta;

/// `|λ⟩ = φ_{λ_1}⋯φ_{λ_r}|0⟩`, with `φ_0` appended when `r` is odd.
pub fn ket_lambda(parts: &[u32]) -> KetState {
    let mut s = KetState::vacuum();
    if parts.len() % 2 == 1 {
        s = s.apply_phi(0);
    }
    for &p in parts.iter().rev() {
        s = s.apply_phi(p as i64);
    }
    s
}

/// `⟨λ| = |λ⟩^*`.
pub fn bra_lambda(parts: &[u32]) -> BraState {
    star_ket(&ket_lambda(parts))
}

/// `^g⟨n_1,…,n_r| = ⟨0|(φ̂_{n_r})^* e^{-Θ} ⋯ (φ̂_{n_1})^* e^{-Θ}`.
pub fn g_bra(word: &[i64], beta: &Beta) -> BraState {
    let mut s = BraState::vacuum();
    for &n in word.iter().rev() {
        s = bra_apply_phi_hat_star(&s, n, beta);
        s = bra_apply_exp_theta(&s, -1, beta);
    }
    s
}

/// `|n_1,…,n_r⟩^g = e^{-θ} φ̂_{n_1} e^{-θ} ⋯ φ̂_{n_r}|0⟩`, the star of `g_bra`.
pub fn g_ket(word: &[i64], beta: &Beta) -> KetState {
    let mut s = KetState::vacuum();
    for &n in word.iter().rev() {
        s = ket_apply_phi_hat(n, &s, beta);
        s = ket_apply_exp_theta(-1, &s, beta);
    }
    s
}

/// `s · φ^{(β)}_{n_1} e^Θ ⋯ φ^{(β)}_{n_r} e^Θ`, the operator word of
/// `|n_1,…,n_r⟩^G` acting on a bra.
pub fn apply_big_g_word(s: &BraState, word: &[i64], beta: &Beta) -> BraState {
    let mut s = s.clone();
    for &n in word {
        s = bra_apply_phi_beta(&s, n, beta);
        s = bra_apply_exp_theta(&s, 1, beta);
    }
    s
}

/// Vacuum coefficient of a bra, i.e. `⟨s|0⟩`.
pub fn vacuum_coeff(s: &BraState) -> crate::scalar::BetaScalar {
    s.coeff(&[])
}
