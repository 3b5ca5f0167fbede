use super::state::{BraState, KetState};
use crate::error::{KqError, Result};
use crate::scalar::{binom_general, int, pfaffian, rat, sign, Beta, BetaScalar, SkewArray};

pub fn bra_apply_phi(s: &BraState, n: i64) -> BraState {
    s.apply_phi(n)
}

pub fn ket_apply_phi(n: i64, s: &KetState) -> KetState {
    s.apply_phi(n)
}

fn half_beta_pow(beta: &Beta, k: i64) -> BetaScalar {
    beta.half().pow(k as u32)
}

/// `s · φ^{(β)}_n`. For `n >= 0` the tail `Σ_{k>=n}` stops at `k = -grade`,
/// beyond which `⟨w|φ_k` vanishes.
pub fn bra_apply_phi_beta(s: &BraState, n: i64, beta: &Beta) -> BraState {
    let mut out = BraState::zero();
    if n < 0 {
        let n = -n;
        for k in 1..=n {
            let c = half_beta_pow(beta, n - k).scale(&binom_general(-k, (n - k) as u32));
            out.add_scaled(&s.apply_phi(-k), &c);
        }
        return out;
    }
    let Some((lo, _)) = s.grade_range() else {
        return out;
    };
    for k in n..=(-lo).max(n) {
        let c = half_beta_pow(beta, k - n).scale(&binom_general(k, (k - n) as u32));
        out.add_scaled(&s.apply_phi(k), &c);
    }
    out
}

/// `φ̂_n · s` with `φ̂(z) = φ(z/(1+βz/2))`, i.e.
/// `φ̂_n = Σ_{m<=n} C(-m, n-m) (β/2)^{n-m} φ_m`; the tail stops at
/// `m = -grade`.
pub fn ket_apply_phi_hat(n: i64, s: &KetState, beta: &Beta) -> KetState {
    let mut out = KetState::zero();
    let Some((_, hi)) = s.grade_range() else {
        return out;
    };
    for m in (-hi).min(n)..=n {
        let c = half_beta_pow(beta, n - m).scale(&binom_general(-m, (n - m) as u32));
        out.add_scaled(&s.apply_phi(m), &c);
    }
    out
}

/// `s · (φ̂_m)^*` where `(φ̂_m)^* = Σ_{k<=m} C(-k, m-k) (β/2)^{m-k} (-1)^k φ_{-k}`
/// (equivalently `(-1)^m φ^{(-β)}_{-m}`). The tail stops at `k = grade`.
pub fn bra_apply_phi_hat_star(s: &BraState, m: i64, beta: &Beta) -> BraState {
    let mut out = BraState::zero();
    let Some((lo, _)) = s.grade_range() else {
        return out;
    };
    for k in lo.min(m)..=m {
        let c = half_beta_pow(beta, m - k).scale(&(binom_general(-k, (m - k) as u32) * int(sign(k))));
        out.add_scaled(&s.apply_phi(-k), &c);
    }
    out
}

fn check_odd(m: i64) -> Result<()> {
    if m % 2 == 0 {
        return Err(KqError::EvenHeisenberg(m));
    }
    Ok(())
}

/// `s · b_m` for odd `m < 0`, via `[φ_n, b_m] = -φ_{n-m}` and `⟨0|b_m = 0`.
pub fn bra_apply_b(s: &BraState, m: i64) -> Result<BraState> {
    if m >= 0 {
        return Err(KqError::WrongSideHeisenberg(m));
    }
    check_odd(m)?;
    let mut out = BraState::zero();
    for (w, c) in s.terms() {
        for i in 0..w.len() {
            let mut st = BraState::vacuum();
            for (j, &x) in w.iter().enumerate() {
                st = st.apply_phi(if j == i { x - m } else { x });
            }
            out.add_scaled(&st, &(-c));
        }
    }
    debug_assert!(graded(s, &out, -m));
    Ok(out)
}

/// `b_m · s` for odd `m > 0`, via `[b_m, φ_n] = φ_{n-m}` and `b_m|0⟩ = 0`.
pub fn ket_apply_b(m: i64, s: &KetState) -> Result<KetState> {
    if m <= 0 {
        return Err(KqError::WrongSideHeisenberg(m));
    }
    check_odd(m)?;
    let mut out = KetState::zero();
    for (w, c) in s.terms() {
        for i in 0..w.len() {
            let mut st = KetState::vacuum();
            for (j, &x) in w.iter().enumerate().rev() {
                st = st.apply_phi(if j == i { x - m } else { x });
            }
            out.add_scaled(&st, c);
        }
    }
    Ok(out)
}

fn graded(before: &BraState, after: &BraState, shift: i64) -> bool {
    match (before.grade_range(), after.grade_range()) {
        (Some((lo, hi)), Some((a, b))) => a >= lo + shift && b <= hi + shift,
        _ => true,
    }
}

/// `s · Θ` with `Θ = 2 Σ_{n odd} (β/2)^n / n · b_{-n}`.
fn bra_apply_theta(s: &BraState, beta: &Beta) -> BraState {
    let mut out = BraState::zero();
    let Some((lo, _)) = s.grade_range() else {
        return out;
    };
    for n in (1..=-lo).step_by(2) {
        let c = half_beta_pow(beta, n).scale(&rat(2, n));
        let t = bra_apply_b(s, -n).expect("odd negative mode");
        out.add_scaled(&t, &c);
    }
    out
}

/// `θ · s` with `θ = Θ^* = 2 Σ_{n odd} (β/2)^n / n · b_n`.
fn ket_apply_theta(s: &KetState, beta: &Beta) -> KetState {
    let mut out = KetState::zero();
    let Some((_, hi)) = s.grade_range() else {
        return out;
    };
    for n in (1..=hi).step_by(2) {
        let c = half_beta_pow(beta, n).scale(&rat(2, n));
        let t = ket_apply_b(n, s).expect("odd positive mode");
        out.add_scaled(&t, &c);
    }
    out
}

/// `s · e^{±Θ}`. Each Θ raises the grade by at least one, so the series
/// stops after `-grade` steps.
pub fn bra_apply_exp_theta(s: &BraState, sign: i64, beta: &Beta) -> BraState {
    let cap = s.grade_range().map_or(0, |(lo, _)| -lo);
    let mut out = s.clone();
    let mut term = s.clone();
    let mut k = 0;
    while !term.is_zero() {
        k += 1;
        assert!(k <= cap + 1, "e^Θ failed to terminate within the grade cap");
        term = bra_apply_theta(&term, beta).scale(&BetaScalar::from_rational(rat(sign, k)));
        out.add_assign(&term);
    }
    out
}

/// `e^{±θ} · s`.
pub fn ket_apply_exp_theta(sign: i64, s: &KetState, beta: &Beta) -> KetState {
    let cap = s.grade_range().map_or(0, |(_, hi)| hi);
    let mut out = s.clone();
    let mut term = s.clone();
    let mut k = 0;
    while !term.is_zero() {
        k += 1;
        assert!(k <= cap + 1, "e^θ failed to terminate within the grade cap");
        term = ket_apply_theta(&term, beta).scale(&BetaScalar::from_rational(rat(sign, k)));
        out.add_assign(&term);
    }
    out
}

fn star_sign(w: &[i64]) -> BetaScalar {
    BetaScalar::from_int(sign(w.iter().sum()))
}

/// `⟨0|φ_{m_1}⋯φ_{m_r} ↦ Π(-1)^{m_i} φ_{-m_r}⋯φ_{-m_1}|0⟩`.
pub fn star_bra(s: &BraState) -> KetState {
    let mut out = KetState::zero();
    for (w, c) in s.terms() {
        let word = w.iter().rev().map(|m| -m).collect();
        out.add_term(word, c * &star_sign(w));
    }
    out
}

pub fn star_ket(s: &KetState) -> BraState {
    let mut out = BraState::zero();
    for (w, c) in s.terms() {
        let word = w.iter().rev().map(|m| -m).collect();
        out.add_term(word, c * &star_sign(w));
    }
    out
}

/// `⟨b|k⟩`: the ket word is pushed into the bra letter by letter and the
/// vacuum coefficient read off (`⟨0|φ_0|0⟩ = 0`).
pub fn pair(b: &BraState, k: &KetState) -> BetaScalar {
    let mut acc = BetaScalar::zero();
    for (w, c) in k.terms() {
        let mut st = b.clone();
        for &n in w {
            st = st.apply_phi(n);
            if st.is_zero() {
                break;
            }
        }
        acc = &acc + &(c * &st.coeff(&[]));
    }
    acc
}

/// `⟨0|φ_a φ_b|0⟩`.
pub fn two_point(a: i64, b: i64) -> i64 {
    if a == 0 && b == 0 {
        1
    } else if a < 0 && a + b == 0 {
        2 * sign(a)
    } else {
        0
    }
}

/// `⟨0|φ_{n_1}⋯φ_{n_{2r}}|0⟩` as the Pfaffian of two-point values.
pub fn wick_expectation(indices: &[i64]) -> Result<BetaScalar> {
    if indices.len() % 2 == 1 {
        return Err(KqError::OddWickLength(indices.len()));
    }
    let a = SkewArray::from_fn(indices.len(), |i, j| BetaScalar::from_int(two_point(indices[i], indices[j])));
    pfaffian(&a, BetaScalar::one())
}

/// Same value by brute-force normal ordering.
pub fn vacuum_expectation(indices: &[i64]) -> BetaScalar {
    let mut st = BraState::vacuum();
    for &n in indices {
        st = st.apply_phi(n);
    }
    st.coeff(&[])
}
