use super::*;
use crate::fock::{bra_apply_exp_theta, bra_apply_phi_beta, ket_lambda, pair, BraState};
use crate::scalar::{int, rat, BetaScalar};
use crate::symfun::{exp_z_series, from_finite, q_series, to_deformed_basis, Partition};

fn sym() -> Beta {
    Beta::symbolic()
}

fn zero() -> Beta {
    Beta::value(int(0))
}

fn sp(parts: &[u32]) -> StrictPartition {
    StrictPartition::new(parts.to_vec()).unwrap()
}

fn lift_oracle(lam: &StrictPartition, vars: usize, degree: usize) -> PSeries {
    let f = gq_oracle(lam, vars, degree, &sym()).unwrap();
    from_finite(&f, vars, degree).unwrap()
}

#[test]
fn series_classical_limit() {
    let e = GqEngine::new(6, zero());
    let q = q_series(6);
    for n in 0..=6 {
        assert_eq!(e.gq_n(n), q[n as usize], "n = {n}");
    }
}

#[test]
fn series_invariants() {
    let e = GqEngine::new(5, sym());
    for n in -5..=5i64 {
        let g = e.gq_n(n);
        let at_zero = g.constant_term();
        let want = if n <= 0 { BetaScalar::beta().scale(&int(-1)).pow((-n) as u32) } else { BetaScalar::zero() };
        assert_eq!(at_zero, want, "n = {n}");
        if let Some(l) = g.lowest_degree() {
            assert!(l as i64 >= n.max(0));
        }
    }
}

#[test]
fn gq1_matches_oracle() {
    let e = GqEngine::new(2, sym());
    assert_eq!(e.gq_n(1), lift_oracle(&sp(&[1]), 2, 2));
}

#[test]
fn oracle_examples() {
    let empty = gq_oracle(&StrictPartition::empty(), 3, 3, &sym()).unwrap();
    assert_eq!(empty, crate::symfun::FinitePoly::one(3));
    // (2 + βx)x through degree 2
    let one = gq_oracle(&sp(&[1]), 1, 2, &sym()).unwrap();
    assert_eq!(one.coeff(&[1]), BetaScalar::from_int(2));
    assert_eq!(one.coeff(&[2]), BetaScalar::beta());
    let two = gq_oracle(&sp(&[1]), 2, 1, &zero()).unwrap();
    assert_eq!(two.coeff(&[1, 0]), BetaScalar::from_int(2));
    assert_eq!(two.coeff(&[0, 1]), BetaScalar::from_int(2));
    assert!(matches!(gq_oracle(&sp(&[1]), 9, 1, &sym()), Err(KqError::TooManyVariables(9))));
}

#[test]
fn monomial_symmetric_values() {
    let x = [int(1), int(2), int(3)];
    // m_{(2,1)} = Σ x_i^2 x_j over i != j
    let want: i64 = [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)].iter().map(|&(a, b): &(i64, i64)| a * a * b).sum();
    assert_eq!(monomial_symmetric_eval(&Partition::new(vec![2, 1]).unwrap(), &x), int(want));
    assert_eq!(monomial_symmetric_eval(&Partition::new(vec![1, 1, 1]).unwrap(), &x), int(6));
    assert_eq!(monomial_symmetric_eval(&Partition::empty(), &x), int(1));
}

#[test]
fn pfaffian_1_examples() {
    let e = GqEngine::new(5, zero());
    assert_eq!(e.pfaffian_1(&StrictPartition::empty()).unwrap(), PSeries::one(5));
    let q = q_series(5);
    for n in 1..=5 {
        assert_eq!(e.pfaffian_1(&sp(&[n])).unwrap(), q[n as usize]);
    }
    // Q_{(2,1)} = q_2 q_1 - 2 q_3
    let want = q[2].mul(&q[1]).sub(&q[3].scale_rational(&int(2)));
    assert_eq!(classical_q(&sp(&[2, 1]), 5).unwrap(), want);
}

#[test]
fn pfaffian_1_matches_oracle() {
    let e = GqEngine::new(5, sym());
    for lam in [sp(&[1]), sp(&[2]), sp(&[2, 1]), sp(&[3, 1])] {
        assert_eq!(e.pfaffian_1(&lam).unwrap(), lift_oracle(&lam, 5, 5), "{lam}");
    }
}

#[test]
fn derived_windows_are_complete() {
    let e = GqEngine::new(5, sym());
    for lam in [sp(&[1]), sp(&[2, 1]), sp(&[3, 2]), sp(&[3, 1])] {
        assert_eq!(e.pfaffian_1(&lam).unwrap(), e.pfaffian_1_windowed(&lam, 3).unwrap(), "{lam}");
    }
}

#[test]
fn weight_above_degree_is_rejected() {
    let e = GqEngine::new(2, sym());
    assert!(matches!(e.pfaffian_1(&sp(&[2, 1])), Err(KqError::WeightExceedsDegree { weight: 3, degree: 2 })));
}

#[test]
fn two_index_examples() {
    let e = GqEngine::new(5, zero());
    let q = q_series(5);
    // classical two-row Q_{(a,b)} = q_a q_b + 2 Σ_{i>=1} (-1)^i q_{a+i} q_{b-i}
    for (a, b) in [(2i64, 1i64), (3, 1), (3, 2), (4, 1)] {
        let mut want = q[a as usize].mul(&q[b as usize]);
        for i in 1..=b {
            let t = q[(a + i) as usize].mul(&q[(b - i) as usize]).scale_rational(&int(2 * crate::scalar::sign(i)));
            want.add_assign(&t);
        }
        assert_eq!(e.two_index(a, b).unwrap(), want, "({a},{b})");
    }
    for a in 1..=2 {
        assert!(e.two_index(a, a).unwrap().is_zero());
    }
    let s = GqEngine::new(5, sym());
    for (a, b) in [(2i64, 1i64), (3, 2), (4, 1)] {
        assert_eq!(s.two_index(a, b).unwrap(), s.pfaffian_1(&sp(&[a as u32, b as u32])).unwrap());
    }
}

#[test]
fn pfaffian_2_matches_pfaffian_1() {
    let e = GqEngine::new(6, sym());
    for lam in [sp(&[1]), sp(&[3]), sp(&[2, 1]), sp(&[4, 1]), sp(&[3, 2, 1])] {
        assert_eq!(e.pfaffian_2(&lam).unwrap(), e.pfaffian_1(&lam).unwrap(), "{lam}");
    }
}

#[test]
fn fermionic_matches_pfaffian_1() {
    let e = GqEngine::new(5, sym());
    assert_eq!(e.fermionic(&StrictPartition::empty()).unwrap(), PSeries::one(5));
    for lam in [sp(&[1]), sp(&[2]), sp(&[2, 1]), sp(&[3, 2])] {
        assert_eq!(e.fermionic(&lam).unwrap(), e.pfaffian_1(&lam).unwrap(), "{lam}");
    }
    let c = GqEngine::new(5, zero());
    for lam in [sp(&[3]), sp(&[3, 1]), sp(&[2, 1])] {
        assert_eq!(c.fermionic(&lam).unwrap(), classical_q(&lam, 5).unwrap());
    }
}

#[test]
fn fault_injection_breaks_agreement() {
    let e = GqEngine::new(4, sym()).with_corrupt_f_table();
    let lam = sp(&[2, 1]);
    assert_ne!(e.pfaffian_1(&lam).unwrap(), e.pfaffian_2(&lam).unwrap());
}

/// `exp(Σ p_n a_n(z)/n)` as a power series in `z` when every `a_n` has
/// zero constant term.
fn exp_power_sums(d: usize, a: impl Fn(i64, i64) -> BetaScalar) -> Vec<PSeries> {
    let coeffs: Vec<PSeries> = (0..=d as i64)
        .map(|j| {
            let mut s = PSeries::zero(d);
            if j == 0 {
                return s;
            }
            for n in 1..=d as i64 {
                s.add_scaled(&PSeries::p(d, n as u32).scale_rational(&rat(1, n)), &a(n, j));
            }
            s
        })
        .collect();
    exp_z_series(&coeffs, d)
}

/// `[z^j] (z^n - (-z-β)^n)` for `j >= 1`.
fn shifted_power(n: i64, j: i64) -> BetaScalar {
    if j > n {
        return BetaScalar::zero();
    }
    let mut c = BetaScalar::beta()
        .scale(&int(-1))
        .pow((n - j) as u32)
        .scale(&(crate::scalar::binom_general(n, j as u32) * int(-crate::scalar::sign(j))));
    if j == n {
        c = &c + &BetaScalar::one();
    }
    c
}

#[test]
fn important_remark() {
    // (1+βz^{-1}) θ(-β) GQ(z) = exp(Σ p_n (z^n - (-z-β)^n)/n)
    let d = 5;
    let e = GqEngine::new(d, sym());
    let theta_neg_beta = {
        let mut s = PSeries::zero(d);
        for n in 1..=d as i64 {
            let c = BetaScalar::beta().scale(&int(-1)).pow(n as u32);
            s.add_scaled(&PSeries::p(d, n as u32).scale_rational(&rat(1, n)), &c);
        }
        s.exp()
    };
    // the right side has constant exponent -Σ p_n (-β)^n / n = log θ(-β)^{-1}
    let regular = exp_power_sums(d, shifted_power);
    let const_part = {
        let mut s = PSeries::zero(d);
        for n in 1..=d as i64 {
            let c = BetaScalar::beta().scale(&int(-1)).pow(n as u32).scale(&int(-1));
            s.add_scaled(&PSeries::p(d, n as u32).scale_rational(&rat(1, n)), &c);
        }
        s.exp()
    };
    for n in -3..=d as i64 {
        let lhs = e.gq_n(n).add(&e.gq_n(n + 1).scale(&BetaScalar::beta())).mul(&theta_neg_beta);
        let rhs = if n >= 0 { regular[n as usize].mul(&const_part) } else { PSeries::zero(d) };
        assert_eq!(lhs, rhs, "z^{n}");
    }
}

#[test]
fn for_theorem_gq_n() {
    // ⟨0|e^{H} φ^{(β)}(z) e^{-Θ} φ^{(β)}_0 e^Θ|0⟩ = (1+βz^{-1}) exp{Σ p_n/n (z^n - (-z-β)^n + (-β)^n)}
    let d = 5;
    let beta = sym();
    let e = GqEngine::new(d, beta.clone());
    let closed = exp_power_sums(d, shifted_power);
    for n in 0..=4i64 {
        let lhs = e.h_bra().contract(|mu| {
            let mut s = crate::fock::bra_lambda(mu.parts());
            s = bra_apply_phi_beta(&s, n, &beta);
            s = bra_apply_exp_theta(&s, -1, &beta);
            s = bra_apply_phi_beta(&s, 0, &beta);
            s = bra_apply_exp_theta(&s, 1, &beta);
            s.coeff(&[])
        });
        let next = closed.get(n as usize + 1).cloned().unwrap_or_else(|| PSeries::zero(d));
        let rhs = closed[n as usize].add(&next.scale(&BetaScalar::beta()));
        assert_eq!(lhs, rhs, "z^{n}");
    }
}

#[test]
fn e_h_e_theta_scalar() {
    // ⟨0|e^H e^Θ|λ⟩ = exp(-Σ p_n (-β)^n / n) ⟨0|e^H|λ⟩
    let d = 5;
    let beta = sym();
    let e = GqEngine::new(d, beta.clone());
    let mut c = PSeries::zero(d);
    for n in 1..=d as i64 {
        let k = BetaScalar::beta().scale(&int(-1)).pow(n as u32).scale(&int(-1));
        c.add_scaled(&PSeries::p(d, n as u32).scale_rational(&rat(1, n)), &k);
    }
    let c = c.exp();
    for lam in [StrictPartition::empty(), sp(&[1]), sp(&[2, 1]), sp(&[3])] {
        let ket = ket_lambda(lam.parts());
        let lhs = e.h_bra().contract(|mu| {
            let b = bra_apply_exp_theta(&crate::fock::bra_lambda(mu.parts()), 1, &beta);
            pair(&b, &ket)
        });
        let plain = e.h_bra().contract(|mu| pair(&crate::fock::bra_lambda(mu.parts()), &ket));
        assert_eq!(lhs, c.mul(&plain), "{lam}");
    }
    let _ = BraState::vacuum();
}

#[test]
fn odd_support_in_deformed_basis() {
    let e = GqEngine::new(6, sym());
    for lam in [sp(&[1]), sp(&[2]), sp(&[2, 1]), sp(&[4]), sp(&[3, 2, 1])] {
        let c = to_deformed_basis(&e.pfaffian_1(&lam).unwrap(), DeformedBasis::Paren, &sym());
        for (mu, v) in &c {
            assert!(v.is_zero() || mu.is_odd(), "{lam}: {mu}");
        }
    }
}

#[test]
fn gq_zero_is_reported() {
    // GQ_0 as a series coefficient; the result is recorded, not assumed
    let e = GqEngine::new(4, sym());
    let g0 = e.gq_n(0);
    assert_eq!(g0.constant_term(), BetaScalar::one());
    eprintln!("GQ_0 through degree 4: {g0}");
}

#[test]
fn kq_cancellation_examples() {
    let d = 5;
    let beta = sym();
    let e = GqEngine::new(d, beta.clone());
    assert!(check_kq_cancellation(&e.pfaffian_1(&sp(&[2])).unwrap(), d, d + 2, &beta).unwrap());
    assert!(check_kq_cancellation(&e.pfaffian_1(&sp(&[2, 1])).unwrap(), d, d + 2, &beta).unwrap());
    assert!(!check_kq_cancellation(&PSeries::p(d, 1), d, d + 2, &beta).unwrap());
    assert!(check_kq_cancellation(&crate::symfun::p_beta(1, d, &beta), d, d + 2, &beta).unwrap());
    assert!(check_kq_cancellation(&crate::symfun::p_beta(3, d, &beta), d, d + 2, &beta).unwrap());
    assert!(!check_kq_cancellation(&crate::symfun::p_beta(2, d, &beta), d, d + 2, &beta).unwrap());
    assert!(check_kq_cancellation(&PSeries::p(d, 1), d, d, &beta).is_err());
}
