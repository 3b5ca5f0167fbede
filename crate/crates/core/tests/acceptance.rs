//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line, then exits nonzero if any
//! criterion failed.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use kq_core::dualq::{
    bilinear_pair, cauchy_kernel_direct, cauchy_kernel_expansion, check_dual_cancellation, fock_pairing,
    inner_product_formula, pairing_formula, q_bracket_series, DualEngine,
};
use kq_core::fock::{
    bra_apply_exp_theta, bra_apply_phi_beta, bra_apply_phi_hat_star, bra_lambda, ket_lambda, pair,
    vacuum_expectation, wick_expectation, BraState,
};
use kq_core::gq::{check_kq_cancellation, gq_oracle, GqEngine};
use kq_core::laurent::two_point_kernel;
use kq_core::scalar::{binom_general, int, pfaffian, rat, sign, SkewArray};
use kq_core::symfun::{eval_finite, exp_z_series, q_series, PSeries, StrictPartition};
use kq_core::{Beta, BetaScalar};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sym() -> Beta {
    Beta::symbolic()
}

fn b() -> BetaScalar {
    BetaScalar::beta()
}

fn four_route_gq() -> Check {
    let d = 8;
    let e = GqEngine::new(d, sym());
    let all = StrictPartition::all_up_to(6);
    ensure(all.len() == 14, || format!("expected 14 partitions, got {}", all.len()))?;
    all.par_iter().try_for_each(|lam| {
        let a = e.pfaffian_1(lam).map_err(|x| x.to_string())?;
        let p2 = e.pfaffian_2(lam).map_err(|x| x.to_string())?;
        ensure(p2 == a, || format!("{lam}: pfaffian II differs"))?;
        let fe = e.fermionic(lam).map_err(|x| x.to_string())?;
        ensure(fe == a, || format!("{lam}: fermionic differs"))?;
        let vars = if lam.weight() <= 4 { 6 } else { 8 };
        let oracle = gq_oracle(lam, vars, d, &sym()).map_err(|x| x.to_string())?;
        ensure(eval_finite(&a, vars) == oracle, || format!("{lam}: oracle differs in {vars} variables"))
    })
}

/// Schur's `Q_λ` from the classical two-row formula
/// `Q_{(a,b)} = q_a q_b + 2 Σ_{k>=1} (-1)^k q_{a+k} q_{b-k}` and a Pfaffian.
fn schur_q(lam: &StrictPartition, d: usize) -> PSeries {
    let q = q_series(d);
    let qn = |n: i64| if (0..=d as i64).contains(&n) { q[n as usize].clone() } else { PSeries::zero(d) };
    let two_row = |a: i64, bb: i64| {
        let mut s = qn(a).mul(&qn(bb));
        for k in 1..=bb {
            s.add_scaled(&qn(a + k).mul(&qn(bb - k)), &BetaScalar::from_int(2 * sign(k)));
        }
        s
    };
    let mut parts: Vec<i64> = lam.parts().iter().map(|&x| x as i64).collect();
    if parts.len() % 2 == 1 {
        parts.push(0);
    }
    let a = SkewArray::from_fn(parts.len(), |i, j| two_row(parts[i], parts[j]));
    pfaffian(&a, PSeries::one(d)).expect("even size")
}

fn classical_limit() -> Check {
    let d = 8;
    let zero = Beta::value(int(0));
    let e0 = GqEngine::new(d, zero.clone());
    let es = GqEngine::new(d, sym());
    for lam in StrictPartition::all_up_to(6) {
        let q = schur_q(&lam, d);
        let a = e0.pfaffian_1(&lam).map_err(|x| x.to_string())?;
        ensure(a == q, || format!("{lam}: β=0 Pfaffian differs from Schur Q"))?;
        let f = e0.fermionic(&lam).map_err(|x| x.to_string())?;
        ensure(f == q, || format!("{lam}: ⟨0|e^H|λ⟩ differs from Schur Q"))?;
        let s = es.pfaffian_1(&lam).and_then(|x| x.specialize(&zero)).map_err(|x| x.to_string())?;
        ensure(s == q, || format!("{lam}: symbolic result at β=0 differs"))?;
    }
    Ok(())
}

fn two_point_regression() -> Check {
    let beta = sym();
    let v = BraState::vacuum();
    let two = |m: i64, k: i64| bra_apply_phi_beta(&bra_apply_phi_beta(&v, m, &beta), k, &beta).coeff(&[]);
    ensure(two(0, 0) == BetaScalar::one(), || "⟨φ^β_0 φ^β_0⟩".into())?;
    ensure(two(-1, 0) == -b(), || format!("⟨φ^β_-1 φ^β_0⟩ = {}", two(-1, 0)))?;
    ensure(two(-1, 1) == BetaScalar::from_int(-2), || format!("⟨φ^β_-1 φ^β_1⟩ = {}", two(-1, 1)))?;
    let k = two_point_kernel(&beta, -3, 0).map_err(|x| x.to_string())?;
    let coef = |zp: i64, wp: i64| k.coefficient(&[zp, wp]).map(|s| s.constant_term()).map_err(|x| x.to_string());
    let want = [
        vec![BetaScalar::one()],
        vec![-b(), BetaScalar::from_int(-2)],
        vec![b().pow(2), b().scale(&int(3)), BetaScalar::from_int(2)],
    ];
    for (kk, row) in want.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            let got = coef(-(kk as i64), j as i64)?;
            ensure(&got == c, || format!("kernel z^-{kk} w^{j}: {got} vs {c}"))?;
        }
        let beyond = coef(-(kk as i64), row.len() as i64)?;
        ensure(beyond.is_zero(), || format!("kernel z^-{kk} has a stray w^{} term", row.len()))?;
    }
    Ok(())
}

fn cancellation() -> Check {
    let beta = sym();
    let d = 6;
    let g = GqEngine::new(d, beta.clone());
    let e = DualEngine::new(d, beta.clone());
    let all = StrictPartition::all_up_to(6);
    all.par_iter().try_for_each(|lam| {
        let f = g.pfaffian_1(lam).map_err(|x| x.to_string())?;
        ensure(check_kq_cancellation(&f, d, 8, &beta).map_err(|x| x.to_string())?, || format!("GQ{lam}"))
    })?;
    ensure(!check_kq_cancellation(&PSeries::p(d, 1), d, 8, &beta).map_err(|x| x.to_string())?, || "p1 passed".into())?;
    for lam in &all {
        let o = e.pfaffian_1(lam).map_err(|x| x.to_string())?;
        ensure(check_dual_cancellation(&o, 8, &beta).map_err(|x| x.to_string())?, || format!("o{lam}"))?;
        let gp = e.gp(lam).map_err(|x| x.to_string())?;
        ensure(check_dual_cancellation(&gp, 8, &beta).map_err(|x| x.to_string())?, || format!("gp{lam}"))?;
    }
    ensure(!check_dual_cancellation(&PSeries::p(d, 2), 8, &beta).map_err(|x| x.to_string())?, || "p2 passed".into())
}

fn dual_routes() -> Check {
    let beta = sym();
    let d = 7;
    let e = DualEngine::new(d, beta.clone());
    StrictPartition::all_up_to(6).par_iter().try_for_each(|lam| {
        let a = e.pfaffian_1(lam).map_err(|x| x.to_string())?;
        ensure(e.pfaffian_2(lam).map_err(|x| x.to_string())? == a, || format!("o{lam}: pfaffian II differs"))?;
        ensure(e.fermionic(lam).map_err(|x| x.to_string())? == a, || format!("o{lam}: fermionic differs"))
    })?;
    // one row: o_n = 1/2 Σ_k (-β)^k q^{[β]}_{n-k}
    let q = q_bracket_series(d, d, &beta);
    for n in 1..=6usize {
        let mut want = PSeries::zero(d);
        for k in 0..=n {
            want.add_scaled(&q[n - k], &(-b()).pow(k as u32).scale(&rat(1, 2)));
        }
        let lam = StrictPartition::new(vec![n as u32]).map_err(|x| x.to_string())?;
        ensure(e.pfaffian_1(&lam).map_err(|x| x.to_string())? == want, || format!("o_{n} one-row form"))?;
    }
    Ok(())
}

fn duality() -> Check {
    let beta = sym();
    let d = 5;
    let g = GqEngine::new(d, beta.clone());
    let e = DualEngine::new(d, beta.clone());
    let all = StrictPartition::all_up_to(d);
    let gqs: Vec<PSeries> = all.par_iter().map(|l| g.pfaffian_1(l).expect("in range")).collect();
    let os: Vec<PSeries> = all.par_iter().map(|l| e.pfaffian_1(l).expect("in range")).collect();
    let gps: Vec<PSeries> = all.iter().map(|l| e.gp(l).expect("in range")).collect();
    let pairs: Vec<(usize, usize)> = (0..all.len()).flat_map(|i| (0..all.len()).map(move |j| (i, j))).collect();
    pairs.par_iter().try_for_each(|&(i, j)| {
        let v = bilinear_pair(&gqs[i], &gps[j], &beta).map_err(|x| x.to_string())?;
        let want = if i == j { BetaScalar::one() } else { BetaScalar::zero() };
        ensure(v == want, || format!("⟨GQ{}, gp{}⟩ = {v}", all[i], all[j]))?;
        let v = bilinear_pair(&gqs[i], &os[j], &beta).map_err(|x| x.to_string())?;
        let want = inner_product_formula(&all[i], &all[j], &beta);
        ensure(v == want, || format!("⟨GQ{}, o{}⟩ = {v}, closed form {want}", all[i], all[j]))
    })
}

fn fermionic_pairing_table() -> Check {
    let beta = sym();
    let mut words: Vec<Vec<i64>> = vec![vec![0]];
    for lam in StrictPartition::all_up_to(10) {
        if lam.parts().iter().any(|&p| p > 4) {
            continue;
        }
        let w: Vec<i64> = lam.parts().iter().map(|&p| p as i64).collect();
        let mut padded = w.clone();
        padded.push(0);
        words.push(w);
        words.push(padded);
    }
    words.sort();
    words.dedup();
    for mu in &words {
        for lam in &words {
            let f = fock_pairing(mu, lam, &beta);
            let c = pairing_formula(mu, lam, &beta);
            ensure(f == c, || format!("^g⟨{mu:?}|{lam:?}⟩^G = {f}, product {c}"))?;
        }
    }
    ensure(fock_pairing(&[], &[], &beta) == BetaScalar::one(), || "⟨∅|∅⟩".into())?;
    ensure(fock_pairing(&[0], &[0], &beta) == BetaScalar::one(), || "⟨0|0⟩".into())
}

fn cauchy() -> Check {
    let beta = sym();
    let a = cauchy_kernel_direct(5, &beta);
    let e = cauchy_kernel_expansion(5, &beta);
    ensure(a == e, || "direct and expanded kernels differ".into())
}

fn wick() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5717_c0de);
    for _ in 0..200 {
        let len = 2 * rng.gen_range(0..=4);
        let word: Vec<i64> = (0..len).map(|_| rng.gen_range(-4..=4)).collect();
        let w = wick_expectation(&word).map_err(|x| x.to_string())?;
        let v = vacuum_expectation(&word);
        ensure(w == v, || format!("{word:?}: Wick {w}, normal ordering {v}"))?;
    }
    Ok(())
}

fn random_bra(rng: &mut ChaCha8Rng) -> BraState {
    let mut s = BraState::zero();
    for _ in 0..rng.gen_range(1..4) {
        let mask: u8 = rng.gen_range(0..32);
        let word: Vec<i64> = (0..5).filter(|k| mask >> k & 1 == 1).map(|k| -k).collect();
        s.add_term(word, BetaScalar::from_int(rng.gen_range(1..=3)));
    }
    s
}

/// `exp(Σ_n p_n/n Σ_j a(n, j) z^j)` as coefficients in `z`.
fn exp_power_sums(d: usize, a: impl Fn(i64, i64) -> BetaScalar) -> Vec<PSeries> {
    let coeffs: Vec<PSeries> = (0..=d as i64)
        .map(|j| {
            let mut s = PSeries::zero(d);
            for n in 1..=d as i64 {
                if j > 0 {
                    s.add_scaled(&PSeries::p(d, n as u32).scale_rational(&rat(1, n)), &a(n, j));
                }
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
    let mut c = (-b()).pow((n - j) as u32).scale(&(binom_general(n, j as u32) * int(-sign(j))));
    if j == n {
        c = &c + &BetaScalar::one();
    }
    c
}

/// `exp(c Σ p_n (-β)^n / n)`.
fn theta_power(d: usize, c: i64) -> PSeries {
    let mut s = PSeries::zero(d);
    for n in 1..=d as i64 {
        s.add_scaled(&PSeries::p(d, n as u32).scale_rational(&rat(c, n)), &(-b()).pow(n as u32));
    }
    s.exp()
}

fn commutation_lemmas() -> Check {
    let beta = sym();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ff_ee11);
    // e^{-Θ} φ^{(β)}_k e^{Θ} = φ^{(β)}_k + β φ^{(β)}_{k+1}, acting on bras
    for _ in 0..40 {
        let s = random_bra(&mut rng);
        let k = rng.gen_range(-3..=2);
        let lhs = bra_apply_exp_theta(&bra_apply_phi_beta(&bra_apply_exp_theta(&s, 1, &beta), k, &beta), -1, &beta);
        let mut rhs = bra_apply_phi_beta(&s, k, &beta);
        rhs.add_scaled(&bra_apply_phi_beta(&s, k + 1, &beta), &b());
        ensure(lhs == rhs, || format!("e^Θ conjugation at k = {k}"))?;
    }
    // [(φ̂_m)^*, φ^{(β)}_k]_+ = 2 (m = k), β (m = k+1), 0 otherwise
    for _ in 0..40 {
        let s = random_bra(&mut rng);
        let m = rng.gen_range(0..=5);
        let k = rng.gen_range(0..=5);
        let ab = bra_apply_phi_beta(&bra_apply_phi_hat_star(&s, m, &beta), k, &beta);
        let ba = bra_apply_phi_hat_star(&bra_apply_phi_beta(&s, k, &beta), m, &beta);
        let c = if m == k {
            BetaScalar::from_int(2)
        } else if m == k + 1 {
            b()
        } else {
            BetaScalar::zero()
        };
        ensure(ab.add(&ba) == s.scale(&c), || format!("quasi-duality at m = {m}, k = {k}"))?;
    }
    let d = 5;
    let g = GqEngine::new(d, beta.clone());
    let closed = exp_power_sums(d, shifted_power);
    // ⟨0|e^H φ^{(β)}(z) e^{-Θ} φ^{(β)}_0 e^Θ|0⟩ = (1+βz^{-1}) exp(Σ p_n/n (z^n - (-z-β)^n + (-β)^n))
    for n in 0..=4i64 {
        let lhs = g.h_bra().contract(|mu| {
            let mut s = bra_lambda(mu.parts());
            s = bra_apply_phi_beta(&s, n, &beta);
            s = bra_apply_exp_theta(&s, -1, &beta);
            s = bra_apply_phi_beta(&s, 0, &beta);
            bra_apply_exp_theta(&s, 1, &beta).coeff(&[])
        });
        let next = closed.get(n as usize + 1).cloned().unwrap_or_else(|| PSeries::zero(d));
        ensure(lhs == closed[n as usize].add(&next.scale(&b())), || format!("one-row lemma at z^{n}"))?;
    }
    // (1+βz^{-1}) θ(-β) GQ(z) = exp(Σ p_n (z^n - (-z-β)^n)/n) θ(-β)^{-1}... in coefficient form
    let theta = theta_power(d, 1);
    let inv_theta = theta_power(d, -1);
    for n in -3..=d as i64 {
        let lhs = g.gq_n(n).add(&g.gq_n(n + 1).scale(&b())).mul(&theta);
        let rhs = if n >= 0 { closed[n as usize].mul(&inv_theta) } else { PSeries::zero(d) };
        ensure(lhs == rhs, || format!("generating-function remark at z^{n}"))?;
    }
    // ⟨0|e^H e^Θ|λ⟩ = θ(-β)^{-1} ⟨0|e^H|λ⟩
    for lam in StrictPartition::all_up_to(4) {
        let ket = ket_lambda(lam.parts());
        let lhs = g.h_bra().contract(|mu| pair(&bra_apply_exp_theta(&bra_lambda(mu.parts()), 1, &beta), &ket));
        let plain = g.h_bra().contract(|mu| pair(&bra_lambda(mu.parts()), &ket));
        ensure(lhs == inv_theta.mul(&plain), || format!("e^H e^Θ scalar at {lam}"))?;
    }
    Ok(())
}

fn main() {
    if let Some(n) = std::env::var("KQ_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let criteria: [Criterion; 10] = [
        ("four-route GQ agreement (D=8, oracle n=8, n=6 for |λ|<=4)", four_route_gq),
        ("classical limit at β=0", classical_limit),
        ("deformed two-point values and kernel coefficients", two_point_regression),
        ("cancellation properties (GΓ at D=6 n=8, gΓ for |λ|<=6)", cancellation),
        ("dual-route agreement for o (D=7, |λ|<=6)", dual_routes),
        ("duality pairing (|λ|,|μ|<=5)", duality),
        ("fermionic pairing table (parts<=4)", fermionic_pairing_table),
        ("Cauchy kernel identity (joint degree 5)", cauchy),
        ("Wick oracle (200 random words)", wick),
        ("commutation-lemma suite", commutation_lemmas),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let r = run();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(()) => println!("PASS  {name}  [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  [{secs:.1}s]: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
