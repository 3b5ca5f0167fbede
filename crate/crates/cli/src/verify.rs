//! The identity suites behind `kq verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use kq_core::dualq::{
    bilinear_pair, cauchy_kernel_direct, cauchy_kernel_expansion, check_dual_cancellation, fock_pairing,
    inner_product_formula, pairing_formula, q_bracket_series, DualEngine,
};
use kq_core::fock::{
    bra_apply_exp_theta, bra_apply_phi_beta, bra_apply_phi_hat_star, bra_lambda, ket_lambda, pair, vacuum_expectation,
    wick_expectation, BraState,
};
use kq_core::gq::{check_kq_cancellation, classical_q, gq_oracle, GqEngine};
use kq_core::laurent::two_point_kernel;
use kq_core::scalar::{binom_general, int, rat, sign};
use kq_core::symfun::{eval_finite, exp_z_series, PSeries, StrictPartition};
use kq_core::{Beta, BetaScalar};

use crate::compute::diff;
use crate::Suite;

pub struct Scale {
    pub degree: usize,
    pub max_weight: usize,
    pub vars: usize,
    pub beta: Beta,
    pub corrupt_f_table: bool,
}

pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: Option<String>,
}

type Outcome = Result<(), String>;
type Job<'a> = (String, Box<dyn Fn() -> Outcome + Send + Sync + 'a>);

fn job<'a>(name: impl Into<String>, f: impl Fn() -> Outcome + Send + Sync + 'a) -> Job<'a> {
    (name.into(), Box::new(f))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same(a: &PSeries, b: &PSeries, what: impl FnOnce() -> String) -> Outcome {
    ensure(a == b, || format!("{}: {}", what(), diff(a, b)))
}

/// Runs `f` on every partition and reports the first few failures.
fn each(lams: &[StrictPartition], f: impl Fn(&StrictPartition) -> Outcome + Sync) -> Outcome {
    let bad: Vec<String> = lams.par_iter().filter_map(|l| f(l).err()).collect();
    match bad.len() {
        0 => Ok(()),
        n if n > 3 => Err(format!("{} (and {} more)", bad[..3].join("; "), n - 3)),
        _ => Err(bad.join("; ")),
    }
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

pub fn run(suite: Suite, s: &Scale) -> Vec<Check> {
    let gq = GqEngine::new(s.degree, s.beta.clone());
    let gq = if s.corrupt_f_table { gq.with_corrupt_f_table() } else { gq };
    let dual = DualEngine::new(s.degree, s.beta.clone());
    let lams = StrictPartition::all_up_to(s.max_weight);
    let mut jobs = Vec::new();
    if matches!(suite, Suite::Fock | Suite::All) {
        fock_jobs(s, &mut jobs);
    }
    if matches!(suite, Suite::Gq | Suite::All) {
        gq_jobs(s, &gq, &lams, &mut jobs);
    }
    if matches!(suite, Suite::Dual | Suite::All) {
        dual_jobs(s, &dual, &lams, &mut jobs);
    }
    jobs.into_par_iter()
        .map(|(name, f)| {
            let r = f();
            Check { name, ok: r.is_ok(), detail: r.err() }
        })
        .collect()
}

fn random_bra(rng: &mut ChaCha8Rng) -> BraState {
    let mut st = BraState::zero();
    for _ in 0..rng.gen_range(1..4) {
        let mask: u8 = rng.gen_range(0..32);
        let word: Vec<i64> = (0..5).filter(|k| mask >> k & 1 == 1).map(|k| -k).collect();
        st.add_term(word, BetaScalar::from_int(rng.gen_range(1..=3)));
    }
    st
}

fn fock_jobs<'a>(s: &'a Scale, jobs: &mut Vec<Job<'a>>) {
    let beta = &s.beta;
    let b = beta.scalar();
    let two = move |m: i64, k: i64| {
        let v = BraState::vacuum();
        bra_apply_phi_beta(&bra_apply_phi_beta(&v, m, beta), k, beta).coeff(&[])
    };
    let point = move |m: i64, k: i64, want: BetaScalar| {
        let got = two(m, k);
        ensure(got == want, || format!("got {got}"))
    };
    jobs.push(job("⟨0|φ^β_0 φ^β_0|0⟩ = 1", move || point(0, 0, BetaScalar::one())));
    let nb = -b.clone();
    jobs.push(job("⟨0|φ^β_-1 φ^β_0|0⟩ = -β", move || point(-1, 0, nb.clone())));
    jobs.push(job("⟨0|φ^β_-1 φ^β_1|0⟩ = -2", move || point(-1, 1, BetaScalar::from_int(-2))));
    let bb = b.clone();
    jobs.push(job("two-point kernel coefficients 1, -(2w+β), 2w²+3βw+β²", move || {
        let k = two_point_kernel(beta, -3, 0).map_err(err)?;
        let want = [
            vec![BetaScalar::one()],
            vec![-bb.clone(), BetaScalar::from_int(-2)],
            vec![bb.pow(2), bb.scale(&int(3)), BetaScalar::from_int(2)],
        ];
        for (zk, row) in want.iter().enumerate() {
            for j in 0..=row.len() {
                let got = k.coefficient(&[-(zk as i64), j as i64]).map_err(err)?.constant_term();
                let w = row.get(j).cloned().unwrap_or_else(BetaScalar::zero);
                ensure(got == w, || format!("z^-{zk} w^{j}: {got} vs {w}"))?;
            }
        }
        Ok(())
    }));
    jobs.push(job("Wick expansion matches normal ordering (200 random words)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5717_c0de);
        for _ in 0..200 {
            let len = 2 * rng.gen_range(0..=4);
            let word: Vec<i64> = (0..len).map(|_| rng.gen_range(-4..=4)).collect();
            let w = wick_expectation(&word).map_err(err)?;
            let v = vacuum_expectation(&word);
            ensure(w == v, || format!("{word:?}: {w} vs {v}"))?;
        }
        Ok(())
    }));
    let bq = b.clone();
    jobs.push(job("[(φ̂_m)^*, φ^β_k]_+ = 2δ_{m,k} + βδ_{m,k+1}", move || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xc0ff_ee11);
        for _ in 0..40 {
            let st = random_bra(&mut rng);
            let (m, k) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
            let ab = bra_apply_phi_beta(&bra_apply_phi_hat_star(&st, m, beta), k, beta);
            let ba = bra_apply_phi_hat_star(&bra_apply_phi_beta(&st, k, beta), m, beta);
            let c = match m - k {
                0 => BetaScalar::from_int(2),
                1 => bq.clone(),
                _ => BetaScalar::zero(),
            };
            ensure(ab.add(&ba) == st.scale(&c), || format!("m = {m}, k = {k}"))?;
        }
        Ok(())
    }));
    jobs.push(job("e^{-Θ} φ^β_k e^{Θ} = φ^β_k + β φ^β_{k+1}", move || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x7e7a);
        for _ in 0..40 {
            let st = random_bra(&mut rng);
            let k = rng.gen_range(-3..=2);
            let lhs = bra_apply_exp_theta(&bra_apply_phi_beta(&bra_apply_exp_theta(&st, 1, beta), k, beta), -1, beta);
            let mut rhs = bra_apply_phi_beta(&st, k, beta);
            rhs.add_scaled(&bra_apply_phi_beta(&st, k + 1, beta), &b);
            ensure(lhs == rhs, || format!("k = {k}"))?;
        }
        Ok(())
    }));
}

/// `exp(c Σ p_n (-β)^n / n)`.
fn theta_power(d: usize, c: i64, b: &BetaScalar) -> PSeries {
    let mut acc = PSeries::zero(d);
    for n in 1..=d as i64 {
        acc.add_scaled(&PSeries::p(d, n as u32).scale_rational(&rat(c, n)), &(-b.clone()).pow(n as u32));
    }
    acc.exp()
}

/// Coefficients in `z` of `exp(Σ_n p_n (z^n - (-z-β)^n + (-β)^n) / n)`.
fn shifted_exp(d: usize, b: &BetaScalar) -> Vec<PSeries> {
    let a = |n: i64, j: i64| {
        if j > n {
            return BetaScalar::zero();
        }
        let mut c = (-b.clone()).pow((n - j) as u32).scale(&(binom_general(n, j as u32) * int(-sign(j))));
        if j == n {
            c = &c + &BetaScalar::one();
        }
        c
    };
    let coeffs: Vec<PSeries> = (0..=d as i64)
        .map(|j| {
            let mut acc = PSeries::zero(d);
            for n in 1..=d as i64 {
                if j > 0 {
                    acc.add_scaled(&PSeries::p(d, n as u32).scale_rational(&rat(1, n)), &a(n, j));
                }
            }
            acc
        })
        .collect();
    exp_z_series(&coeffs, d)
}

fn gq_jobs<'a>(s: &'a Scale, gq: &'a GqEngine, lams: &'a [StrictPartition], jobs: &mut Vec<Job<'a>>) {
    let (d, beta) = (s.degree, &s.beta);
    jobs.push(job(format!("GQ_λ: Pfaffian I = Pfaffian II, |λ| <= {}", s.max_weight), move || {
        each(lams, |l| same(&gq.pfaffian_1(l).map_err(err)?, &gq.pfaffian_2(l).map_err(err)?, || format!("{l}")))
    }));
    jobs.push(job("GQ_λ: Pfaffian I = ⟨0|e^H G^β_λ|0⟩", move || {
        each(lams, |l| same(&gq.pfaffian_1(l).map_err(err)?, &gq.fermionic(l).map_err(err)?, || format!("{l}")))
    }));
    let n = s.vars;
    jobs.push(job(format!("GQ_λ: Pfaffian I = symmetrization in {n} variables"), move || {
        each(lams, |l| {
            let f = eval_finite(&gq.pfaffian_1(l).map_err(err)?, n);
            let g = gq_oracle(l, n, d, beta).map_err(err)?;
            ensure(f == g, || format!("{l}"))
        })
    }));
    jobs.push(job("β = 0: GQ_λ and ⟨0|e^H|λ⟩ reduce to Schur Q_λ", move || {
        let zero = GqEngine::new(d, Beta::value(int(0)));
        each(lams, |l| {
            let q = classical_q(l, d).map_err(err)?;
            same(&zero.pfaffian_1(l).map_err(err)?, &q, || format!("{l} Pfaffian"))?;
            same(&zero.fermionic(l).map_err(err)?, &q, || format!("{l} fermionic"))
        })
    }));
    jobs.push(job(format!("GQ_λ(t, -t/(1+βt), x_3, ...) is free of t ({} variables)", d + 2), move || {
        each(lams, |l| {
            let f = gq.pfaffian_1(l).map_err(err)?;
            ensure(check_kq_cancellation(&f, d, d + 2, beta).map_err(err)?, || format!("{l}"))
        })
    }));
    jobs.push(job("(1+β/z) GQ(z) θ = exp(Σ p_n (z^n - (-z-β)^n)/n) / θ coefficientwise", move || {
        let b = beta.scalar();
        let closed = shifted_exp(d, &b);
        let (th, inv) = (theta_power(d, 1, &b), theta_power(d, -1, &b));
        for k in -3..=d as i64 {
            let lhs = gq.gq_n(k).add(&gq.gq_n(k + 1).scale(&b)).mul(&th);
            let rhs = usize::try_from(k).map(|k| closed[k].mul(&inv)).unwrap_or_else(|_| PSeries::zero(d));
            same(&lhs, &rhs, || format!("z^{k}"))?;
        }
        Ok(())
    }));
    jobs.push(job("⟨0|e^H e^Θ|λ⟩ = θ^{-1} ⟨0|e^H|λ⟩", move || {
        let inv = theta_power(d, -1, &beta.scalar());
        let small: Vec<StrictPartition> = lams.iter().filter(|l| l.weight() <= 4).cloned().collect();
        each(&small, |l| {
            let ket = ket_lambda(l.parts());
            let h = gq.h_bra();
            let lhs = h.contract(|mu| pair(&bra_apply_exp_theta(&bra_lambda(mu.parts()), 1, beta), &ket));
            let plain = h.contract(|mu| pair(&bra_lambda(mu.parts()), &ket));
            same(&lhs, &inv.mul(&plain), || format!("{l}"))
        })
    }));
}

fn dual_jobs<'a>(s: &'a Scale, dual: &'a DualEngine, lams: &'a [StrictPartition], jobs: &mut Vec<Job<'a>>) {
    let (d, beta) = (s.degree, &s.beta);
    jobs.push(job(format!("o_λ: Pfaffian I = Pfaffian II, |λ| <= {}", s.max_weight), move || {
        each(lams, |l| same(&dual.pfaffian_1(l).map_err(err)?, &dual.pfaffian_2(l).map_err(err)?, || format!("{l}")))
    }));
    jobs.push(job("o_λ: Pfaffian I = 2^{-r} ⟨0|e^H g^β_λ|0⟩", move || {
        each(lams, |l| same(&dual.pfaffian_1(l).map_err(err)?, &dual.fermionic(l).map_err(err)?, || format!("{l}")))
    }));
    jobs.push(job("o_n = ½ Σ_k (-β)^k q^[β]_{n-k}", move || {
        let q = q_bracket_series(d, d, beta);
        let nb = -beta.scalar();
        for n in 1..=s.max_weight {
            let mut want = PSeries::zero(d);
            for k in 0..=n {
                want.add_scaled(&q[n - k], &nb.pow(k as u32).scale(&rat(1, 2)));
            }
            let l = StrictPartition::new(vec![n as u32]).map_err(err)?;
            same(&dual.pfaffian_1(&l).map_err(err)?, &want, || format!("n = {n}"))?;
        }
        Ok(())
    }));
    jobs.push(job(format!("o_λ and gp_λ at (t, -t-β, x_3, ...) are free of t ({} variables)", d + 2), move || {
        each(lams, |l| {
            let o = dual.pfaffian_1(l).map_err(err)?;
            ensure(check_dual_cancellation(&o, d + 2, beta).map_err(err)?, || format!("o{l}"))?;
            let g = dual.gp(l).map_err(err)?;
            ensure(check_dual_cancellation(&g, d + 2, beta).map_err(err)?, || format!("gp{l}"))
        })
    }));
    jobs.push(job("⟨GQ_λ, gp_μ⟩ = δ_λμ and ⟨GQ_λ, o_μ⟩ = (-β)^{|μ/λ|} 2^{-row(μ/λ)}", move || {
        let gq = GqEngine::new(d, beta.clone());
        let f: Vec<PSeries> = lams.par_iter().map(|l| gq.pfaffian_1(l)).collect::<Result<_, _>>().map_err(err)?;
        let o: Vec<PSeries> = lams.par_iter().map(|l| dual.pfaffian_1(l)).collect::<Result<_, _>>().map_err(err)?;
        let g: Vec<PSeries> = lams.iter().map(|l| dual.gp(l)).collect::<Result<_, _>>().map_err(err)?;
        each(lams, |l| {
            let i = lams.iter().position(|x| x == l).expect("listed");
            for (j, m) in lams.iter().enumerate() {
                let v = bilinear_pair(&f[i], &g[j], beta).map_err(err)?;
                let want = if i == j { BetaScalar::one() } else { BetaScalar::zero() };
                ensure(v == want, || format!("⟨GQ{l}, gp{m}⟩ = {v}"))?;
                let v = bilinear_pair(&f[i], &o[j], beta).map_err(err)?;
                let want = inner_product_formula(l, m, beta);
                ensure(v == want, || format!("⟨GQ{l}, o{m}⟩ = {v}, expected {want}"))?;
            }
            Ok(())
        })
    }));
    jobs.push(job("^g⟨μ|λ⟩^G = Π I(μ_i, λ_i) over strict words with parts <= 4", move || {
        let mut words: Vec<Vec<i64>> = vec![vec![0]];
        for l in StrictPartition::all_up_to(10) {
            if l.parts().iter().any(|&p| p > 4) {
                continue;
            }
            let w: Vec<i64> = l.parts().iter().map(|&p| p as i64).collect();
            let mut padded = w.clone();
            padded.push(0);
            words.push(w);
            words.push(padded);
        }
        words.sort();
        words.dedup();
        for m in &words {
            for l in &words {
                let (f, c) = (fock_pairing(m, l, beta), pairing_formula(m, l, beta));
                ensure(f == c, || format!("{m:?} vs {l:?}: {f} vs {c}"))?;
            }
        }
        Ok(())
    }));
    let cd = d.min(5);
    jobs.push(job(format!("Cauchy kernel identity through joint degree {cd}"), move || {
        ensure(cauchy_kernel_direct(cd, beta) == cauchy_kernel_expansion(cd, beta), || "kernels differ".into())
    }));
}
