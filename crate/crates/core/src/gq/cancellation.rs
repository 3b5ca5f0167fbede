use std::collections::BTreeMap;

use crate::error::{KqError, Result};
use crate::scalar::{binom_general, sign, Beta, BetaScalar};
use crate::symfun::{Partition, PSeries};

/// Polynomial in `t` whose coefficients are series in the remaining
/// variables, truncated at total degree `D`.
type TSeries = Vec<PSeries>;

fn trunc(s: &PSeries, t_deg: usize, degree: usize) -> PSeries {
    s.coerce(degree - t_deg).with_degree(degree)
}

fn t_mul(a: &TSeries, b: &TSeries, degree: usize) -> TSeries {
    let mut out = vec![PSeries::zero(degree); degree + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(degree + 1 - i) {
            if y.is_zero() {
                continue;
            }
            out[i + j].add_assign(&trunc(&x.mul(y), i + j, degree));
        }
    }
    out
}

/// Whether `f(t, -t/(1+βt), x_3, …)` is free of `t` through total degree
/// `D`. Beyond two variables the power sums `p_k(x_3, …)` are independent
/// once `n - 2 >= D`, so they are kept as symbols. Terms of `f` above
/// degree `D` only feed terms above `D`, so the truncation is exact.
pub fn check_kq_cancellation(f: &PSeries, degree: usize, vars: usize, beta: &Beta) -> Result<bool> {
    if vars < degree + 2 {
        return Err(KqError::UnderDetermined { vars, degree: degree + 2 });
    }
    let d = degree as i64;
    let f = f.coerce(degree);
    // p_k ↦ p_k(x_3..) + t^k + t̄^k
    let images: Vec<TSeries> = (0..=d)
        .map(|k| {
            let mut img = vec![PSeries::zero(degree); degree + 1];
            if k == 0 {
                return img;
            }
            img[0] = PSeries::p(degree, k as u32);
            for j in 0..=(d - k) {
                let mut c = beta.pow(j as u32).scale(&(binom_general(-k, j as u32) * crate::scalar::int(sign(k))));
                if j == 0 {
                    c = &c + &BetaScalar::one();
                }
                img[(k + j) as usize] = PSeries::constant(degree, c);
            }
            img
        })
        .collect();
    let mut cache: BTreeMap<Partition, TSeries> = BTreeMap::new();
    let mut total = vec![PSeries::zero(degree); degree + 1];
    for (lam, c) in f.terms() {
        let v = monomial(lam, &images, degree, &mut cache);
        for (t, x) in total.iter_mut().zip(&v) {
            t.add_scaled(x, c);
        }
    }
    Ok(total[1..].iter().all(PSeries::is_zero))
}

fn monomial(lam: &Partition, images: &[TSeries], degree: usize, cache: &mut BTreeMap<Partition, TSeries>) -> TSeries {
    if lam.is_empty() {
        let mut one = vec![PSeries::zero(degree); degree + 1];
        one[0] = PSeries::one(degree);
        return one;
    }
    if let Some(v) = cache.get(lam) {
        return v.clone();
    }
    let parts = lam.parts();
    let rest = Partition::new(parts[1..].to_vec()).expect("suffix of a partition");
    let tail = monomial(&rest, images, degree, cache);
    let v = t_mul(&images[parts[0] as usize], &tail, degree);
    cache.insert(lam.clone(), v.clone());
    v
}
