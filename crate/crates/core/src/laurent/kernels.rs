use std::collections::BTreeMap;
use std::fmt::Write;

use super::{Expansion, LaurentBlock, Window};
use crate::error::{KqError, Result};
use crate::scalar::{binom_general, int, sign, Beta, BetaScalar, Rational};
use crate::symfun::PSeries;

/// `(z-w)/(z+w+β)` on `|β| << |w| << |z|`, both variables expanded
/// downward. The `z^{-k}` coefficient is `(-1)^k (w+β)^{k-1} (2w+β)` for
/// `k >= 1`, a polynomial in `w`; `z_min` is the lowest `z`-exponent kept.
pub fn two_point_kernel(beta: &Beta, z_min: i64, degree: usize) -> Result<LaurentBlock> {
    if z_min > 0 {
        return Err(KqError::KernelWindow(z_min));
    }
    let order = -z_min;
    let dirs = vec![Expansion::Descending, Expansion::Descending];
    let mut b = LaurentBlock::new(dirs, vec![Window::new(0, order), Window::exact(-order)], degree);
    for k in 0..=order {
        for j in 0..=k {
            let c = kernel_coeff(k, j, beta);
            b.add(vec![-k, j], &PSeries::constant(degree, c));
        }
    }
    Ok(b)
}

/// Coefficient of `z^{-k} w^j` in the expansion above (and, with the roles
/// of the variables exchanged, of `w^k z^{-j}` in the dual kernel).
fn kernel_coeff(k: i64, j: i64, beta: &Beta) -> BetaScalar {
    if k == 0 {
        return if j == 0 { BetaScalar::one() } else { BetaScalar::zero() };
    }
    let c = binom_general(k - 1, (j - 1).max(0) as u32) * int(if j >= 1 { 2 } else { 0 })
        + binom_general(k - 1, j as u32);
    beta.pow((k - j) as u32).scale(&(c * int(sign(k))))
}

/// `(z-w)/(z+w+βzw)` in ascending powers of `w`; the `w^k` coefficient is
/// `(-1)^k z^{-k} (1+βz)^{k-1} (2+βz)`, a Laurent polynomial in `z`.
pub fn dual_two_point_kernel(beta: &Beta, w_max: i64, degree: usize) -> Result<LaurentBlock> {
    if w_max < 0 {
        return Err(KqError::KernelWindow(w_max));
    }
    let dirs = vec![Expansion::Ascending, Expansion::Ascending];
    let mut b = LaurentBlock::new(dirs, vec![Window::exact(-w_max), Window::new(0, w_max)], degree);
    for k in 0..=w_max {
        for j in 0..=k {
            // z-exponent is j - k; the coefficient matches the direct kernel
            // with z^{-1}·β and w·β exchanged, i.e. β^{j} instead of β^{k-j}
            let c = kernel_coeff(k, k - j, beta);
            b.add(vec![j - k, k], &PSeries::constant(degree, c));
        }
    }
    Ok(b)
}

/// Coefficient table `(p, q) -> value`; absent keys are zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct KernelCoeffTable {
    entries: BTreeMap<(i64, i64), BetaScalar>,
}

impl KernelCoeffTable {
    pub fn get(&self, p: i64, q: i64) -> BetaScalar {
        self.entries.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> &BTreeMap<(i64, i64), BetaScalar> {
        &self.entries
    }

    pub fn insert(&mut self, p: i64, q: i64, c: BetaScalar) {
        if c.is_zero() {
            self.entries.remove(&(p, q));
        } else {
            self.entries.insert((p, q), c);
        }
    }

    /// CSV lines `i,j,p,q,coeff` for inspection.
    pub fn to_csv(&self, i: usize, j: usize) -> String {
        let mut s = String::new();
        for ((p, q), c) in &self.entries {
            let _ = writeln!(s, "{i},{j},{p},{q},\"{c}\"");
        }
        s
    }
}

/// `[t_j^q] (1+βt_j)^{-b} K_{p}(t_j)` where `K_p` is the `t_i^p`
/// coefficient of `(t_j-t_i)/(t_i+t_j+βt_it_j)`:
/// `K_0 = 1`, `K_p = (-1)^p t_j^{-p} ((1+βt_j)^p + (1+βt_j)^{p-1})`.
/// The result is a rational multiple of `β^{p+q}`.
fn kernel_row(p: i64, q: i64, b: i64) -> Rational {
    if p == 0 {
        return if q >= 0 { binom_general(-b, q as u32) } else { int(0) };
    }
    let n = q + p;
    if n < 0 {
        return int(0);
    }
    (binom_general(p - b, n as u32) + binom_general(p - 1 - b, n as u32)) * int(sign(p))
}

/// `f^{i,j}_{p,q}`: coefficient of `t_i^p t_j^q` in
/// `(1+βt_i)^{-(r'-i)} (1+βt_j)^{-(r'-j)} (t_j-t_i)/(t_i+t_j+βt_it_j)`
/// with `t_i` small against `t_j`. Indices are one-based, `i < j <= r`.
/// The window is `0 <= p <= p_max`, `-p <= q <= s_max - p`.
pub fn f_table(i: usize, j: usize, r: usize, p_max: i64, s_max: i64, beta: &Beta) -> KernelCoeffTable {
    assert!(1 <= i && i < j && j <= r, "f-table needs 1 <= i < j <= r");
    let rp = (r + r % 2) as i64;
    let a = rp - i as i64;
    let b = rp - j as i64;
    let mut t = KernelCoeffTable::default();
    for p in 0..=p_max {
        for q in -p..=(s_max - p) {
            let mut acc = int(0);
            for p1 in 0..=p {
                acc += binom_general(-a, p1 as u32) * kernel_row(p - p1, q, b);
            }
            t.insert(p, q, beta.pow((p + q) as u32).scale(&acc));
        }
    }
    t
}

/// `f^{i,r+1}_p`: coefficients of `(1+βt_i)^{-(r'-i-1)}` for odd `r`,
/// stored at `(p, 0)`.
pub fn f_column(i: usize, r: usize, p_max: i64, beta: &Beta) -> KernelCoeffTable {
    let rp = (r + r % 2) as i64;
    let mut t = KernelCoeffTable::default();
    for p in 0..=p_max {
        t.insert(p, 0, beta.pow(p as u32).scale(&binom_general(-(rp - i as i64 - 1), p as u32)));
    }
    t
}

/// `g^{i,j}_{p,q}`: coefficient of `z^p w^q` in
/// `(1+βz)^{-i} (1+βw)^{-j} (z-w)/(z+w+βzw)` with `w` small against `z`.
/// Window `0 <= q <= q_max`, `-q <= p <= p_max`.
pub fn g_table(i: usize, j: usize, p_max: i64, q_max: i64, beta: &Beta) -> KernelCoeffTable {
    let (i, j) = (i as i64, j as i64);
    let mut t = KernelCoeffTable::default();
    for q in 0..=q_max {
        for p in -q..=p_max {
            // split q = q1 + q2, q1 from (1+βw)^{-j}, q2 from the kernel;
            // the kernel row for w^{q2} mirrors the GQ-side row with
            // (1+βz)^{-i} absorbed
            let mut acc = int(0);
            for q1 in 0..=q {
                acc += binom_general(-j, q1 as u32) * kernel_row(q - q1, p, i);
            }
            t.insert(p, q, beta.pow((p + q) as u32).scale(&acc));
        }
    }
    t
}

/// `g^{i,r+1}_p = C(-i, p) β^p`, stored at `(p, 0)`.
pub fn g_column(i: usize, p_max: i64, beta: &Beta) -> KernelCoeffTable {
    let mut t = KernelCoeffTable::default();
    for p in 0..=p_max {
        t.insert(p, 0, beta.pow(p as u32).scale(&binom_general(-(i as i64), p as u32)));
    }
    t
}
