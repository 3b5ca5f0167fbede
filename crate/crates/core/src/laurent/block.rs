use std::collections::BTreeMap;

use crate::error::{KqError, Result};
use crate::symfun::PSeries;

/// How a variable is expanded. `Descending` means a series in `z^{-1}` with
/// finitely many positive powers; `Ascending` means a series in `z` with
/// finitely many negative powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expansion {
    Descending,
    Ascending,
}

impl Expansion {
    /// Exponent of `z` -> exponent of the expansion variable `u`
    /// (`u = z^{-1}` or `u = z`).
    pub fn to_u(self, e: i64) -> i64 {
        match self {
            Expansion::Descending => -e,
            Expansion::Ascending => e,
        }
    }
}

/// Known range of a variable, measured in its expansion variable `u`.
/// No stored term has `u < lo`; every term with `u <= hi` is stored.
/// `hi == None` means the block is exact in this variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: Option<i64>,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi: Some(hi) }
    }

    pub fn exact(lo: i64) -> Self {
        Self { lo, hi: None }
    }

    pub fn contains(&self, u: i64) -> bool {
        u >= self.lo && self.hi.is_none_or(|h| u <= h)
    }

    /// Window of a product. A coefficient at `u` of `A·B` sums `A(a) B(u-a)`
    /// over `a` in `[lo_A, u - lo_B]`; all of those are stored in `A` only
    /// while `u - lo_B <= hi_A`, and symmetrically for `B`.
    pub fn product(&self, other: &Window) -> Window {
        let hi = match (self.hi, other.hi) {
            (None, None) => None,
            (Some(h), None) => Some(h + other.lo),
            (None, Some(h)) => Some(self.lo + h),
            (Some(a), Some(b)) => Some((a + other.lo).min(self.lo + b)),
        };
        Window {
            lo: self.lo + other.lo,
            hi,
        }
    }

    pub fn intersect(&self, other: &Window) -> Window {
        let hi = match (self.hi, other.hi) {
            (None, h) | (h, None) => h,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        Window {
            lo: self.lo.max(other.lo),
            hi,
        }
    }
}

/// Truncated iterated Laurent series in ordered variables with power-sum
/// coefficients. The variable order encodes the expansion region and is
/// fixed at construction.
///
/// For a multivariate block the lower bound of a later variable may only
/// hold for the stored range of an earlier one (the kernels have
/// `z_2`-degree growing with the `z_1^{-1}`-order). Products stay exact
/// because a coefficient inside the product window only draws on stored
/// terms.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentBlock {
    dirs: Vec<Expansion>,
    windows: Vec<Window>,
    degree: usize,
    terms: BTreeMap<Vec<i64>, PSeries>,
}

impl LaurentBlock {
    pub fn new(dirs: Vec<Expansion>, windows: Vec<Window>, degree: usize) -> Self {
        assert_eq!(dirs.len(), windows.len());
        Self {
            dirs,
            windows,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// One-variable block from `exponent -> coefficient`.
    pub fn univariate(dir: Expansion, window: Window, degree: usize, coeffs: impl IntoIterator<Item = (i64, PSeries)>) -> Self {
        let mut b = Self::new(vec![dir], vec![window], degree);
        for (e, c) in coeffs {
            if window.contains(dir.to_u(e)) {
                b.add(vec![e], &c);
            }
        }
        b
    }

    /// Places a one-variable block at position `var` of an `m`-variable
    /// layout; the other variables carry exponent zero exactly.
    pub fn embed(&self, var: usize, dirs: &[Expansion]) -> Self {
        assert_eq!(self.dirs.len(), 1);
        assert_eq!(self.dirs[0], dirs[var]);
        let windows = (0..dirs.len())
            .map(|i| if i == var { self.windows[0] } else { Window::exact(0) })
            .collect();
        let mut b = Self::new(dirs.to_vec(), windows, self.degree);
        for (e, c) in &self.terms {
            let mut key = vec![0; dirs.len()];
            key[var] = e[0];
            b.terms.insert(key, c.clone());
        }
        b
    }

    pub fn num_vars(&self) -> usize {
        self.dirs.len()
    }

    pub fn dirs(&self) -> &[Expansion] {
        &self.dirs
    }

    pub fn windows(&self) -> &[Window] {
        &self.windows
    }

    pub fn degree_bound(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, PSeries> {
        &self.terms
    }

    fn in_window(&self, exps: &[i64]) -> bool {
        exps.iter()
            .zip(&self.dirs)
            .zip(&self.windows)
            .all(|((&e, d), w)| w.contains(d.to_u(e)))
    }

    /// Adds `c` at `exps`; silently drops terms outside the window.
    pub fn add(&mut self, exps: Vec<i64>, c: &PSeries) {
        if c.is_zero() || !self.in_window(&exps) {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                v.add_assign(c);
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c.clone());
            }
        }
    }

    /// Shrinks the windows; terms outside are discarded.
    pub fn restrict(&self, windows: &[Window]) -> Self {
        let windows: Vec<Window> = self.windows.iter().zip(windows).map(|(a, b)| a.intersect(b)).collect();
        let mut b = Self::new(self.dirs.clone(), windows, self.degree);
        for (e, c) in &self.terms {
            if b.in_window(e) {
                b.terms.insert(e.clone(), c.clone());
            }
        }
        b
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dirs != other.dirs {
            return Err(KqError::BlockMismatch);
        }
        if self.degree != other.degree {
            return Err(KqError::DegreeMismatch(self.degree, other.degree));
        }
        let windows = self.windows.iter().zip(&other.windows).map(|(a, b)| a.product(b)).collect();
        let mut out = Self::new(self.dirs.clone(), windows, self.degree);
        for (ea, ca) in &self.terms {
            let la = ca.lowest_degree().unwrap_or(0);
            for (eb, cb) in &other.terms {
                if la + cb.lowest_degree().unwrap_or(0) > self.degree {
                    continue;
                }
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if !out.in_window(&e) {
                    continue;
                }
                let c = ca.mul(cb);
                out.add(e, &c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &crate::scalar::BetaScalar) -> Self {
        let mut b = self.clone();
        b.terms = self
            .terms
            .iter()
            .map(|(e, v)| (e.clone(), v.scale(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        b
    }

    /// Exact coefficient at `exps`. Exponents beyond the window's known
    /// range are an error; below the lower bound the coefficient is zero.
    pub fn coefficient(&self, exps: &[i64]) -> Result<PSeries> {
        if exps.len() != self.dirs.len() {
            return Err(KqError::BlockMismatch);
        }
        for (var, ((&e, d), w)) in exps.iter().zip(&self.dirs).zip(&self.windows).enumerate() {
            let u = d.to_u(e);
            if let Some(hi) = w.hi {
                if u > hi {
                    let (lo, hi) = match d {
                        Expansion::Descending => (-hi, -w.lo),
                        Expansion::Ascending => (w.lo, hi),
                    };
                    return Err(KqError::OutsideWindow { var, exponent: e, lo, hi });
                }
            }
        }
        Ok(self.terms.get(exps).cloned().unwrap_or_else(|| PSeries::zero(self.degree)))
    }
}
