use std::collections::HashMap;

use num_traits::Zero;

use super::{BetaScalar, Rational};
use crate::error::{KqError, Result};

/// The commutative operations the Pfaffian expansion needs.
pub trait Ring: Clone {
    fn vanishes(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Ring for Rational {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl Ring for BetaScalar {
    fn vanishes(&self) -> bool {
        BetaScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

/// Strict upper triangle `a_{i,j}`, `i < j`, of a skew-symmetric array,
/// zero-based and stored row by row.
#[derive(Clone, Debug)]
pub struct SkewArray<T> {
    size: usize,
    entries: Vec<T>,
}

impl<T: Clone> SkewArray<T> {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(size * size.saturating_sub(1) / 2);
        for i in 0..size {
            for j in i + 1..size {
                entries.push(f(i, j));
            }
        }
        Self { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.size);
        i * (2 * self.size - i - 1) / 2 + (j - i - 1)
    }

    /// Entry `a_{i,j}` for `i < j`.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[self.index(i, j)]
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> SkewArray<U> {
        SkewArray {
            size: self.size,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

/// Pfaffian by expansion along the first remaining row, memoized on the set
/// of remaining indices. `one` is the value of the empty Pfaffian.
pub fn pfaffian<T: Ring>(a: &SkewArray<T>, one: T) -> Result<T> {
    if a.size % 2 == 1 {
        return Err(KqError::OddPfaffianSize(a.size));
    }
    assert!(a.size <= 64, "pfaffian size {} too large", a.size);
    let full = if a.size == 64 { u64::MAX } else { (1u64 << a.size) - 1 };
    let mut memo = HashMap::new();
    Ok(expand(a, full, &one, &mut memo).unwrap_or_else(|| one.sub(&one)))
}

// None stands for zero, so the ring never needs a separate zero constructor.
fn expand<T: Ring>(a: &SkewArray<T>, mask: u64, one: &T, memo: &mut HashMap<u64, Option<T>>) -> Option<T> {
    if mask == 0 {
        return Some(one.clone());
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let i = mask.trailing_zeros() as usize;
    let rest = mask & !(1u64 << i);
    let mut acc: Option<T> = None;
    let mut pos = 0;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let negative = pos % 2 == 1;
        pos += 1;
        let aij = a.get(i, j);
        if aij.vanishes() {
            continue;
        }
        let Some(minor) = expand(a, rest & !(1u64 << j), one, memo) else {
            continue;
        };
        let term = aij.mul(&minor);
        acc = Some(match (acc, negative) {
            (None, false) => term,
            (None, true) => term.sub(&term).sub(&term),
            (Some(s), false) => s.add(&term),
            (Some(s), true) => s.sub(&term),
        });
    }
    let acc = acc.filter(|v| !v.vanishes());
    memo.insert(mask, acc.clone());
    acc
}
