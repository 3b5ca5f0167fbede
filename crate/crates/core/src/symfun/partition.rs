use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{KqError, Result};
use crate::scalar::{factorial, Rational};

/// Weakly decreasing positive parts. Ordered graded-lexicographically: by
/// weight, then by the part lists compared lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    weight: u32,
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(KqError::NotPartition(parts));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    fn from_sorted(parts: Vec<u32>) -> Self {
        Self {
            weight: parts.iter().sum(),
            parts,
        }
    }

    pub fn single(n: u32) -> Self {
        Self::from_sorted(vec![n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.weight as usize
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Every part odd.
    pub fn is_odd(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 1)
    }

    /// Part -> multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Multiset union, i.e. the index of `p_self * p_other`.
    pub fn union(&self, other: &Self) -> Self {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() || j < other.parts.len() {
            if j == other.parts.len() || (i < self.parts.len() && self.parts[i] >= other.parts[j]) {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        Self {
            weight: self.weight + other.weight,
            parts,
        }
    }

    /// All partitions of `n`, in increasing lexicographic order.
    pub fn all_of_weight(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        gen_partitions(n as u32, n as u32, &mut cur, &mut out, false);
        out.reverse();
        out.into_iter().map(Self::from_sorted).collect()
    }

    /// All partitions of weight at most `d`, in graded-lex order.
    pub fn all_up_to(d: usize) -> Vec<Self> {
        (0..=d).flat_map(Self::all_of_weight).collect()
    }
}

fn gen_partitions(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, strict: bool) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    for p in (1..=max.min(n)).rev() {
        cur.push(p);
        let next_max = if strict { p - 1 } else { p };
        gen_partitions(n - p, next_max, cur, out, strict);
        cur.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Partition::new(Vec::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Strictly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StrictPartition(Partition);

impl StrictPartition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(KqError::NotStrict(parts));
        }
        Ok(Self(Partition::from_sorted(parts)))
    }

    /// Parses space- or comma-separated parts.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| KqError::Parse(format!("bad part {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        self.0.parts()
    }

    pub fn weight(&self) -> usize {
        self.0.weight()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_partition(&self) -> &Partition {
        &self.0
    }

    /// The length rounded up to an even number.
    pub fn even_length(&self) -> usize {
        self.len() + self.len() % 2
    }

    /// Componentwise containment `self ⊆ other`.
    pub fn contained_in(&self, other: &Self) -> bool {
        self.len() <= other.len() && self.parts().iter().zip(other.parts()).all(|(a, b)| a <= b)
    }

    /// All strict partitions of `n`, in increasing lexicographic order.
    pub fn all_of_weight(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        gen_partitions(n as u32, n as u32, &mut cur, &mut out, true);
        out.reverse();
        out.into_iter().map(|p| Self(Partition::from_sorted(p))).collect()
    }

    /// All strict partitions of weight at most `d`, graded-lex.
    pub fn all_up_to(d: usize) -> Vec<Self> {
        (0..=d).flat_map(Self::all_of_weight).collect()
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `z_λ = Π i^{m_i} m_i!`
pub fn z_lambda(lam: &Partition) -> Rational {
    let mut z = BigInt::from(1);
    for (part, m) in lam.multiplicities() {
        z *= BigInt::from(part).pow(m) * factorial(m);
    }
    Rational::from_integer(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn z_lambda_examples() {
        assert_eq!(z_lambda(&part(&[1])), int(1));
        assert_eq!(z_lambda(&part(&[3, 1, 1])), int(6));
        assert_eq!(z_lambda(&part(&[5, 3, 1])), int(15));
        assert_eq!(z_lambda(&Partition::empty()), int(1));
        assert_eq!(z_lambda(&part(&[2, 2, 2])), int(48));
    }

    #[test]
    fn counts_and_order() {
        let counts: Vec<usize> = (0..=8).map(|n| Partition::all_of_weight(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        let strict: Vec<usize> = (0..=8).map(|n| StrictPartition::all_of_weight(n).len()).collect();
        assert_eq!(strict, vec![1, 1, 1, 2, 2, 3, 4, 5, 6]);
        assert_eq!(StrictPartition::all_up_to(6).len(), 14);
        let all = Partition::all_up_to(6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Partition::all_of_weight(3), vec![part(&[1, 1, 1]), part(&[2, 1]), part(&[3])]);
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(StrictPartition::new(vec![2, 2]).is_err());
        assert_eq!(StrictPartition::parse("3 1").unwrap().parts(), &[3, 1]);
        assert_eq!(part(&[3, 1]).union(&part(&[2, 1])), part(&[3, 2, 1, 1]));
        assert_eq!(StrictPartition::parse("3").unwrap().even_length(), 2);
    }
}
