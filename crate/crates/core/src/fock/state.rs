use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::scalar::{sign, BetaScalar};

/// Normal-ordered index word.
pub type Word = Vec<i64>;

/// Finite combination of `⟨0|φ_{m_1}⋯φ_{m_r}` with `0 >= m_1 > ... > m_r`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BraState {
    terms: BTreeMap<Word, BetaScalar>,
}

/// Finite combination of `φ_{n_1}⋯φ_{n_r}|0⟩` with `n_1 > ... > n_r >= 0`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct KetState {
    terms: BTreeMap<Word, BetaScalar>,
}

macro_rules! state_common {
    ($ty:ident) => {
        impl $ty {
            pub fn zero() -> Self {
                Self::default()
            }

            /// The vacuum.
            pub fn vacuum() -> Self {
                Self::basis(Vec::new())
            }

            pub fn basis(word: Word) -> Self {
                let mut s = Self::zero();
                s.add_term(word, BetaScalar::one());
                s
            }

            pub fn terms(&self) -> &BTreeMap<Word, BetaScalar> {
                &self.terms
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn coeff(&self, word: &[i64]) -> BetaScalar {
                self.terms.get(word).cloned().unwrap_or_default()
            }

            pub fn add_term(&mut self, word: Word, c: BetaScalar) {
                if c.is_zero() {
                    return;
                }
                let v = match self.terms.remove(&word) {
                    Some(old) => &old + &c,
                    None => c,
                };
                if !v.is_zero() {
                    self.terms.insert(word, v);
                }
            }

            pub fn add_assign(&mut self, other: &Self) {
                for (w, c) in &other.terms {
                    self.add_term(w.clone(), c.clone());
                }
            }

            pub fn add_scaled(&mut self, other: &Self, c: &BetaScalar) {
                if c.is_zero() {
                    return;
                }
                for (w, v) in &other.terms {
                    self.add_term(w.clone(), v * c);
                }
            }

            pub fn add(&self, other: &Self) -> Self {
                let mut s = self.clone();
                s.add_assign(other);
                s
            }

            pub fn sub(&self, other: &Self) -> Self {
                let mut s = self.clone();
                s.add_scaled(other, &BetaScalar::from_int(-1));
                s
            }

            pub fn scale(&self, c: &BetaScalar) -> Self {
                let mut s = Self::zero();
                s.add_scaled(self, c);
                s
            }

            /// Smallest and largest grade among the terms.
            pub fn grade_range(&self) -> Option<(i64, i64)> {
                let grades = self.terms.keys().map(|w| w.iter().sum::<i64>());
                grades.fold(None, |acc, g| match acc {
                    None => Some((g, g)),
                    Some((lo, hi)) => Some((lo.min(g), hi.max(g))),
                })
            }

            pub fn to_json(&self) -> Value {
                Value::Array(
                    self.terms
                        .iter()
                        .map(|(w, c)| json!({"word": w, "coeff": c.to_json()}))
                        .collect(),
                )
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.terms.is_empty() {
                    return write!(f, "0");
                }
                let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c}){w:?}")).collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    };
}

state_common!(BraState);
state_common!(KetState);

impl BraState {
    /// `s · φ_n`, normal-ordered.
    pub fn apply_phi(&self, n: i64) -> BraState {
        let mut out = BraState::zero();
        for (w, c) in &self.terms {
            bra_word_phi(w, n, c, &mut out);
        }
        out
    }
}

fn bra_word_phi(w: &[i64], n: i64, c: &BetaScalar, out: &mut BraState) {
    let r = w.len();
    if n > 0 {
        // move φ_n to the vacuum, where it dies; only a contraction with
        // φ_{-n} survives
        if let Some(i) = w.iter().position(|&m| m == -n) {
            let s = sign((r - 1 - i) as i64) * 2 * sign(-n);
            let mut word = w.to_vec();
            word.remove(i);
            out.add_term(word, c.scale(&crate::scalar::int(s)));
        }
        return;
    }
    // n <= 0: slide past the entries smaller than n; none of them can
    // contract with φ_n because m + n < 0
    let smaller = w.iter().rev().take_while(|&&m| m < n).count();
    let pos = r - smaller;
    let s = sign(smaller as i64);
    if pos > 0 && w[pos - 1] == n {
        if n == 0 {
            // φ_0 φ_0 = 1
            let mut word = w.to_vec();
            word.remove(pos - 1);
            out.add_term(word, c.scale(&crate::scalar::int(s)));
        }
        return;
    }
    let mut word = w.to_vec();
    word.insert(pos, n);
    out.add_term(word, c.scale(&crate::scalar::int(s)));
}

impl KetState {
    /// `φ_n · s`, normal-ordered.
    pub fn apply_phi(&self, n: i64) -> KetState {
        let mut out = KetState::zero();
        for (w, c) in &self.terms {
            ket_word_phi(w, n, c, &mut out);
        }
        out
    }
}

fn ket_word_phi(w: &[i64], n: i64, c: &BetaScalar, out: &mut KetState) {
    if n < 0 {
        if let Some(i) = w.iter().position(|&m| m == -n) {
            let s = sign(i as i64) * 2 * sign(n);
            let mut word = w.to_vec();
            word.remove(i);
            out.add_term(word, c.scale(&crate::scalar::int(s)));
        }
        return;
    }
    let larger = w.iter().take_while(|&&m| m > n).count();
    let s = sign(larger as i64);
    if larger < w.len() && w[larger] == n {
        if n == 0 {
            let mut word = w.to_vec();
            word.remove(larger);
            out.add_term(word, c.scale(&crate::scalar::int(s)));
        }
        return;
    }
    let mut word = w.to_vec();
    word.insert(larger, n);
    out.add_term(word, c.scale(&crate::scalar::int(s)));
}
