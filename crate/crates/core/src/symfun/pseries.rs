use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::Partition;
use crate::error::{KqError, Result};
use crate::scalar::{Beta, BetaScalar, Rational, Ring};

/// Symmetric function in the power-sum basis, modulo terms of degree above
/// `degree`. β carries degree zero.
#[derive(Clone, PartialEq, Eq)]
pub struct PSeries {
    degree: usize,
    terms: BTreeMap<Partition, BetaScalar>,
}

impl PSeries {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::constant(degree, BetaScalar::one())
    }

    pub fn constant(degree: usize, c: BetaScalar) -> Self {
        Self::monomial(degree, Partition::empty(), c)
    }

    /// `c p_λ`, or zero if `|λ|` exceeds the bound.
    pub fn monomial(degree: usize, lam: Partition, c: BetaScalar) -> Self {
        let mut s = Self::zero(degree);
        if lam.weight() <= degree && !c.is_zero() {
            s.terms.insert(lam, c);
        }
        s
    }

    /// The power sum `p_n`.
    pub fn p(degree: usize, n: u32) -> Self {
        Self::monomial(degree, Partition::single(n), BetaScalar::one())
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Partition, BetaScalar)>) -> Self {
        let mut s = Self::zero(degree);
        for (lam, c) in terms {
            s.add_term(lam, c);
        }
        s
    }

    pub fn degree_bound(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BetaScalar> {
        &self.terms
    }

    pub fn coeff(&self, lam: &Partition) -> BetaScalar {
        self.terms.get(lam).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Partition::weight)
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Partition::weight)
    }

    pub fn constant_term(&self) -> BetaScalar {
        self.coeff(&Partition::empty())
    }

    pub fn add_term(&mut self, lam: Partition, c: BetaScalar) {
        if lam.weight() > self.degree || c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(lam) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// Re-truncates at a smaller bound.
    pub fn coerce(&self, degree: usize) -> Self {
        Self {
            degree: degree.min(self.degree),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.weight() <= degree)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Same terms under a different bound; terms above the new bound drop.
    pub fn with_degree(&self, degree: usize) -> Self {
        let mut s = self.coerce(degree);
        s.degree = degree;
        s
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        Self {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.weight() == d)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(KqError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree, other.degree, "degree bounds differ");
        let mut s = self.clone();
        for (k, v) in &other.terms {
            s.add_term(k.clone(), v.clone());
        }
        s
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Self, c: &BetaScalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree, other.degree, "degree bounds differ");
        let degree = self.degree.min(other.degree);
        let mut out = Self::zero(degree);
        for (a, ca) in &self.terms {
            let room = match degree.checked_sub(a.weight()) {
                Some(r) => r,
                None => break,
            };
            for (b, cb) in &other.terms {
                if b.weight() > room {
                    break;
                }
                out.add_term(a.union(b), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BetaScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        self.map_coeffs(|v| v * c)
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.map_coeffs(|v| v.scale(c))
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&BetaScalar) -> BetaScalar) -> Self {
        let mut s = Self::zero(self.degree);
        for (k, v) in &self.terms {
            let c = f(v);
            if !c.is_zero() {
                s.terms.insert(k.clone(), c);
            }
        }
        s
    }

    pub fn try_map_coeffs(&self, mut f: impl FnMut(&BetaScalar) -> Result<BetaScalar>) -> Result<Self> {
        let mut s = Self::zero(self.degree);
        for (k, v) in &self.terms {
            let c = f(v)?;
            if !c.is_zero() {
                s.terms.insert(k.clone(), c);
            }
        }
        Ok(s)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.degree);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `exp(self)` for a series without constant term.
    pub fn exp(&self) -> Self {
        assert!(self.constant_term().is_zero(), "exp needs a series without constant term");
        let mut acc = Self::one(self.degree);
        let mut term = Self::one(self.degree);
        for k in 1..=self.degree {
            term = term.mul(self).scale_rational(&crate::scalar::rat(1, k as i64));
            if term.is_zero() {
                break;
            }
            acc.add_assign(&term);
        }
        acc
    }

    /// Substitutes `p_n -> images[n]` (index 0 unused).
    pub fn substitute(&self, images: &[PSeries]) -> Self {
        let mut cache: BTreeMap<Partition, PSeries> = BTreeMap::new();
        let mut out = Self::zero(self.degree);
        for (lam, c) in &self.terms {
            let img = monomial_image(lam, images, self.degree, &mut cache);
            out.add_scaled(&img, c);
        }
        out
    }

    /// Applies `β -> beta` to every coefficient.
    pub fn specialize(&self, beta: &Beta) -> Result<Self> {
        self.try_map_coeffs(|c| beta.apply(c))
    }

    pub fn negate_beta(&self) -> Self {
        self.map_coeffs(BetaScalar::negate_beta)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, v)| json!({"partition": k.parts(), "coeff": v.to_json()}))
            .collect();
        json!({"basis": "p", "degree_bound": self.degree, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| KqError::Parse(m.to_string());
        if v.get("basis").and_then(Value::as_str) != Some("p") {
            return Err(bad("expected basis \"p\""));
        }
        let degree = v
            .get("degree_bound")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing degree_bound"))? as usize;
        let mut s = Self::zero(degree);
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))? {
            let parts: Vec<u32> = serde_json::from_value(t.get("partition").cloned().unwrap_or(Value::Null))
                .map_err(|e| bad(&e.to_string()))?;
            let lam = Partition::new(parts)?;
            if lam.weight() > degree {
                return Err(KqError::WeightExceedsDegree {
                    weight: lam.weight(),
                    degree,
                });
            }
            s.add_term(lam, BetaScalar::from_json(t.get("coeff").unwrap_or(&Value::Null))?);
        }
        Ok(s)
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (lam, c)) in self.terms.iter().enumerate() {
            let mono: String = lam
                .multiplicities()
                .iter()
                .rev()
                .map(|(p, m)| if *m == 1 { format!("p_{{{p}}}") } else { format!("p_{{{p}}}^{{{m}}}") })
                .collect();
            let coeff = c.to_latex();
            let (neg, coeff) = match coeff.strip_prefix('-') {
                Some(rest) if !c.is_compound() => (true, rest.to_string()),
                _ => (false, coeff),
            };
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if mono.is_empty() {
                out.push_str(&coeff);
            } else if c.is_compound() {
                out.push_str(&format!("\\left({coeff}\\right){mono}"));
            } else if coeff == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&coeff);
                out.push_str(&mono);
            }
        }
        out
    }
}

fn monomial_image(lam: &Partition, images: &[PSeries], degree: usize, cache: &mut BTreeMap<Partition, PSeries>) -> PSeries {
    if lam.is_empty() {
        return PSeries::one(degree);
    }
    if let Some(v) = cache.get(lam) {
        return v.clone();
    }
    let parts = lam.parts();
    let rest = Partition::new(parts[1..].to_vec()).expect("suffix of a partition");
    let tail = monomial_image(&rest, images, degree, cache);
    let v = images[parts[0] as usize].mul(&tail);
    cache.insert(lam.clone(), v.clone());
    v
}

impl fmt::Display for PSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (lam, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = lam
                .multiplicities()
                .iter()
                .rev()
                .map(|(p, m)| if *m == 1 { format!("p{p}") } else { format!("p{p}^{m}") })
                .collect();
            let text = c.to_string();
            let (neg, text) = match text.strip_prefix('-') {
                Some(rest) if !c.is_compound() => (true, rest.to_string()),
                _ => (false, text),
            };
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let mono = mono.join("*");
            if mono.is_empty() {
                write!(f, "{text}")?;
            } else if c.is_compound() {
                write!(f, "({text})*{mono}")?;
            } else if text == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{text}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PSeries[D={}]({self})", self.degree)
    }
}

impl Ring for PSeries {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        PSeries::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        PSeries::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        PSeries::mul(self, o)
    }
}
