use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::{Rational, UniPoly};
use crate::error::{KqError, Result};

/// Reduced rational function in β. The denominator is monic and coprime to
/// the numerator, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BetaScalar {
    num: UniPoly,
    den: UniPoly,
}

impl BetaScalar {
    pub fn zero() -> Self {
        Self {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// The indeterminate β.
    pub fn beta() -> Self {
        Self::from_poly(UniPoly::monomial(Rational::one(), 1))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::from_poly(UniPoly::constant(q))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_poly(num: UniPoly) -> Self {
        Self {
            num,
            den: UniPoly::one(),
        }
    }

    pub fn from_parts(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(KqError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: UniPoly, den: UniPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let lead = den.lead().expect("nonzero denominator").clone();
        if lead.is_one() {
            Self { num, den }
        } else {
            let inv = lead.recip();
            Self {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational when it does not depend on β.
    pub fn as_rational(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(KqError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Evaluates at `β = q`.
    pub fn specialize(&self, q: &Rational) -> Result<Rational> {
        let d = self.den.eval(q);
        if d.is_zero() {
            return Err(KqError::DivisionByZero);
        }
        Ok(self.num.eval(q) / d)
    }

    /// Substitutes `β -> -β`.
    pub fn negate_beta(&self) -> Self {
        Self::reduce(self.num.reflect(), self.den.reflect())
    }

    /// Substitutes an arbitrary value for β.
    pub fn substitute(&self, b: &BetaScalar) -> Result<Self> {
        let eval = |p: &UniPoly| {
            let mut acc = BetaScalar::zero();
            for c in p.coeffs().iter().rev() {
                acc = &(&acc * b) + &BetaScalar::from_rational(c.clone());
            }
            acc
        };
        eval(&self.num).div(&eval(&self.den))
    }

    pub fn to_json(&self) -> Value {
        fn terms(p: &UniPoly) -> Value {
            Value::Array(
                p.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(e, c)| json!([e, format!("{}/{}", c.numer(), c.denom())]))
                    .collect(),
            )
        }
        json!({ "num": terms(&self.num), "den": terms(&self.den) })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        fn poly(v: Option<&Value>) -> Result<UniPoly> {
            let arr = v
                .and_then(Value::as_array)
                .ok_or_else(|| KqError::Parse("expected an array of [exponent, coefficient]".into()))?;
            let mut coeffs: Vec<Rational> = Vec::new();
            for t in arr {
                let e = t.get(0).and_then(Value::as_u64);
                let c = t.get(1).and_then(Value::as_str);
                let (Some(e), Some(c)) = (e, c) else {
                    return Err(KqError::Parse(format!("bad term {t}")));
                };
                let e = e as usize;
                if coeffs.len() <= e {
                    coeffs.resize(e + 1, Rational::zero());
                }
                coeffs[e] += parse_rational(c)?;
            }
            Ok(UniPoly::from_coeffs(coeffs))
        }
        Self::from_parts(poly(v.get("num"))?, poly(v.get("den"))?)
    }

    pub fn to_latex(&self) -> String {
        if self.den.is_one() {
            poly_latex(&self.num)
        } else {
            format!("\\frac{{{}}}{{{}}}", poly_latex(&self.num), poly_latex(&self.den))
        }
    }

    /// True when a sum with several terms would need brackets after a coefficient.
    pub(crate) fn is_compound(&self) -> bool {
        !self.den.is_one() || self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || KqError::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(KqError::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn poly_text(p: &UniPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (e, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let var = match e {
            0 => String::new(),
            1 => "β".into(),
            _ => format!("β^{e}"),
        };
        if var.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&format!("{a}*{var}"));
        }
    }
    out
}

fn poly_latex(p: &UniPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (e, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let var = match e {
            0 => String::new(),
            1 => "\\beta".into(),
            _ => format!("\\beta^{{{e}}}"),
        };
        let coeff = if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
        };
        if var.is_empty() {
            out.push_str(&coeff);
        } else if a.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&coeff);
            out.push_str(&var);
        }
    }
    out
}

impl fmt::Display for BetaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", poly_text(&self.num))
        } else {
            write!(f, "({})/({})", poly_text(&self.num), poly_text(&self.den))
        }
    }
}

impl fmt::Debug for BetaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Default for BetaScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a BetaScalar> for &'a BetaScalar {
    type Output = BetaScalar;
    fn add(self, o: &BetaScalar) -> BetaScalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        match (self.den.is_one(), o.den.is_one()) {
            (true, true) => BetaScalar::from_poly(self.num.add(&o.num)),
            // a + c/d = (ad + c)/d is already reduced when c/d is
            (true, false) => BetaScalar {
                num: self.num.mul(&o.den).add(&o.num),
                den: o.den.clone(),
            }
            .normalized_zero(),
            (false, true) => o + self,
            (false, false) => BetaScalar::reduce(
                self.num.mul(&o.den).add(&o.num.mul(&self.den)),
                self.den.mul(&o.den),
            ),
        }
    }
}

impl BetaScalar {
    fn normalized_zero(self) -> Self {
        if self.num.is_zero() {
            Self::zero()
        } else {
            self
        }
    }
}

impl<'a> Mul<&'a BetaScalar> for &'a BetaScalar {
    type Output = BetaScalar;
    fn mul(self, o: &BetaScalar) -> BetaScalar {
        if self.is_zero() || o.is_zero() {
            return BetaScalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return BetaScalar::from_poly(self.num.mul(&o.num));
        }
        BetaScalar::reduce(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl Neg for &BetaScalar {
    type Output = BetaScalar;
    fn neg(self) -> BetaScalar {
        BetaScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for BetaScalar {
    type Output = BetaScalar;
    fn neg(self) -> BetaScalar {
        -&self
    }
}

impl<'a> Sub<&'a BetaScalar> for &'a BetaScalar {
    type Output = BetaScalar;
    fn sub(self, o: &BetaScalar) -> BetaScalar {
        self + &(-o)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BetaScalar> for BetaScalar {
            type Output = BetaScalar;
            fn $m(self, o: BetaScalar) -> BetaScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a BetaScalar> for BetaScalar {
            type Output = BetaScalar;
            fn $m(self, o: &BetaScalar) -> BetaScalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Serialize for BetaScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BetaScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        BetaScalar::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// The value substituted for the deformation parameter. Usually the
/// indeterminate β itself; a rational value specializes every computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Beta(BetaScalar);

impl Beta {
    pub fn symbolic() -> Self {
        Beta(BetaScalar::beta())
    }

    pub fn value(q: Rational) -> Self {
        Beta(BetaScalar::from_rational(q))
    }

    /// `"sym"` or a rational such as `-3/2`.
    pub fn parse(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("sym") || s == "β" || s.eq_ignore_ascii_case("beta") {
            Ok(Self::symbolic())
        } else {
            Ok(Self::value(parse_rational(s)?))
        }
    }

    pub fn scalar(&self) -> BetaScalar {
        self.0.clone()
    }

    pub fn is_symbolic(&self) -> bool {
        self.0 == BetaScalar::beta()
    }

    pub fn pow(&self, k: u32) -> BetaScalar {
        self.scalar().pow(k)
    }

    /// β/2
    pub fn half(&self) -> BetaScalar {
        self.scalar().scale(&super::rat(1, 2))
    }

    /// `-β`, used for the reflected deformation on the dual side.
    pub fn negated(&self) -> Beta {
        Beta(-self.scalar())
    }

    /// Applies the substitution `β -> self` to a symbolic result.
    pub fn apply(&self, s: &BetaScalar) -> Result<BetaScalar> {
        if self.is_symbolic() {
            Ok(s.clone())
        } else {
            s.substitute(&self.scalar())
        }
    }
}

impl Default for Beta {
    fn default() -> Self {
        Self::symbolic()
    }
}
