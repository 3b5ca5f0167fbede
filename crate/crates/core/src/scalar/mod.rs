//! Exact coefficients: rationals, rational functions in β, binomials and a
//! generic Pfaffian.

mod beta;
pub mod linalg;
mod pfaffian;
mod poly;

pub use beta::{parse_rational, Beta, BetaScalar};
pub use pfaffian::{pfaffian, Ring, SkewArray};
pub use poly::UniPoly;

use num_bigint::BigInt;
use num_traits::One;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Generalized binomial coefficient `a (a-1) ... (a-k+1) / k!` for any integer `a`.
pub fn binom_general(a: i64, k: u32) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(a - i);
        den *= BigInt::from(i + 1);
    }
    Rational::new(num, den)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `(-1)^k` as a sign.
pub fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Coefficients of `t^0..t^order` in `(1 + βt)^k`.
pub fn expand_binomial_power(k: i64, order: usize) -> Vec<BetaScalar> {
    expand_binomial_power_at(k, order, &Beta::symbolic())
}

pub fn expand_binomial_power_at(k: i64, order: usize, beta: &Beta) -> Vec<BetaScalar> {
    (0..=order)
        .map(|j| beta.pow(j as u32).scale(&binom_general(k, j as u32)))
        .collect()
}

/// `2^{-k}` as a rational.
pub fn inv_pow2(k: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binom_general(-2, 3), int(-4));
        assert_eq!(binom_general(5, 0), int(1));
        assert_eq!(binom_general(5, 2), int(10));
        assert_eq!(binom_general(2, 3), int(0));
        // negative upper index via the reflection rule C(-a, b) = (-1)^b C(a+b-1, b)
        for a in 1..6 {
            for b in 0..6u32 {
                let rhs = binom_general(a + b as i64 - 1, b) * int(sign(b as i64));
                assert_eq!(binom_general(-a, b), rhs);
            }
        }
    }

    #[test]
    fn binomial_power_examples() {
        let b = BetaScalar::beta();
        assert_eq!(
            expand_binomial_power(-1, 2),
            vec![BetaScalar::one(), -&b, b.pow(2)]
        );
        assert_eq!(
            expand_binomial_power(0, 2),
            vec![BetaScalar::one(), BetaScalar::zero(), BetaScalar::zero()]
        );
        assert_eq!(
            expand_binomial_power(-2, 2),
            vec![BetaScalar::one(), b.scale(&int(-2)), b.pow(2).scale(&int(3))]
        );
    }

    proptest! {
        #[test]
        fn binomial_power_convolution(k1 in -6i64..6, k2 in -6i64..6, order in 0usize..7) {
            let a = expand_binomial_power(k1, order);
            let b = expand_binomial_power(k2, order);
            let c = expand_binomial_power(k1 + k2, order);
            for n in 0..=order {
                let mut acc = BetaScalar::zero();
                for i in 0..=n {
                    acc = &acc + &(&a[i] * &b[n - i]);
                }
                prop_assert_eq!(&acc, &c[n]);
            }
        }
    }
}
