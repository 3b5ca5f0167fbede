use proptest::prelude::*;

use kq_core::dualq::{bilinear_pair, gp, o_fermionic, o_pfaffian_1};
use kq_core::gq::{gq_fermionic, gq_pfaffian_1};
use kq_core::scalar::rat;
use kq_core::symfun::{PSeries, StrictPartition};
use kq_core::{Beta, BetaScalar, Rational};

fn strict_up_to(w: usize) -> impl Strategy<Value = StrictPartition> {
    let all = StrictPartition::all_up_to(w);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-7i64..=7, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn json_round_trip(lam in strict_up_to(4)) {
        let f = gq_pfaffian_1(&lam, 5, &Beta::symbolic()).unwrap();
        prop_assert_eq!(PSeries::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn specializing_commutes_with_gq(lam in strict_up_to(4), q in rational()) {
        let sym = gq_pfaffian_1(&lam, 5, &Beta::symbolic()).unwrap();
        let at = Beta::value(q);
        prop_assert_eq!(sym.specialize(&at).unwrap(), gq_fermionic(&lam, 5, &at).unwrap());
    }

    #[test]
    fn specializing_commutes_with_duals(lam in strict_up_to(4), q in rational()) {
        let at = Beta::value(q);
        let sym = o_pfaffian_1(&lam, 4, &Beta::symbolic()).unwrap();
        prop_assert_eq!(sym.specialize(&at).unwrap(), o_fermionic(&lam, 4, &at).unwrap());
        let sym = gp(&lam, 4, &Beta::symbolic()).unwrap();
        prop_assert_eq!(sym.specialize(&at).unwrap(), gp(&lam, 4, &at).unwrap());
    }

    #[test]
    fn duality_at_rational_beta(lam in strict_up_to(4), mu in strict_up_to(4), q in rational()) {
        let at = Beta::value(q);
        let f = gq_pfaffian_1(&lam, 4, &at).unwrap();
        let g = gp(&mu, 4, &at).unwrap();
        let want = if lam == mu { BetaScalar::one() } else { BetaScalar::zero() };
        prop_assert_eq!(bilinear_pair(&f, &g, &at).unwrap(), want);
    }
}
