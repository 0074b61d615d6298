use hvcert_core::algebra::{
    count_roots, nonnegative_on_ray, partial_fractions, rat, sqrt_enclosure, Polynomial, QuadraticSurd, Rational,
    RationalFunction,
};
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

fn poly(c: &[i64]) -> Polynomial {
    Polynomial::from_ints(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn partial_fractions_recombine(
        roots in proptest::collection::btree_set(-9i64..9, 1..6),
        num in proptest::collection::vec(-20i64..20, 1..9),
        scale in 1i64..5,
    ) {
        let factors: Vec<Polynomial> = roots.iter().map(|r| poly(&[-r, 1])).collect();
        let den = factors.iter().fold(poly(&[scale]), |acc, f| &acc * f);
        let num = poly(&num);
        prop_assume!(!num.is_zero() && num.degree().unwrap() <= den.degree().unwrap() + 2);
        let f = RationalFunction::new(num, den.clone()).unwrap();
        // a cancelled factor changes the pole set
        prop_assume!(f.den().degree() == den.degree());
        let e = partial_fractions(&f, &factors).unwrap();
        prop_assert_eq!(e.recombine(), f);
    }

    #[test]
    fn positivity_agrees_with_sampling(coeffs in proptest::collection::vec(-30i64..30, 1..7), start in -5i64..20) {
        let p = poly(&coeffs);
        let n0 = rat(start, 1);
        let v = nonnegative_on_ray(&p, &n0);
        let samples: Vec<Rational> = (0..400).map(|k| &n0 + rat(k, 8)).chain((1..40).map(|k| rat(10i64.pow(k / 4) * (k as i64 % 4 + 1), 1) + &n0)).collect();
        let sampled_all_positive = samples.iter().all(|x| p.eval(x).is_positive());
        // integer coefficients below 30 keep every real root below 31 in modulus
        let roots_past = count_roots(&p, &n0, &(&n0 + rat(100, 1)));
        if v.positive {
            prop_assert!(sampled_all_positive);
            prop_assert_eq!(roots_past, 0);
        } else if p.eval(&n0).is_positive() {
            prop_assert!(roots_past > 0);
        } else {
            prop_assert!(!sampled_all_positive);
        }
    }

    #[test]
    fn sqrt_enclosure_brackets(p in 0i64..10_000_000, q in 1i64..100_000, digits in 1u32..60) {
        let x = rat(p, q);
        let width = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(digits));
        let e = sqrt_enclosure(&x, &width).unwrap();
        prop_assert!(&e.lower * &e.lower <= x);
        prop_assert!(&e.upper * &e.upper >= x);
        prop_assert!(e.width() <= width);
        prop_assert!(!e.lower.is_negative());
    }

    #[test]
    fn surd_enclosure_contains_value(a in -50i64..50, b in -50i64..50, r in 1i64..500, digits in 3u32..40) {
        let s = QuadraticSurd::new(rat(a, 1), rat(b, 7), rat(r, 3)).unwrap();
        let width = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(digits));
        let iv = s.enclose(&width);
        prop_assert!(iv.lo <= iv.hi);
        prop_assert!(&iv.hi - &iv.lo <= width);
        let f = s.to_f64();
        let slack = 1e-9 * (1.0 + f.abs());
        prop_assert!(iv.lo.to_f64().unwrap() <= f + slack && f - slack <= iv.hi.to_f64().unwrap());
    }
}
