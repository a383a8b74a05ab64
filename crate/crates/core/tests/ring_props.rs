//! Ring-axiom and Frobenius properties of the sparse Laurent arithmetic.

use charp::poly::LaurentPoly;
use charp::sample::{random_poly, trial_rng};
use proptest::prelude::*;

const PRIMES: [u64; 4] = [2, 3, 5, 7];

#[test]
fn ring_axioms_on_random_triples() {
    for &p in &PRIMES {
        for trial in 0..200u64 {
            let mut rng = trial_rng(p, trial);
            let f = random_poly(&mut rng, p, 2, 3, 4);
            let g = random_poly(&mut rng, p, 2, 3, 4);
            let h = random_poly(&mut rng, p, 2, 3, 4);
            // multiplicative associativity
            let left = f.mul(&g).unwrap().mul(&h).unwrap();
            let right = f.mul(&g.mul(&h).unwrap()).unwrap();
            assert_eq!(left, right, "assoc failed p={p} trial={trial}");
            // distributivity
            let left = f.mul(&g.add(&h).unwrap()).unwrap();
            let right = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
            assert_eq!(left, right, "distrib failed p={p} trial={trial}");
            // additive associativity and commutativity
            assert_eq!(
                f.add(&g).unwrap().add(&h).unwrap(),
                f.add(&g.add(&h).unwrap()).unwrap()
            );
            assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        }
    }
}

#[test]
fn frobenius_equals_iterated_multiplication() {
    for &p in &PRIMES {
        for trial in 0..50u64 {
            let mut rng = trial_rng(1000 + p, trial);
            let f = random_poly(&mut rng, p, 2, 2, 4);
            assert_eq!(f.frob_power(1), f.pow(p), "p={p} trial={trial}");
        }
    }
}

#[test]
fn product_support_in_minkowski_sum() {
    for &p in &PRIMES {
        for trial in 0..100u64 {
            let mut rng = trial_rng(2000 + p, trial);
            let f = random_poly(&mut rng, p, 3, 3, 4);
            let g = random_poly(&mut rng, p, 3, 3, 4);
            let minkowski: std::collections::BTreeSet<Vec<i64>> = f
                .support()
                .iter()
                .flat_map(|a| {
                    g.support()
                        .iter()
                        .map(|b| a.iter().zip(b).map(|(x, y)| x + y).collect())
                        .collect::<Vec<_>>()
                })
                .collect();
            for e in f.mul(&g).unwrap().support() {
                assert!(minkowski.contains(&e), "stray exponent {e:?}");
            }
        }
    }
}

fn arb_poly(p: u64) -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(
        (proptest::collection::vec(-3i64..=3, 2), 0..(p as i64)),
        0..5,
    )
    .prop_map(move |terms| LaurentPoly::from_terms(p, 2, terms).unwrap())
}

proptest! {
    #[test]
    fn add_then_subtract_is_identity(f in arb_poly(5), g in arb_poly(5)) {
        prop_assert_eq!(f.add(&g).unwrap().sub(&g).unwrap(), f);
    }

    #[test]
    fn mul_commutes(f in arb_poly(7), g in arb_poly(7)) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
    }

    #[test]
    fn one_is_neutral(f in arb_poly(3)) {
        let one = LaurentPoly::one(3, 2);
        prop_assert_eq!(f.mul(&one).unwrap(), f);
    }
}
