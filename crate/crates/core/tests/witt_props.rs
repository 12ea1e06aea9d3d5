mod common;

use knot_witt::arith::is_square_mod;
use knot_witt::witt::{ratio, DiagonalForm};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn nonzero() -> impl Strategy<Value = BigRational> {
    (prop_oneof![-60i64..=-1, 1i64..=60], 1i64..=60).prop_map(|(n, d)| ratio(n, d))
}

fn form() -> impl Strategy<Value = DiagonalForm> {
    prop::collection::vec(nonzero(), 0..6).prop_map(|v| DiagonalForm::new(v).unwrap())
}

fn gen(a: &BigRational) -> DiagonalForm {
    DiagonalForm::generator(a.clone()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn square_scaling(a in nonzero(), b in nonzero()) {
        prop_assert!(gen(&a).is_equal(&gen(&(&a * &b * &b))));
    }

    #[test]
    fn hyperbolic_vanishes(a in nonzero()) {
        prop_assert!((gen(&a) + gen(&-a.clone())).is_equal(&DiagonalForm::zero()));
    }

    #[test]
    fn sum_relation(a in nonzero(), b in nonzero()) {
        let s = &a + &b;
        prop_assume!(!num_traits::Zero::is_zero(&s));
        let lhs = gen(&a) + gen(&b);
        let rhs = gen(&s) + gen(&(&a * &b * &s));
        prop_assert!(lhs.is_equal(&rhs));
    }

    #[test]
    fn invariant_is_additive(x in form(), y in form()) {
        prop_assert_eq!((&x + &y).witt_invariant(), x.witt_invariant() + y.witt_invariant());
        prop_assert_eq!((&x + &y).signature(), x.signature() + y.signature());
    }

    #[test]
    fn negation_is_inverse(x in form()) {
        prop_assert!((&x + &x.negate()).is_equal(&DiagonalForm::zero()));
    }

    #[test]
    fn torsion_annihilates(x in form()) {
        if let knot_witt::witt::TorsionOrder::Finite(n) = x.torsion_order() {
            let mut sum = DiagonalForm::zero();
            for _ in 0..n {
                sum += &x;
            }
            prop_assert!(sum.is_equal(&DiagonalForm::zero()));
        }
    }
}

#[test]
fn local_addition_tables_match_oracle() {
    for p in common::TABLE_PRIMES {
        common::check_local_table(p).unwrap();
    }
}

#[test]
fn square_residues_match_brute_force() {
    common::check_residues(200).unwrap();
    assert!(is_square_mod(3, 2).is_err());
    assert!(is_square_mod(3, 9).is_err());
}

#[test]
fn boundary_at_two_counts_odd_valuations() {
    let x: DiagonalForm = "2 6 3 4".parse().unwrap();
    assert_eq!(x.boundary(2).unwrap().order(), 1);
    let y: DiagonalForm = "2".parse().unwrap();
    assert_eq!(y.boundary(BigInt::from(2)).unwrap().order(), 2);
}
