//! Invariants of the public tropical API.

use proptest::prelude::*;
use stiefel_core::plucker::{check_plucker, dual, stiefel_map};
use stiefel_core::trop::{dominates, residuation, vec_mat_mul, TropMatrix, TropScalar, TropVector};
use stiefel_core::{rat, Rational};

fn matrix() -> impl Strategy<Value = TropMatrix> {
    (1usize..=4, 1usize..=6).prop_flat_map(|(d, n)| {
        let entry = prop_oneof![5 => (-4i64..5).prop_map(TropScalar::int), 1 => Just(TropScalar::Infinity)];
        proptest::collection::vec(entry, d * n)
            .prop_map(move |e| TropMatrix::new(d, n, e).unwrap())
            .prop_filter("every row and column supported", |a| {
                a.require_no_empty_column().is_ok() && a.require_no_empty_row().is_ok()
            })
    })
}

fn finite(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-6i64..7).prop_map(rat), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn products_are_projectively_equivariant(
        (a, x) in matrix().prop_flat_map(|a| { let d = a.rows(); (Just(a), finite(d)) }),
        c in -5i64..6,
    ) {
        let base = vec_mat_mul(&TropVector::from_rationals(x.clone()), &a).unwrap();
        let shifted = vec_mat_mul(&TropVector::from_rationals(x).shifted(&rat(c)), &a).unwrap();
        prop_assert_eq!(shifted, base.shifted(&rat(c)));
    }

    #[test]
    fn residuation_is_the_largest_subsolution(
        (a, y) in matrix().prop_flat_map(|a| { let n = a.cols(); (Just(a), finite(n)) }),
    ) {
        let y = TropVector::from_rationals(y);
        let x = residuation(&y, &a).unwrap();
        let image = vec_mat_mul(&x, &a).unwrap();
        prop_assert!(dominates(&image, &y));
        // idempotent on the image
        let again = vec_mat_mul(&residuation(&image, &a).unwrap(), &a).unwrap();
        prop_assert_eq!(again, image);
    }

    #[test]
    fn stiefel_images_and_duals_are_plucker(a in matrix()) {
        prop_assume!(a.rows() <= a.cols());
        if let Ok(p) = stiefel_map(&a) {
            prop_assert!(check_plucker(&p));
            prop_assert!(check_plucker(&dual(&p)));
            prop_assert_eq!(dual(&dual(&p)), p);
        }
    }
}
