//! Property suite for the series algebra: ring-style laws, inversion
//! round-trips, the product rule, and the exponent addition law, all checked
//! with exact equality on randomized inputs.

use proptest::collection::vec;
use proptest::prelude::*;

use pbernoulli::numeric::rat;
use pbernoulli::{Rational, Series};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-60i64..61, 1i64..24).prop_map(|(n, d)| rat(n, d))
}

fn arb_series() -> impl Strategy<Value = Series> {
    (-4i64..5, vec(arb_rational(), 0..20))
        .prop_map(|(valuation, coeffs)| Series::new(valuation, coeffs))
}

fn arb_nonzero_series() -> impl Strategy<Value = Series> {
    arb_series().prop_filter("nonzero", |s| !s.is_zero())
}

proptest! {
    #[test]
    fn mul_is_commutative(a in arb_series(), b in arb_series()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn mul_is_associative(a in arb_series(), b in arb_series(), c in arb_series()) {
        // Both groupings end up with the same guaranteed window, so the
        // comparison is exact, not merely up to a common order.
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn mul_distributes_over_add(a in arb_series(), b in arb_series(), c in arb_series()) {
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        let common = lhs.order().min(rhs.order());
        prop_assert!(lhs.agrees_to(&rhs, common));
    }

    #[test]
    fn add_then_sub_roundtrips(a in arb_series(), b in arb_series()) {
        let roundtrip = a.add(&b).sub(&b);
        prop_assert_eq!(a.truncate(roundtrip.order()), roundtrip);
    }

    #[test]
    fn invert_roundtrip_is_one(a in arb_nonzero_series()) {
        let product = a.mul(&a.invert().unwrap());
        prop_assert_eq!(Series::one(product.order()), product);
    }

    #[test]
    fn invert_is_involutive_up_to_truncation(a in arb_nonzero_series()) {
        let twice = a.invert().unwrap().invert().unwrap();
        prop_assert_eq!(a.truncate(twice.order()), twice.truncate(a.order()));
    }

    #[test]
    fn derivative_satisfies_product_rule(a in arb_series(), b in arb_series()) {
        let lhs = a.mul(&b).derivative();
        let rhs = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_linear_addition_law(
        a in arb_rational(),
        b in arb_rational(),
        order in 1i64..24,
    ) {
        let product = Series::exp_linear(&a, order).mul(&Series::exp_linear(&b, order));
        prop_assert_eq!(Series::exp_linear(&(a + b), order), product);
    }

    #[test]
    fn pow_adds_exponents(a in arb_nonzero_series(), j in -2i32..4, k in -2i32..4) {
        let product = a.pow(j).unwrap().mul(&a.pow(k).unwrap());
        let direct = a.pow(j + k).unwrap();
        let common = product.order().min(direct.order());
        prop_assert!(product.agrees_to(&direct, common));
    }

    #[test]
    fn coefficient_is_never_fabricated(a in arb_series(), beyond in 0i64..8) {
        let m = a.order() + beyond;
        prop_assert!(a.coefficient(m).is_err());
        prop_assert!(a.truncate(a.order() - 1).coefficient(a.order() - 1).is_err());
    }
}
