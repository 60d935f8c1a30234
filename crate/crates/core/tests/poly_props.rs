use intz::poly::{parse_poly, product, IntPoly, RationalPoly};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, 0..=max_deg + 1).prop_map(|c| IntPoly::from_i64s(&c))
}

fn nonzero(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    poly(max_deg, bound).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn text_round_trip(f in poly(8, 1_000_000)) {
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn json_round_trip(f in poly(8, 1_000_000)) {
        let text = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<IntPoly>(&text).unwrap(), f);
    }

    #[test]
    fn gauss_content_is_multiplicative(f in nonzero(5, 50), g in nonzero(5, 50)) {
        prop_assert_eq!((&f * &g).content(), f.content() * g.content());
    }

    #[test]
    fn primitive_part_recombines(f in nonzero(6, 1000)) {
        let (sign, pp, c) = f.primitive_part().unwrap();
        prop_assert!(pp.is_primitive());
        prop_assert!(pp.leading().unwrap() > &BigInt::zero());
        prop_assert_eq!(pp.scale(&(BigInt::from(sign) * BigInt::from(c))), f);
    }

    #[test]
    fn binomial_coordinates_invert(f in poly(8, 1_000_000)) {
        let coords = f.binomial_coefficients();
        let back = IntPoly::from_binomial_coefficients(&coords);
        prop_assert_eq!(back, RationalPoly::from(f));
    }

    #[test]
    fn evaluation_respects_products(f in poly(5, 100), g in poly(5, 100), c in -50i64..=50) {
        prop_assert_eq!((&f * &g).evaluate_at(c), f.evaluate_at(c) * g.evaluate_at(c));
        prop_assert_eq!((&f + &g).evaluate_at(c), f.evaluate_at(c) + g.evaluate_at(c));
    }

    #[test]
    fn product_degree_adds(fs in prop::collection::vec(nonzero(4, 20), 0..5)) {
        let p = product(&fs);
        let deg: usize = fs.iter().map(|f| f.degree().unwrap()).sum();
        prop_assert_eq!(p.degree(), Some(deg));
    }

    #[test]
    fn rational_equality_ignores_scaling(f in nonzero(5, 100), k in 1u32..50, d in 1u32..50) {
        let a = RationalPoly::new(f.scale(&BigInt::from(k)), BigUint::from(k * d));
        let b = RationalPoly::new(f.clone(), BigUint::from(d));
        prop_assert_eq!(a, b);
    }
}

#[test]
fn integer_valued_quotient_has_integral_coordinates() {
    // x(x-1)/2 has binomial coordinates (0, 0, 1)
    let f = RationalPoly::new(parse_poly("x^2 - x").unwrap(), BigUint::from(2u32));
    let coords = f.numerator.binomial_coefficients();
    assert!(coords.iter().all(|c| (c % 2) == BigInt::zero()));
    assert!(BigUint::one() < f.denominator);
}
