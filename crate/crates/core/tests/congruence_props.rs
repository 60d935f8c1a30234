use intz::congruence::{
    check_residue_system, crt, is_eisenstein, is_prime, next_prime, primes_up_to, safe_residue_system,
};
use intz::poly::IntPoly;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use proptest::prelude::*;

proptest! {
    #[test]
    fn crt_solution_is_smallest(residues in prop::collection::vec(-1000i64..1000, 1..6)) {
        let primes = [3u64, 5, 7, 11, 13, 17];
        let pairs: Vec<(BigInt, BigUint)> = residues.iter().zip(primes).map(|(&r, p)| (BigInt::from(r), BigUint::from(p))).collect();
        let x = crt(&pairs).unwrap();
        let modulus: BigUint = pairs.iter().map(|(_, m)| m.clone()).product();
        prop_assert!(x < modulus);
        for (r, m) in &pairs {
            prop_assert_eq!(BigInt::from(x.clone()).mod_floor(&BigInt::from(m.clone())), r.mod_floor(&BigInt::from(m.clone())));
        }
    }

    #[test]
    fn next_prime_is_next(n in 0u64..5000) {
        let p = next_prime(n);
        prop_assert!(p > n && is_prime(p));
        prop_assert!((n + 1..p).all(|k| !is_prime(k)));
    }

    #[test]
    fn eisenstein_at_five(c in prop::collection::vec(-30i64..30, 1..6)) {
        let mut coeffs: Vec<i64> = c.iter().map(|v| 5 * v).collect();
        coeffs.push(1);
        let f = IntPoly::from_i64s(&coeffs);
        prop_assert_eq!(is_eisenstein(&f, 5), c[0] % 5 != 0);
    }
}

#[test]
fn safe_residue_systems_up_to_97() {
    for p in primes_up_to(97) {
        let rs = safe_residue_system(p).unwrap();
        let check = check_residue_system(&rs.signed_elements(), p);
        assert!(check.passed, "p = {p}: {check:?}");
        assert!(check.witnesses.iter().all(|w| w.missing_residue.is_some()));
    }
}

#[test]
fn consecutive_integers_are_complete_mod_smaller_primes() {
    let elements: Vec<BigInt> = (0..5).map(BigInt::from).collect();
    let check = check_residue_system(&elements, 5);
    assert!(check.complete_mod_p);
    assert!(!check.passed);
    assert_eq!(check.complete_mod_other, Some(2));
}
