use intz::construct::{
    construct_elasticity, construct_grid, construct_lengths, construct_short_long, construct_x_multiple,
    verify_certificate, Certificate, Parity,
};
use intz::monoid::{enumerate_factorizations, make_element};
use intz::poly::IntPoly;
use num_bigint::BigUint;
use num_rational::Ratio;

fn all_small_certificates() -> Vec<Certificate> {
    let mut out = vec![
        construct_lengths(&[2, 3]).unwrap(),
        construct_lengths(&[2, 2, 4]).unwrap(),
        construct_lengths(&[3]).unwrap(),
        Certificate::ShortLong(construct_short_long(2).unwrap()),
        Certificate::Grid(construct_grid(2, 2).unwrap()),
        Certificate::Grid(construct_elasticity(5, 2).unwrap()),
    ];
    out.push(Certificate::XMultiple(construct_x_multiple(2, Parity::Even).unwrap()));
    out
}

#[test]
fn constructions_are_byte_identical_when_repeated() {
    let a: Vec<String> = all_small_certificates().iter().map(Certificate::to_json).collect();
    let b: Vec<String> = all_small_certificates().iter().map(Certificate::to_json).collect();
    assert_eq!(a, b);
}

#[test]
fn certificates_round_trip_through_json() {
    for cert in all_small_certificates() {
        let text = cert.to_json();
        let back = Certificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json(), text);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["schema_version"], 1);
        assert_eq!(value["kind"], cert.kind());
    }
}

#[test]
fn unknown_schema_version_is_rejected() {
    let text = construct_lengths(&[2, 3]).unwrap().to_json().replacen("\"schema_version\": 1", "\"schema_version\": 2", 1);
    assert!(Certificate::from_json(&text).is_err());
}

#[test]
fn every_fresh_certificate_verifies() {
    for cert in all_small_certificates() {
        let report = verify_certificate(&cert);
        assert!(report.passed, "{}: {:?}", cert.kind(), report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn element_fixed_divisor_is_the_prime() {
    for cert in all_small_certificates() {
        let e = cert.element();
        let expected = match &cert {
            Certificate::ShortLong(c) => BigUint::from(c.p),
            Certificate::Grid(c) => BigUint::from(c.p),
            Certificate::PrescribedLengths(c) => BigUint::from(c.p),
            _ => continue,
        };
        assert_eq!(e.numerator_fixed_divisor(), expected);
        assert_eq!(e.denominator(), &expected);
    }
}

#[test]
fn edited_expected_lengths_fail() {
    let Certificate::PrescribedLengths(mut c) = construct_lengths(&[2, 3]).unwrap() else { panic!() };
    c.expected_lengths = vec![2, 4];
    let report = verify_certificate(&Certificate::PrescribedLengths(c));
    assert!(!report.passed);
    assert!(report.failures().any(|f| f.check == "enumeration.lengths"));
    assert!(report.failures().any(|f| f.check == "expected_lengths"));
}

#[test]
fn unlifted_factor_fails() {
    let Certificate::ShortLong(mut c) = Certificate::ShortLong(construct_short_long(3).unwrap()) else { panic!() };
    let mut factors: Vec<IntPoly> = c.product.element.factors().to_vec();
    factors[0] = c.f.clone();
    c.product.element = make_element(1, BigUint::from(1u32), BigUint::from(c.p), factors).unwrap();
    let report = verify_certificate(&Certificate::ShortLong(c));
    assert!(!report.passed);
    let failed: Vec<&str> = report.failures().map(|f| f.check.as_str()).collect();
    assert!(failed.contains(&"element.factors"), "{failed:?}");
    assert!(failed.contains(&"element.certified_factors"), "{failed:?}");
}

#[test]
fn tampered_residue_system_fails() {
    let mut c = construct_short_long(1).unwrap();
    c.residue_system.elements[2] = BigUint::from(4u32);
    let report = verify_certificate(&Certificate::ShortLong(c));
    assert!(!report.passed);
    assert!(report.failures().any(|f| f.check == "residue_system"));
}

#[test]
fn elasticity_is_exact() {
    for (num, den) in [(7u64, 3u64), (2, 1), (3, 2), (5, 4)] {
        let c = construct_elasticity(num, den).unwrap();
        let report = verify_certificate(&Certificate::Grid(c));
        assert!(report.passed);
        assert_eq!(report.profile.unwrap().elasticity, Ratio::new(num, den));
    }
}

#[test]
fn minimal_covers_follow_the_group_structure() {
    for lengths in [[2, 3, 3], [2, 4, 5], [3, 3, 3]] {
        let cert = construct_lengths(&lengths).unwrap();
        let report = verify_certificate(&cert);
        assert!(report.items.iter().any(|i| i.check == "minimal_subsets" && i.passed), "{lengths:?}");
        let mut want = lengths.to_vec();
        want.sort_unstable();
        assert_eq!(report.profile.unwrap().lengths, want);
    }
}

#[test]
fn odd_roots_break_the_long_factorization() {
    for n in 1..=2 {
        let c = construct_x_multiple(n, Parity::Odd).unwrap();
        let report = verify_certificate(&Certificate::XMultiple(c));
        assert!(!report.passed);
        let failure = report.failures().find(|f| f.check == "claimed.irreducible[0]").expect("first claimed factor");
        assert!(failure.detail.contains("DenominatorBelowFixedDivisor"), "{}", failure.detail);
    }
}

#[test]
fn enumeration_is_independent_of_thread_count() {
    let certs = [construct_lengths(&[2, 3, 4]).unwrap(), Certificate::Grid(construct_grid(2, 3).unwrap())];
    for cert in certs {
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| enumerate_factorizations(cert.element()).unwrap())
        };
        let one = run(1);
        assert_eq!(one, run(2));
        assert_eq!(one, run(4));
    }
}
