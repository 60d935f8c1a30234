//! The fixed divisor `d(f) = gcd { f(c) : c ∈ Z }`.
//!
//! For `f` of degree `n` the binomial coordinates `Δ^k f(0)`, `k = 0..=n`,
//! are integer combinations of `f(0), …, f(n)` and conversely, and `f(c)` is
//! an integer combination of the coordinates for every integer `c`. So the
//! gcd over all of `Z` equals the gcd of the `n + 1` values `f(0), …, f(n)`,
//! which is what [`fixed_divisor`] computes. [`fixed_divisor_oracle`] is an
//! independent residue-by-residue search used only for cross-checking.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::congruence::{factor_trial, factorial_valuation, primes_up_to, require_prime, valuation, TRIAL_LIMIT};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Default degree bound for [`fixed_divisor_oracle`].
pub const ORACLE_DEGREE_BOUND: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedDivisor {
    pub value: BigUint,
    pub prime_valuations: BTreeMap<BigUint, u32>,
}

impl FixedDivisor {
    fn from_valuations(prime_valuations: BTreeMap<BigUint, u32>) -> Self {
        let value = prime_valuations
            .iter()
            .fold(BigUint::one(), |acc, (p, &e)| acc * p.pow(e));
        Self { value, prime_valuations }
    }

    pub fn valuation(&self, p: u64) -> u32 {
        self.prime_valuations.get(&BigUint::from(p)).copied().unwrap_or(0)
    }
}

impl fmt::Display for FixedDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for FixedDivisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Factors<'a>(&'a BTreeMap<BigUint, u32>);
        impl Serialize for Factors<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (p, e) in self.0 {
                    m.serialize_entry(&p.to_string(), e)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("value", &self.value.to_string())?;
        m.serialize_entry("factors", &Factors(&self.prime_valuations))?;
        m.end()
    }
}

fn values_gcd(f: &IntPoly) -> BigUint {
    let n = f.degree_or_zero() as i64;
    let mut g = BigInt::zero();
    for c in 0..=n {
        g = g.gcd(&f.evaluate_at(c));
    }
    g.magnitude().clone()
}

/// `d(f)` as the gcd of `f(0), …, f(deg f)`, with its prime factorization.
///
/// For primitive `f` every prime factor is at most `deg f`, so trial division
/// by those primes is complete; a surviving cofactor is reported as an error.
/// For non-primitive `f` the value is still the gcd of values, and the
/// cofactor is factored by bounded trial division.
pub fn fixed_divisor(f: &IntPoly) -> Result<FixedDivisor> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    let value = values_gcd(f);
    let mut rest = value.clone();
    let mut vals = BTreeMap::new();
    for p in primes_up_to(n as u64) {
        let pb = BigUint::from(p);
        let mut e = 0;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            vals.insert(pb, e);
        }
    }
    if !rest.is_one() {
        if f.is_primitive() {
            return Err(Error::FixedDivisorBound { cofactor: rest, degree: n });
        }
        for (p, e) in factor_trial(&rest, TRIAL_LIMIT)? {
            *vals.entry(p).or_insert(0) += e;
        }
    }
    let fd = FixedDivisor::from_valuations(vals);
    debug_assert_eq!(fd.value, value);
    Ok(fd)
}

/// Fixed divisor of `∏ fs`, computed from the values of the factors without
/// expanding the product. The empty product has fixed divisor 1.
pub fn fixed_divisor_of_product(fs: &[&IntPoly]) -> Result<BigUint> {
    if fs.iter().any(|f| f.is_zero()) {
        return Err(Error::ZeroPolynomial);
    }
    let n: usize = fs.iter().map(|f| f.degree_or_zero()).sum();
    let mut g = BigInt::zero();
    for c in 0..=n as i64 {
        let c = BigInt::from(c);
        let v: BigInt = fs.iter().map(|f| f.evaluate(&c)).product();
        g = g.gcd(&v);
        if g.is_one() {
            break;
        }
    }
    Ok(g.magnitude().clone())
}

/// `v_p(d(f)) = min_c v_p(f(c))`, the minimum taken over `c = 0..=deg f`.
pub fn fixed_divisor_valuation(f: &IntPoly, p: u64) -> Result<u32> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    require_prime(p)?;
    let min = (0..=n as i64)
        .map(|c| f.evaluate_at(c))
        .filter(|v| !v.is_zero())
        .map(|v| valuation(&v, p))
        .min();
    Ok(min.expect("nonzero polynomial of degree n vanishes at most n times"))
}

/// Gcd of the binomial-basis coordinates of `f`; equals `d(f)`.
pub fn fixed_divisor_binomial(f: &IntPoly) -> Result<BigUint> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = f.binomial_coefficients().iter().fold(BigInt::zero(), |g, a| g.gcd(a));
    Ok(g.magnitude().clone())
}

/// Residue-level search for `d(f)` of a primitive polynomial.
///
/// For each prime `p ≤ deg f`, finds the largest `k` with `p^k | f(c)` for
/// every residue `c` in `0..p^k`, capped at `v_p(n!) + 1`. Exponential in the
/// valuation, hence the degree bound.
pub fn fixed_divisor_oracle(f: &IntPoly) -> Result<FixedDivisor> {
    fixed_divisor_oracle_bounded(f, ORACLE_DEGREE_BOUND)
}

pub fn fixed_divisor_oracle_bounded(f: &IntPoly, degree_bound: usize) -> Result<FixedDivisor> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n > degree_bound {
        return Err(Error::OracleBound { degree: n, bound: degree_bound });
    }
    let content = f.content();
    if !content.is_one() {
        return Err(Error::NotPrimitive(content));
    }
    let mut vals = BTreeMap::new();
    for p in primes_up_to(n as u64) {
        let cap = factorial_valuation(n as u64, p) + 1;
        let mut k = 0;
        while k < cap {
            let modulus = BigInt::from(p).pow(k + 1);
            let residues = p.pow(k + 1) as i64;
            let divides_all = (0..residues).all(|c| (f.evaluate_at(c) % &modulus).is_zero());
            if !divides_all {
                break;
            }
            k += 1;
        }
        if k > 0 {
            vals.insert(BigUint::from(p), k);
        }
    }
    Ok(FixedDivisor::from_valuations(vals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{from_roots, parse_poly};

    fn p(s: &str) -> IntPoly {
        parse_poly(s).unwrap()
    }

    fn falling(n: i64) -> IntPoly {
        from_roots(&(0..n).map(BigInt::from).collect::<Vec<_>>())
    }

    #[test]
    fn examples() {
        assert_eq!(fixed_divisor(&p("x^2-x")).unwrap().value, BigUint::from(2u32));
        assert_eq!(fixed_divisor(&p("x")).unwrap().value, BigUint::one());
        let mut fact = 1u64;
        for n in 1..=5 {
            fact *= n as u64;
            if n >= 2 {
                assert_eq!(fixed_divisor(&falling(n)).unwrap().value, BigUint::from(fact));
            }
        }
        assert_eq!(fixed_divisor(&IntPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(fixed_divisor_valuation(&p("x^2-x"), 2).unwrap(), 1);
        assert_eq!(fixed_divisor_valuation(&p("x^2-x"), 5).unwrap(), 0);
        assert_eq!(fixed_divisor_valuation(&falling(4), 2).unwrap(), 3);
        assert!(matches!(fixed_divisor_valuation(&p("x"), 4), Err(Error::NotPrime(_))));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(fixed_divisor_oracle(&p("x^2-x")).unwrap().value, BigUint::from(2u32));
        assert_eq!(fixed_divisor_oracle(&p("x^2+1")).unwrap().value, BigUint::one());
        assert_eq!(fixed_divisor_oracle(&p("x^3-x")).unwrap().value, BigUint::from(6u32));
        assert!(matches!(fixed_divisor_oracle(&p("2x^2+2")), Err(Error::NotPrimitive(_))));
        assert!(matches!(
            fixed_divisor_oracle_bounded(&falling(5), 4),
            Err(Error::OracleBound { degree: 5, bound: 4 })
        ));
    }

    #[test]
    fn json_shape() {
        let d = fixed_divisor(&p("x^3-x")).unwrap();
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"value":"6","factors":{"2":1,"3":1}}"#);
    }

    #[test]
    fn non_primitive_convention() {
        // gcd of values, not content times anything
        let d = fixed_divisor(&p("6x^2+6x")).unwrap();
        assert_eq!(d.value, BigUint::from(12u32));
        let d = fixed_divisor(&p("1000003x")).unwrap();
        assert_eq!(d.value, BigUint::from(1_000_003u32));
        assert_eq!(fixed_divisor(&p("7")).unwrap().value, BigUint::from(7u32));
    }

    #[test]
    fn product_route() {
        let fs = [p("x"), p("x-1"), p("x-2")];
        let refs: Vec<_> = fs.iter().collect();
        assert_eq!(fixed_divisor_of_product(&refs).unwrap(), BigUint::from(6u32));
        assert_eq!(fixed_divisor_of_product(&[]).unwrap(), BigUint::one());
    }
}
