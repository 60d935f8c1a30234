//! Primes, Chinese remaindering, residue systems that are complete modulo
//! one prime and incomplete modulo every smaller prime, and the Eisenstein
//! criterion.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(BigUint::from(p)))
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Exponent of `p` in `n!` (Legendre).
pub fn factorial_valuation(n: u64, p: u64) -> u32 {
    let mut v = 0u64;
    let mut pk = p;
    while pk <= n {
        v += n / pk;
        match pk.checked_mul(p) {
            Some(next) => pk = next,
            None => break,
        }
    }
    v as u32
}

/// Default trial-division limit for factoring constants.
pub const TRIAL_LIMIT: u64 = 1_000_000;

/// Prime factorization by trial division up to `limit`. A leftover cofactor
/// below `limit²` is prime; anything larger is reported as unfactorable.
pub fn factor_trial(n: &BigUint, limit: u64) -> Result<BTreeMap<BigUint, u32>> {
    let mut out = BTreeMap::new();
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mut n = n.clone();
    let mut d = 2u64;
    while d <= limit {
        let dd = BigUint::from(d);
        if &dd * &dd > n {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&dd);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            out.insert(dd, e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        let lim = BigUint::from(limit);
        if n > &lim * &lim {
            return Err(Error::Unfactorable(n));
        }
        *out.entry(n).or_insert(0) += 1;
    }
    Ok(out)
}

/// Smallest non-negative solution of `x ≡ r_i (mod m_i)` for pairwise
/// coprime moduli.
pub fn crt(pairs: &[(BigInt, BigUint)]) -> Result<BigUint> {
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, m) in pairs {
        if m.is_zero() {
            return Err(Error::ZeroModulus);
        }
        let m = BigInt::from(m.clone());
        let egcd = modulus.extended_gcd(&m);
        if !egcd.gcd.is_one() {
            return Err(Error::NonCoprimeModuli(
                modulus.magnitude().clone(),
                m.magnitude().clone(),
            ));
        }
        // x + modulus * t ≡ r (mod m), t = (r - x) * modulus^{-1}
        let t = ((r - &x) * &egcd.x).mod_floor(&m);
        x += &modulus * t;
        modulus *= m;
        x = x.mod_floor(&modulus);
    }
    Ok(x.magnitude().clone())
}

/// Convenience wrapper over small integers.
pub fn crt_u64(pairs: &[(i64, u64)]) -> Result<BigUint> {
    let big: Vec<_> = pairs.iter().map(|&(r, m)| (BigInt::from(r), BigUint::from(m))).collect();
    crt(&big)
}

/// A complete residue system modulo `p` containing no complete residue
/// system modulo any other prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueSystem {
    pub p: u64,
    #[serde(with = "crate::serde_dec::vec")]
    pub elements: Vec<BigUint>,
}

/// `s_k ≡ k (mod p)` and `s_k ≡ 1 (mod q)` for every prime `q < p`, for
/// `k = 1..=p`, each the smallest non-negative solution.
pub fn safe_residue_system(p: u64) -> Result<ResidueSystem> {
    require_prime(p)?;
    let smaller = primes_up_to(p - 1);
    let elements = (1..=p)
        .map(|k| {
            let mut pairs = vec![(k as i64, p)];
            pairs.extend(smaller.iter().map(|&q| (1, q)));
            crt_u64(&pairs)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidueSystem { p, elements })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeWitness {
    pub q: u64,
    /// A residue class mod `q` not hit by the elements, if any.
    pub missing_residue: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueCheck {
    pub p: u64,
    pub complete_mod_p: bool,
    pub witnesses: Vec<PrimeWitness>,
    /// First prime `q ≠ p` modulo which the elements contain a complete system.
    pub complete_mod_other: Option<u64>,
    pub passed: bool,
}

fn residues_hit(elements: &[BigInt], q: u64) -> Vec<bool> {
    let mut hit = vec![false; q as usize];
    let qb = BigInt::from(q);
    for e in elements {
        hit[e.mod_floor(&qb).to_usize().unwrap()] = true;
    }
    hit
}

/// Checks completeness modulo `p` (exactly `p` elements, pairwise
/// incongruent) and incompleteness modulo every other prime up to
/// `max(p - 1, |elements|)`; primes beyond `|elements|` can never be covered.
pub fn check_residue_system(elements: &[BigInt], p: u64) -> ResidueCheck {
    let complete_mod_p = is_prime(p)
        && elements.len() == p as usize
        && residues_hit(elements, p).iter().all(|&h| h);
    let limit = (p.saturating_sub(1)).max(elements.len() as u64);
    let mut witnesses = Vec::new();
    let mut complete_mod_other = None;
    for q in primes_up_to(limit).into_iter().filter(|&q| q != p) {
        let missing = residues_hit(elements, q).iter().position(|&h| !h).map(|r| r as u64);
        if missing.is_none() && complete_mod_other.is_none() {
            complete_mod_other = Some(q);
        }
        witnesses.push(PrimeWitness { q, missing_residue: missing });
    }
    ResidueCheck {
        p,
        complete_mod_p,
        passed: complete_mod_p && complete_mod_other.is_none(),
        witnesses,
        complete_mod_other,
    }
}

impl ResidueSystem {
    pub fn signed_elements(&self) -> Vec<BigInt> {
        self.elements.iter().cloned().map(BigInt::from).collect()
    }

    pub fn check(&self) -> ResidueCheck {
        check_residue_system(&self.signed_elements(), self.p)
    }
}

/// Eisenstein's criterion at `q`: `q` does not divide the leading
/// coefficient, divides every other coefficient, and `q²` does not divide
/// the constant term.
pub fn is_eisenstein(f: &IntPoly, q: u64) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let qb = BigInt::from(q);
    let c = f.coeffs();
    if (&c[n] % &qb).is_zero() {
        return false;
    }
    if !c[..n].iter().all(|a| (a % &qb).is_zero()) {
        return false;
    }
    !(&c[0] % (&qb * &qb)).is_zero()
}

/// Searches primes up to `bound` for one at which `f` is Eisenstein.
pub fn find_eisenstein_prime(f: &IntPoly, bound: u64) -> Option<u64> {
    let n = f.degree()?;
    if n == 0 || f.coeffs()[0].is_zero() {
        return None;
    }
    let g = f.coeffs()[..n].iter().fold(BigInt::zero(), |g, a| g.gcd(a));
    if g.is_one() {
        return None;
    }
    primes_up_to(bound)
        .into_iter()
        .find(|&q| (&g % BigInt::from(q)).is_zero() && is_eisenstein(f, q))
}
