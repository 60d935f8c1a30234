//! An irreducible `H` such that `x·H` factors into `n + 1` irreducibles.
//!
//! Let `P = {p_1 < … < p_n}` be the first `n` odd primes and `Q` the primes
//! up to `p_n + n`. Choose integers by the Chinese remainder theorem:
//!
//! * `a_i ≡ 0 (mod p_i)` and `a_i ≡ 1` modulo every other odd prime of `Q`;
//! * `b_k ≡ k (mod p)` for `p ∈ P` with `k < p`, `b_k ≡ 1 (mod p)` for
//!   `k ≥ p`, and `b_k ≡ 1` modulo the odd primes of `Q ∖ P`.
//!
//! Then `b_1, …, b_{p_i - 1}, a_i` is a complete residue system modulo
//! `p_i`, and `f = ∏(x − b_k)` is lifted to an Eisenstein `F`. The element is
//! `H = F·∏(x − a_i) / (p_1⋯p_n)` and `x·H = (x·F / p_1⋯p_n)·∏(x − a_i)`.
//!
//! Modulo 2 all `a_i` and `b_k` are taken even. If they were all odd, every
//! value of `x·F` would be even, so the constant 2 would split off
//! `x·F / p_1⋯p_n`. [`Parity::Odd`] keeps that variant for comparison.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::congruence::{crt_u64, primes_up_to};
use crate::error::Result;
use crate::lift::{lift_family, verify_lift, LiftCertificate};
use crate::monoid::{is_irreducible, is_member, length_profile, make_element, IvpElement, LengthProfile};
use crate::poly::{from_roots, product, IntPoly, RationalPoly};
use crate::report::Checklist;

/// Residue of every `a_i` and `b_k` modulo 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

/// `(∏ numerator_factors) / denominator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimedFactor {
    pub numerator_factors: Vec<IntPoly>,
    #[serde(with = "crate::serde_dec")]
    pub denominator: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XMultipleCertificate {
    pub n: usize,
    pub parity: Parity,
    #[serde(rename = "P")]
    pub odd_primes: Vec<u64>,
    #[serde(rename = "Q")]
    pub all_primes: Vec<u64>,
    #[serde(with = "crate::serde_dec::vec")]
    pub a_values: Vec<BigInt>,
    #[serde(with = "crate::serde_dec::vec")]
    pub b_values: Vec<BigInt>,
    pub f: IntPoly,
    pub lift: LiftCertificate,
    #[serde(rename = "H")]
    pub element: IvpElement,
    /// Factors of `x·H`.
    pub claimed_factorization: Vec<ClaimedFactor>,
}

fn first_odd_primes(n: usize) -> Vec<u64> {
    let mut bound = 8u64;
    loop {
        let ps: Vec<u64> = primes_up_to(bound).into_iter().filter(|&p| p != 2).take(n).collect();
        if ps.len() == n {
            return ps;
        }
        bound *= 2;
    }
}

struct Choice {
    odd_primes: Vec<u64>,
    all_primes: Vec<u64>,
    a: Vec<BigInt>,
    b: Vec<BigInt>,
}

fn choose_values(n: usize, parity: Parity) -> Result<Choice> {
    let p_set = first_odd_primes(n);
    let pn = *p_set.last().expect("n ≥ 1");
    let q_set = primes_up_to(pn + n as u64);
    let two = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let modulus: BigUint = q_set.iter().map(|&q| BigUint::from(q)).product();
    let modulus = BigInt::from(modulus);

    let mut seen: HashSet<BigInt> = HashSet::new();
    let mut distinct = |v: BigUint| {
        let mut v = BigInt::from(v);
        while !seen.insert(v.clone()) {
            v += &modulus;
        }
        v
    };
    let mut a = Vec::with_capacity(n);
    for &pi in &p_set {
        let pairs: Vec<(i64, u64)> = q_set
            .iter()
            .map(|&q| match q {
                2 => (two, 2),
                _ if q == pi => (0, q),
                _ => (1, q),
            })
            .collect();
        a.push(distinct(crt_u64(&pairs)?));
    }
    let mut b = Vec::with_capacity(pn as usize);
    for k in 1..=pn {
        let pairs: Vec<(i64, u64)> = q_set
            .iter()
            .map(|&q| match q {
                2 => (two, 2),
                _ if p_set.contains(&q) && k < q => (k as i64, q),
                _ => (1, q),
            })
            .collect();
        b.push(distinct(crt_u64(&pairs)?));
    }
    Ok(Choice { odd_primes: p_set, all_primes: q_set, a, b })
}

/// Lift family: `f`, the linear factors `x − a_i`, and `x` itself unless
/// some `a_i` is 0, so the lift modulus covers the degree of `x·H`.
fn lift_members(f: &IntPoly, a: &[BigInt]) -> Vec<IntPoly> {
    let mut fam = vec![f.clone()];
    fam.extend(a.iter().map(IntPoly::linear));
    if !a.iter().any(Zero::is_zero) {
        fam.push(IntPoly::x());
    }
    fam
}

pub fn construct_x_multiple(n: usize, parity: Parity) -> Result<XMultipleCertificate> {
    if n == 0 {
        return Err(crate::Error::InvalidArgument("n must be at least 1".into()));
    }
    let Choice { odd_primes, all_primes, a: a_values, b: b_values } = choose_values(n, parity)?;
    let f = from_roots(&b_values);
    let lift = lift_family(&lift_members(&f, &a_values))?;
    let pprod: BigUint = odd_primes.iter().map(|&p| BigUint::from(p)).product();
    let mut factors = vec![lift.lifted[0].clone()];
    factors.extend(a_values.iter().map(IntPoly::linear));
    let element = make_element(1, BigUint::one(), pprod.clone(), factors)?;
    let mut claimed = vec![ClaimedFactor { numerator_factors: vec![IntPoly::x(), lift.lifted[0].clone()], denominator: pprod }];
    claimed.extend(
        a_values
            .iter()
            .map(|a| ClaimedFactor { numerator_factors: vec![IntPoly::linear(a)], denominator: BigUint::one() }),
    );
    Ok(XMultipleCertificate {
        n,
        parity,
        odd_primes,
        all_primes,
        a_values,
        b_values,
        f,
        lift,
        element,
        claimed_factorization: claimed,
    })
}

fn residue(v: &BigInt, q: u64) -> u64 {
    let r = v % BigInt::from(q);
    let r = if r < BigInt::zero() { r + BigInt::from(q) } else { r };
    u64::try_from(r).expect("reduced residue")
}

impl XMultipleCertificate {
    fn check_congruences(&self) -> std::result::Result<(), String> {
        let pn = *self.odd_primes.last().ok_or("empty P")?;
        if self.a_values.len() != self.n || self.b_values.len() as u64 != pn {
            return Err(format!("expected {} a-values and {pn} b-values", self.n));
        }
        for q in self.all_primes.iter().copied().filter(|&q| q != 2) {
            let in_p = self.odd_primes.contains(&q);
            for (i, a) in self.a_values.iter().enumerate() {
                let want = if self.odd_primes[i] == q { 0 } else { 1 };
                if residue(a, q) != want {
                    return Err(format!("a_{} ≢ {want} mod {q}", i + 1));
                }
            }
            for (k, b) in (1u64..).zip(&self.b_values) {
                let want = if in_p && k < q { k } else { 1 };
                if residue(b, q) != want {
                    return Err(format!("b_{k} ≢ {want} mod {q}"));
                }
            }
        }
        Ok(())
    }

    pub(super) fn verify(&self, budget: usize, report: &mut Checklist) -> Option<LengthProfile> {
        let n = self.n;
        if !report.push("parameters", n >= 1 && self.odd_primes == first_odd_primes(n), format!("n = {n}, P = {:?}", self.odd_primes)) {
            return None;
        }
        let pn = self.odd_primes[n - 1];
        report.push(
            "primes",
            self.all_primes == primes_up_to(pn + n as u64),
            format!("Q = primes up to {}", pn + n as u64),
        );
        let congruences = self.check_congruences();
        if !report.push("congruences", congruences.is_ok(), congruences.err().unwrap_or_else(|| "all odd-prime congruences hold".into())) {
            return None;
        }
        let all: HashSet<&BigInt> = self.a_values.iter().chain(&self.b_values).collect();
        report.push(
            "distinct",
            all.len() == self.a_values.len() + self.b_values.len(),
            "a and b values pairwise distinct",
        );
        report.push("factors.f", self.f == from_roots(&self.b_values), "f = ∏(x − b_k)");
        report.push(
            "lift.family",
            self.lift.family == lift_members(&self.f, &self.a_values),
            "lift family is f, the x − a_i, and x",
        );
        report.extend_prefixed("", verify_lift(&self.lift, budget));

        let pprod: BigUint = self.odd_primes.iter().map(|&p| BigUint::from(p)).product();
        let mut h_factors = vec![self.lift.lifted.first().cloned().unwrap_or_default()];
        h_factors.extend(self.a_values.iter().map(IntPoly::linear));
        report.push(
            "element.factors",
            self.element.factors() == h_factors.as_slice() && self.element.denominator() == &pprod,
            "H = F·∏(x − a_i) / ∏P",
        );
        let member = is_member(&self.element.to_rational()).map(|(ok, _)| ok).unwrap_or(false);
        report.push("element.membership", member, "H is integer-valued");
        let d = self.element.numerator_fixed_divisor();
        report.push("element.fixed_divisor", d == pprod, format!("d(F·∏(x − a_i)) = {d}, ∏P = {pprod}"));
        match is_irreducible(&self.element) {
            Ok((ok, w)) => report.push("element.irreducible", ok, format!("{w:?}")),
            Err(e) => report.push("element.irreducible", false, e.to_string()),
        };

        // x·H equals the product of the claimed factors
        let x_h = &RationalPoly::from(IntPoly::x()) * &self.element.to_rational();
        let claimed = self.claimed_factorization.iter().fold(RationalPoly::from(IntPoly::one()), |acc, g| {
            &acc * &RationalPoly::new(product(&g.numerator_factors), g.denominator.clone())
        });
        report.push(
            "claimed.product",
            claimed == x_h,
            format!("x·H = product of {} claimed factors", self.claimed_factorization.len()),
        );
        report.push(
            "claimed.length",
            self.claimed_factorization.len() == n + 1,
            format!("{} claimed factors, expected {}", self.claimed_factorization.len(), n + 1),
        );
        for (idx, g) in self.claimed_factorization.iter().enumerate() {
            let check = format!("claimed.irreducible[{idx}]");
            match make_element(1, BigUint::one(), g.denominator.clone(), g.numerator_factors.clone())
                .and_then(|e| is_irreducible(&e))
            {
                Ok((ok, w)) => report.push(check, ok, format!("{w:?}")),
                Err(e) => report.push(check, false, e.to_string()),
            };
        }

        let mut xh_factors = vec![IntPoly::x()];
        xh_factors.extend(h_factors);
        let profile = make_element(1, BigUint::one(), pprod, xh_factors).and_then(|e| length_profile(&e));
        match profile {
            Ok(profile) => {
                report.push(
                    "enumeration.contains",
                    profile.length_set.contains(&(n + 1)),
                    format!("L(x·H) = {:?}", profile.length_set),
                );
                Some(profile)
            }
            Err(e) => {
                report.push("enumeration.contains", false, e.to_string());
                None
            }
        }
    }
}
