//! Slow, independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::BTreeSet;

use intz::monoid::{enumerate_factorizations, make_element, IvpElement};
use intz::poly::{product, IntPoly};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

/// Gcd of the values of the expanded product at `0..=deg`.
pub fn naive_fixed_divisor(fs: &[&IntPoly]) -> BigUint {
    let f = product(fs.iter().copied());
    let deg = f.degree().unwrap_or(0);
    let mut g = BigInt::zero();
    for c in 0..=deg as i64 {
        g = g.gcd(&f.evaluate(&BigInt::from(c)));
    }
    g.magnitude().clone()
}

pub fn prime_factors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut n = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= n {
        while (&n % &p).is_zero() {
            out.push(p.clone());
            n /= &p;
        }
        p += 1u32;
    }
    if n > BigUint::one() {
        out.push(n);
    }
    out
}

/// All set partitions of `0..n`.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![Vec::new()];
    for i in 0..n {
        let mut next = Vec::new();
        for p in out {
            for b in 0..p.len() {
                let mut q: Vec<Vec<usize>> = p.clone();
                q[b].push(i);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![i]);
            next.push(q);
        }
        out = next;
    }
    out
}

/// A factorization written with polynomials instead of indices.
pub type Shape = (Vec<BigUint>, Vec<(Vec<IntPoly>, BigUint)>);

fn block_irreducible(polys: &[&IntPoly]) -> bool {
    let d = naive_fixed_divisor(polys);
    let k = polys.len();
    for mask in 1..(1u32 << k) - 1 {
        let (s, t): (Vec<&IntPoly>, Vec<&IntPoly>) = {
            let mut s = Vec::new();
            let mut t = Vec::new();
            for (i, p) in polys.iter().enumerate() {
                if mask >> i & 1 == 1 { s.push(*p) } else { t.push(*p) }
            }
            (s, t)
        };
        if naive_fixed_divisor(&s) * naive_fixed_divisor(&t) == d {
            return false;
        }
    }
    true
}

/// Every factorization of `±(a/b)∏ factors`, by trying all set partitions
/// of the factors and all ways to distribute constants.
pub fn naive_factorizations(a: &BigUint, b: &BigUint, factors: &[IntPoly]) -> BTreeSet<Shape> {
    let mut out = BTreeSet::new();
    for partition in set_partitions(factors.len()) {
        let blocks: Vec<Vec<&IntPoly>> = partition.iter().map(|blk| blk.iter().map(|&i| &factors[i]).collect()).collect();
        if !blocks.iter().all(|blk| block_irreducible(blk)) {
            continue;
        }
        let ds: Vec<BigUint> = blocks.iter().map(|blk| naive_fixed_divisor(blk)).collect();
        let total: BigUint = ds.iter().product();
        if !(&total % b).is_zero() {
            continue;
        }
        let mut constants = prime_factors(&(a * (&total / b)));
        constants.sort();
        let mut shape: Vec<(Vec<IntPoly>, BigUint)> = blocks
            .iter()
            .zip(ds)
            .map(|(blk, d)| {
                let mut v: Vec<IntPoly> = blk.iter().map(|p| (*p).clone()).collect();
                v.sort();
                (v, d)
            })
            .collect();
        shape.sort();
        out.insert((constants, shape));
    }
    out
}

pub fn engine_shapes(e: &IvpElement) -> BTreeSet<Shape> {
    enumerate_factorizations(e)
        .unwrap()
        .into_iter()
        .map(|f| {
            let mut blocks: Vec<(Vec<IntPoly>, BigUint)> = f
                .blocks
                .iter()
                .map(|b| {
                    let mut v: Vec<IntPoly> = b.factors.iter().map(|&i| e.factors()[i].clone()).collect();
                    v.sort();
                    (v, b.denominator.clone())
                })
                .collect();
            blocks.sort();
            let mut c = f.constants.clone();
            c.sort();
            (c, blocks)
        })
        .collect()
}

/// `unit·(a/b)·∏(x − r_i)` with 1 to 5 roots in `[-10, 10]`, `b` a random
/// divisor of the numerator's fixed divisor and `a` coprime to `b`.
pub fn random_linear_element<R: Rng>(rng: &mut R) -> IvpElement {
    let k = rng.gen_range(1..=5);
    let factors: Vec<IntPoly> = (0..k).map(|_| IntPoly::linear(&BigInt::from(rng.gen_range(-10..=10)))).collect();
    let refs: Vec<&IntPoly> = factors.iter().collect();
    let d = naive_fixed_divisor(&refs);
    let divisors: Vec<BigUint> = (1u32..=d.clone().try_into().unwrap_or(u32::MAX).min(10_000))
        .map(BigUint::from)
        .filter(|x| (&d % x).is_zero())
        .collect();
    let b = divisors[rng.gen_range(0..divisors.len())].clone();
    let a = loop {
        let a = BigUint::from(rng.gen_range(1u32..=12));
        if a.gcd(&b).is_one() {
            break a;
        }
    };
    let unit = if rng.gen_bool(0.5) { 1 } else { -1 };
    make_element(unit, a, b, factors).unwrap()
}
