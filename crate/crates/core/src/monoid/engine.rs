use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::table::{Exponents, ValuationTable};
use super::{Block, Factorization, IvpElement, LengthProfile};
use crate::congruence::{factor_trial, is_prime, TRIAL_LIMIT};
use crate::error::{Error, Result};
use crate::fixed_divisor::fixed_divisor_of_product;
use crate::poly::IntPoly;

pub const DEFAULT_ENUMERATION_BOUND: usize = 16;

#[derive(Clone, Copy, Debug)]
pub struct EnumerationConfig {
    /// Largest number of polynomial factors accepted.
    pub max_factors: usize,
    /// Accept factors whose irreducibility is only asserted.
    pub allow_asserted: bool,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        Self { max_factors: DEFAULT_ENUMERATION_BOUND, allow_asserted: false }
    }
}

impl EnumerationConfig {
    fn check(&self, e: &IvpElement) -> Result<()> {
        let bound = self.max_factors.min(63);
        if e.factors().len() > bound {
            return Err(Error::EnumerationBound { factors: e.factors().len(), bound });
        }
        if !self.allow_asserted {
            if let Some(index) = e.first_untrusted() {
                return Err(Error::UntrustedFactor { index });
            }
        }
        Ok(())
    }
}

pub(crate) fn class_ids(factors: &[IntPoly]) -> Vec<usize> {
    (0..factors.len())
        .map(|i| factors.iter().position(|g| g == &factors[i]).unwrap())
        .collect()
}

/// Why an element is or is not irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum IrreducibilityWitness {
    Irreducible,
    Unit,
    /// A constant whose absolute value is not prime.
    CompositeConstant {
        #[serde(with = "crate::serde_dec")]
        a: BigUint,
    },
    /// Non-constant element with a constant factor `a > 1` in front.
    NumeratorConstant {
        #[serde(with = "crate::serde_dec")]
        a: BigUint,
    },
    /// `b < d(∏ g_i)`, so `d/b` splits off as a constant.
    DenominatorBelowFixedDivisor {
        #[serde(with = "crate::serde_dec")]
        b: BigUint,
        #[serde(with = "crate::serde_dec")]
        fixed_divisor: BigUint,
    },
    /// `d(∏_J) · d(∏_{I∖J}) = b` for this proper sub-multiset `J`.
    Split {
        subset: Vec<usize>,
        #[serde(with = "crate::serde_dec")]
        subset_fixed_divisor: BigUint,
        #[serde(with = "crate::serde_dec")]
        complement_fixed_divisor: BigUint,
    },
}

struct Engine {
    table: ValuationTable,
    all: u64,
    dcache: RwLock<HashMap<u64, Exponents>>,
    icache: RwLock<HashMap<u64, Option<u64>>>,
}

fn le(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn add(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Iterates all submasks of `mask`, including `mask` itself and 0.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = (cur != 0).then(|| (cur - 1) & mask);
        Some(cur)
    })
}

impl Engine {
    fn new(element: &IvpElement) -> Self {
        let n = element.factors().len();
        Self {
            table: ValuationTable::new(element.factors()),
            all: if n == 0 { 0 } else { u64::MAX >> (64 - n) },
            dcache: RwLock::new(HashMap::new()),
            icache: RwLock::new(HashMap::new()),
        }
    }

    fn d(&self, mask: u64) -> Exponents {
        if let Some(e) = self.dcache.read().unwrap().get(&mask) {
            return e.clone();
        }
        let e = self.table.exponents(mask);
        self.dcache.write().unwrap().insert(mask, e.clone());
        e
    }

    /// A splitting sub-multiset of `block`, or `None` if the block (with its
    /// full fixed divisor as denominator) is irreducible.
    fn split_of(&self, block: u64) -> Option<u64> {
        if let Some(&w) = self.icache.read().unwrap().get(&block) {
            return w;
        }
        let witness = self.split_with_target(block, &self.d(block));
        self.icache.write().unwrap().insert(block, witness);
        witness
    }

    /// A proper sub-multiset `J` of `block` with `d(J) · d(block ∖ J) = target`.
    fn split_with_target(&self, block: u64, target: &[u32]) -> Option<u64> {
        let low = block & block.wrapping_neg();
        let rest = block & !low;
        // J always contains the lowest member; its complement covers the rest
        submasks(rest)
            .map(|s| s | low)
            .filter(|&j| j != block)
            .find(|&j| add(&self.d(j), &self.d(block & !j)) == target)
    }

    fn partitions(&self, target: &Exponents) -> Vec<Vec<u64>> {
        let free = self.all;
        if free == 0 {
            return if target.iter().all(|&e| e == 0) { vec![Vec::new()] } else { Vec::new() };
        }
        let low = free & free.wrapping_neg();
        let rest = free & !low;
        let zero = vec![0; target.len()];
        let firsts: Vec<u64> = submasks(rest).map(|s| s | low).collect();
        firsts
            .par_iter()
            .flat_map_iter(|&block| {
                let mut out = Vec::new();
                let mut stack = Vec::new();
                self.place(block, free, &zero, target, &mut stack, &mut out);
                out
            })
            .collect()
    }

    /// Tries `block` as the block containing the lowest free factor.
    fn place(
        &self,
        block: u64,
        free: u64,
        acc: &[u32],
        target: &[u32],
        stack: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        let next = add(acc, &self.d(block));
        if !le(&next, target) {
            return;
        }
        let remaining = free & !block;
        let need = sub(target, &next);
        if remaining == 0 {
            if need.iter().any(|&e| e != 0) {
                return;
            }
        } else {
            // ∏ d(blocks of the rest) divides d(rest)
            let dr = self.d(remaining);
            debug_assert!(le(&dr, &self.d(self.all)));
            if !le(&need, &dr) {
                return;
            }
        }
        if self.split_of(block).is_some() {
            return;
        }
        stack.push(block);
        if remaining == 0 {
            out.push(stack.clone());
        } else {
            let low = remaining & remaining.wrapping_neg();
            let rest = remaining & !low;
            for s in submasks(rest) {
                self.place(s | low, remaining, &next, target, stack, out);
            }
        }
        stack.pop();
    }
}

fn prime_list(n: &BigUint) -> Result<Vec<BigUint>> {
    Ok(factor_trial(n, TRIAL_LIMIT)?
        .into_iter()
        .flat_map(|(p, e)| std::iter::repeat_n(p, e as usize))
        .collect())
}

fn mask_indices(mask: u64, classes: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = (0..classes.len()).filter(|&i| mask >> i & 1 == 1).map(|i| classes[i]).collect();
    v.sort_unstable();
    v
}

/// Decides irreducibility in `Int(Z)`, refusing elements with factors whose
/// `Z[x]`-irreducibility is not certified.
pub fn is_irreducible(e: &IvpElement) -> Result<(bool, IrreducibilityWitness)> {
    is_irreducible_with(e, &EnumerationConfig::default())
}

pub fn is_irreducible_with(e: &IvpElement, cfg: &EnumerationConfig) -> Result<(bool, IrreducibilityWitness)> {
    use IrreducibilityWitness as W;
    let a = e.num_constant();
    if e.is_constant() {
        if a.is_one() {
            return Ok((false, W::Unit));
        }
        let primes = prime_list(a)?;
        return Ok(if primes.len() == 1 && e.denominator().is_one() {
            (true, W::Irreducible)
        } else {
            (false, W::CompositeConstant { a: a.clone() })
        });
    }
    cfg.check(e)?;
    if !a.is_one() {
        return Ok((false, W::NumeratorConstant { a: a.clone() }));
    }
    let engine = Engine::new(e);
    let b = engine
        .table
        .exponents_of(e.denominator())
        .expect("denominator divides the fixed divisor");
    let split = engine.split_with_target(engine.all, &b);
    let d = e.numerator_fixed_divisor();
    Ok(match split {
        None if &d != e.denominator() => {
            (false, W::DenominatorBelowFixedDivisor { b: e.denominator().clone(), fixed_divisor: d })
        }
        None => (true, W::Irreducible),
        Some(j) => {
            let t = &engine.table;
            (
                false,
                W::Split {
                    subset: (0..e.factors().len()).filter(|&i| j >> i & 1 == 1).collect(),
                    subset_fixed_divisor: t.value_of(&engine.d(j)),
                    complement_fixed_divisor: t.value_of(&engine.d(engine.all & !j)),
                },
            )
        }
    })
}

/// Residues mod `p` at which `f` vanishes, as a bitset.
fn zero_set(f: &IntPoly, p: u64) -> Vec<u64> {
    let pb = num_bigint::BigInt::from(p);
    let coeffs: Vec<u128> = f
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&pb).to_u128().unwrap())
        .collect();
    let mut bits = vec![0u64; (p as usize).div_ceil(64)];
    for r in 0..p as u128 {
        let v = coeffs.iter().rev().fold(0u128, |acc, &c| (acc * r + c) % p as u128);
        if v == 0 {
            bits[(r / 64) as usize] |= 1 << (r % 64);
        }
    }
    bits
}

struct CoverSearch<'a> {
    sets: &'a [Vec<u64>],
    suffix: Vec<Vec<u64>>,
    full: Vec<u64>,
    found: Vec<Vec<usize>>,
}

fn union(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x | y).collect()
}

impl CoverSearch<'_> {
    fn run(&mut self, idx: usize, covered: &[u64], chosen: &mut Vec<usize>) {
        if covered == self.full.as_slice() {
            let minimal = chosen.iter().all(|&skip| {
                let rest = chosen
                    .iter()
                    .filter(|&&j| j != skip)
                    .fold(vec![0; self.full.len()], |acc, &j| union(&acc, &self.sets[j]));
                rest != self.full
            });
            if minimal {
                self.found.push(chosen.clone());
            }
            return;
        }
        if idx == self.sets.len() || union(covered, &self.suffix[idx]) != self.full {
            return;
        }
        let with = union(covered, &self.sets[idx]);
        if with.as_slice() != covered {
            chosen.push(idx);
            self.run(idx + 1, &with, chosen);
            chosen.pop();
        }
        self.run(idx + 1, covered, chosen);
    }
}

/// All inclusion-minimal sub-multisets `J` of `factors` with
/// `d(∏_J) = p`, given `d(∏ factors) = p`.
///
/// Since `d(∏_J)` divides `p`, it equals `p` exactly when the roots of the
/// chosen factors modulo `p` cover every residue class, which turns the
/// search into a minimal-cover enumeration. Returned sub-multisets use
/// class ids (first index of each distinct factor), sorted.
pub fn minimal_p_subsets(factors: &[IntPoly], p: u64) -> Result<Vec<Vec<usize>>> {
    let refs: Vec<&IntPoly> = factors.iter().collect();
    let d = fixed_divisor_of_product(&refs)?;
    if d != BigUint::from(p) || !is_prime(p) {
        return Err(Error::NotPrimeFixedDivisor { expected: BigUint::from(p), actual: d });
    }
    let sets: Vec<Vec<u64>> = factors.iter().map(|f| zero_set(f, p)).collect();
    let words = (p as usize).div_ceil(64);
    let mut full = vec![u64::MAX; words];
    if !p.is_multiple_of(64) {
        full[words - 1] = (1u64 << (p % 64)) - 1;
    }
    let mut suffix = vec![vec![0u64; words]; factors.len() + 1];
    for i in (0..factors.len()).rev() {
        suffix[i] = union(&suffix[i + 1], &sets[i]);
    }
    let mut search = CoverSearch { sets: &sets, suffix, full, found: Vec::new() };
    search.run(0, &vec![0; words], &mut Vec::new());

    let classes = class_ids(factors);
    let mut out: Vec<Vec<usize>> = search
        .found
        .into_iter()
        .map(|j| {
            let sub: Vec<&IntPoly> = j.iter().map(|&i| &factors[i]).collect();
            let dj = fixed_divisor_of_product(&sub).expect("nonzero factors");
            assert_eq!(dj, BigUint::from(p), "cover search disagrees with the fixed divisor");
            let mut ids: Vec<usize> = j.iter().map(|&i| classes[i]).collect();
            ids.sort_unstable();
            ids
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn enumerate_factorizations(e: &IvpElement) -> Result<Vec<Factorization>> {
    enumerate_factorizations_with(e, &EnumerationConfig::default())
}

/// All essentially different factorizations of `e` into irreducibles,
/// sorted by length, then constants, then blocks.
pub fn enumerate_factorizations_with(e: &IvpElement, cfg: &EnumerationConfig) -> Result<Vec<Factorization>> {
    let a = e.num_constant();
    if e.is_constant() {
        if a.is_one() {
            return Err(Error::Unit);
        }
        return Ok(vec![Factorization { unit: e.unit(), constants: prime_list(a)?, blocks: Vec::new() }]);
    }
    cfg.check(e)?;
    let b = e.denominator();
    if a.is_one() {
        if let Some(p) = b.to_u64().filter(|&p| is_prime(p)) {
            if &e.numerator_fixed_divisor() == b {
                return lemma_fast_path(e, p);
            }
        }
    }
    general_enumeration(e)
}

/// `a = 1`, `b = p = d(∏ g_i)`: one block `J/p` for every minimal `J`,
/// every other factor alone.
fn lemma_fast_path(e: &IvpElement, p: u64) -> Result<Vec<Factorization>> {
    let factors = e.factors();
    let classes = class_ids(factors);
    let mut singles_d: BTreeMap<usize, BigUint> = BTreeMap::new();
    for &c in &classes {
        singles_d
            .entry(c)
            .or_insert_with(|| fixed_divisor_of_product(&[&factors[c]]).expect("nonzero"));
    }
    let mut out = Vec::new();
    for j in minimal_p_subsets(factors, p)? {
        let mut remaining = classes.clone();
        for id in &j {
            let pos = remaining.iter().position(|x| x == id).unwrap();
            remaining.swap_remove(pos);
        }
        let mut blocks = vec![Block { factors: j, denominator: BigUint::from(p) }];
        for id in remaining {
            debug_assert!(singles_d[&id].is_one());
            blocks.push(Block { factors: vec![id], denominator: singles_d[&id].clone() });
        }
        let mut f = Factorization { unit: e.unit(), constants: Vec::new(), blocks };
        f.canonicalize();
        out.push(f);
    }
    sort_factorizations(&mut out);
    Ok(out)
}

fn general_enumeration(e: &IvpElement) -> Result<Vec<Factorization>> {
    let engine = Engine::new(e);
    let t = &engine.table;
    let total = engine.d(engine.all);
    let b = t
        .exponents_of(e.denominator())
        .filter(|b| le(b, &total))
        .ok_or_else(|| Error::NotMember { b: e.denominator().clone(), fixed_divisor: t.value_of(&total) })?;
    let quotient = sub(&total, &b);

    // every exponent vector c ≤ quotient
    let mut divisors: Vec<Exponents> = vec![Vec::new()];
    for &q in &quotient {
        divisors = divisors
            .into_iter()
            .flat_map(|prefix| {
                (0..=q).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }

    let a_primes = prime_list(e.num_constant())?;
    let classes = class_ids(e.factors());
    let mut seen: BTreeMap<(Vec<BigUint>, Vec<Block>), ()> = BTreeMap::new();
    for c in &divisors {
        let target = add(&b, c);
        let mut constants = a_primes.clone();
        for (&p, &k) in t.primes().iter().zip(c) {
            constants.extend(std::iter::repeat_n(BigUint::from(p), k as usize));
        }
        for partition in engine.partitions(&target) {
            let mut f = Factorization {
                unit: e.unit(),
                constants: constants.clone(),
                blocks: partition
                    .iter()
                    .map(|&m| Block { factors: mask_indices(m, &classes), denominator: t.value_of(&engine.d(m)) })
                    .collect(),
            };
            f.canonicalize();
            seen.insert((f.constants, f.blocks), ());
        }
    }
    let mut out: Vec<Factorization> = seen
        .into_keys()
        .map(|(constants, blocks)| Factorization { unit: e.unit(), constants, blocks })
        .collect();
    sort_factorizations(&mut out);
    Ok(out)
}

fn sort_factorizations(fs: &mut [Factorization]) {
    fs.sort_by(|x, y| {
        (x.length(), &x.constants, &x.blocks).cmp(&(y.length(), &y.constants, &y.blocks))
    });
}

pub fn length_profile(e: &IvpElement) -> Result<LengthProfile> {
    length_profile_with(e, &EnumerationConfig::default())
}

pub fn length_profile_with(e: &IvpElement, cfg: &EnumerationConfig) -> Result<LengthProfile> {
    let fs = enumerate_factorizations_with(e, cfg)?;
    Ok(LengthProfile::from_lengths(fs.iter().map(Factorization::length).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{essentially_equal, make_element};
    use crate::poly::parse_poly;
    use num_rational::Ratio;

    fn p(s: &str) -> IntPoly {
        parse_poly(s).unwrap()
    }

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn elem(b: u64, fs: &[&str]) -> IvpElement {
        make_element(1, n(1), n(b), fs.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn submask_iteration() {
        let mut v: Vec<u64> = submasks(0b101).collect();
        v.sort();
        assert_eq!(v, vec![0, 1, 4, 5]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn irreducibility_examples() {
        assert_eq!(is_irreducible(&elem(2, &["x", "x-1"])).unwrap(), (true, IrreducibilityWitness::Irreducible));

        let (irr, w) = is_irreducible(&elem(2, &["x", "x-1", "x-2"])).unwrap();
        assert!(!irr);
        assert_eq!(
            w,
            IrreducibilityWitness::Split {
                subset: vec![0, 1],
                subset_fixed_divisor: n(2),
                complement_fixed_divisor: n(1)
            }
        );
        // b below the fixed divisor with no split reaching b
        let (irr, w) = is_irreducible(&elem(1, &["x^2+3x+6"])).unwrap();
        assert!(!irr);
        assert!(matches!(w, IrreducibilityWitness::DenominatorBelowFixedDivisor { .. }));

        assert!(is_irreducible(&elem(6, &["x", "x-1", "x-2"])).unwrap().0);

        let e = elem(2, &["x", "x-1", "x-3"]);
        let (irr, w) = is_irreducible(&e).unwrap();
        assert!(!irr);
        match w {
            IrreducibilityWitness::Split { subset_fixed_divisor, complement_fixed_divisor, .. } => {
                assert_eq!(subset_fixed_divisor * complement_fixed_divisor, n(2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn irreducibility_constants() {
        let c = |a: u64| make_element(1, n(a), n(1), vec![]).unwrap();
        assert!(is_irreducible(&c(7)).unwrap().0);
        assert!(!is_irreducible(&c(12)).unwrap().0);
        assert_eq!(is_irreducible(&c(1)).unwrap(), (false, IrreducibilityWitness::Unit));
        let e = make_element(1, n(3), n(1), vec![p("x")]).unwrap();
        assert!(matches!(is_irreducible(&e).unwrap().1, IrreducibilityWitness::NumeratorConstant { .. }));
    }

    #[test]
    fn untrusted_factors_refused() {
        let e = elem(1, &["x^2+1"]);
        assert!(matches!(is_irreducible(&e), Err(Error::UntrustedFactor { index: 0 })));
        assert!(matches!(enumerate_factorizations(&e), Err(Error::UntrustedFactor { index: 0 })));
        let cfg = EnumerationConfig { allow_asserted: true, ..Default::default() };
        assert_eq!(enumerate_factorizations_with(&e, &cfg).unwrap().len(), 1);
    }

    #[test]
    fn minimal_subset_examples() {
        let fs = |v: &[&str]| v.iter().map(|s| p(s)).collect::<Vec<_>>();
        assert_eq!(minimal_p_subsets(&fs(&["x", "x-1", "x-3"]), 2).unwrap(), vec![vec![0, 1], vec![0, 2]]);
        assert_eq!(minimal_p_subsets(&fs(&["x", "x-1"]), 2).unwrap(), vec![vec![0, 1]]);
        assert!(matches!(
            minimal_p_subsets(&fs(&["x", "x-2"]), 2),
            Err(Error::NotPrimeFixedDivisor { .. })
        ));
        // repeated factor: {x, x-1} found twice, reported once
        assert_eq!(minimal_p_subsets(&fs(&["x", "x", "x-1"]), 2).unwrap(), vec![vec![0, 2]]);
    }

    #[test]
    fn enumeration_examples() {
        let fs = enumerate_factorizations(&elem(2, &["x", "x-1"])).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].length(), 1);

        let e = elem(2, &["x", "x-1", "x-2"]);
        let fs = enumerate_factorizations(&e).unwrap();
        assert_eq!(fs.len(), 3);
        assert!(fs.iter().all(|f| f.length() == 2));
        let with_three: Vec<_> = fs.iter().filter(|f| f.constants == vec![n(3)]).collect();
        assert_eq!(with_three.len(), 1);
        assert_eq!(with_three[0].blocks, vec![Block { factors: vec![0, 1, 2], denominator: n(6) }]);
        for f in &fs {
            assert_eq!(f.expand(&e), e.to_rational());
        }

        let twelve = make_element(-1, n(12), n(1), vec![]).unwrap();
        let fs = enumerate_factorizations(&twelve).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].constants, vec![n(2), n(2), n(3)]);
        assert_eq!(fs[0].unit, -1);

        let one = make_element(1, n(1), n(1), vec![]).unwrap();
        assert_eq!(enumerate_factorizations(&one), Err(Error::Unit));
    }

    #[test]
    fn repeated_factors_are_deduplicated() {
        // x·x·(x-1)/2: {x, x-1}/2 · x, and x·x·(x-1) can also take 2 out as constant?
        // d(x^2(x-1)) = 2, so b = 2 leaves c = 1 only.
        let e = elem(2, &["x", "x", "x-1"]);
        let fs = enumerate_factorizations(&e).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].blocks.len(), 2);
        for f in &fs {
            assert_eq!(f.expand(&e), e.to_rational());
        }
    }

    #[test]
    fn fast_path_matches_general() {
        for fs in [
            vec!["x", "x-1", "x-3"],
            vec!["x", "x-1", "x-3", "x-5", "x-2"],
            vec!["x", "x-1", "x-2", "x-4", "x-5", "x-8"],
        ] {
            let polys: Vec<IntPoly> = fs.iter().map(|s| p(s)).collect();
            let refs: Vec<&IntPoly> = polys.iter().collect();
            let d = fixed_divisor_of_product(&refs).unwrap();
            let Some(q) = d.to_u64().filter(|&q| is_prime(q)) else { continue };
            let e = make_element(1, n(1), n(q), polys).unwrap();
            let fast = lemma_fast_path(&e, q).unwrap();
            let general = general_enumeration(&e).unwrap();
            assert_eq!(fast.len(), general.len());
            for (x, y) in fast.iter().zip(&general) {
                assert!(essentially_equal(x, y));
            }
        }
    }

    #[test]
    fn profile_examples() {
        let lp = length_profile(&elem(2, &["x", "x-1", "x-2"])).unwrap();
        assert_eq!(lp.lengths, vec![2, 2, 2]);
        assert_eq!(lp.elasticity, Ratio::from_integer(1));
        let lp = length_profile(&elem(2, &["x", "x-1"])).unwrap();
        assert_eq!(lp.lengths, vec![1]);
    }

    #[test]
    fn irreducible_iff_singleton_lengths() {
        for (b, fs) in [
            (2, vec!["x", "x-1"]),
            (6, vec!["x", "x-1", "x-2"]),
            (2, vec!["x", "x-1", "x-2"]),
            (1, vec!["x", "x^2+2"]),
            (2, vec!["x^2+3x+6"]),
            (1, vec!["x^2+3x+6"]),
        ] {
            let e = elem(b, &fs);
            let irr = is_irreducible(&e).unwrap().0;
            let lp = length_profile(&e).unwrap();
            assert_eq!(irr, lp.lengths == vec![1], "{e}");
        }
    }

    #[test]
    fn bound_is_enforced() {
        let fs: Vec<String> = (0..17).map(|k| format!("x-{}", 2 * k)).collect();
        let refs: Vec<&str> = fs.iter().map(String::as_str).collect();
        let e = elem(1, &refs);
        assert!(matches!(enumerate_factorizations(&e), Err(Error::EnumerationBound { factors: 17, bound: 16 })));
    }
}
