//! Elements whose factorizations have exactly a prescribed multiset of
//! lengths `{m_1 + 1, …, m_n + 1}`.
//!
//! Let `N = (Σm_i)² − Σm_i²`, `p > N` prime and `s = p − N`. The smallest
//! `s` residues become linear roots `t_1, …, t_s`; the other `N` fill a
//! matrix `r(k,h,i,j)` indexed by `1 ≤ k ≤ n, 1 ≤ h ≤ m_k, i ≠ k,
//! 1 ≤ j ≤ m_i`. Row `(k,h)` collects the entries with that first index
//! pair and column `(k,h)` those with that second index pair; their union
//! gives the roots of `f^(k)_h`. Every residue then lies in exactly two of
//! the `f`'s, both in different groups `k`, so a set of `f`'s covers all
//! residues iff it contains every `f^(k)_h` for all but one `k`. That gives
//! `n` factorizations, of lengths `m_i + 1`.
//!
//! A single length `L` uses `∏_{j<L}(x − 1 − j·M₀)` with `M₀` the product of
//! the primes up to `L`; its fixed divisor is 1, so the linear factors are
//! its only factorization.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{linear_factors, signed, verify_element, Certificate, LiftedProduct};
use crate::congruence::{next_prime, primes_up_to, safe_residue_system, ResidueSystem};
use crate::error::{Error, Result};
use crate::monoid::{make_element, minimal_p_subsets, IvpElement, LengthProfile};
use crate::poly::{from_roots, IntPoly};
use crate::report::Checklist;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub k: usize,
    pub h: usize,
    pub i: usize,
    pub j: usize,
    #[serde(with = "crate::serde_dec")]
    pub residue: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrescribedLengthsCertificate {
    /// Target lengths minus one, ascending.
    pub m: Vec<usize>,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub p: u64,
    pub s: u64,
    pub residue_system: ResidueSystem,
    pub r0_matrix: Vec<MatrixEntry>,
    #[serde(with = "crate::serde_dec::vec")]
    pub linear_roots: Vec<BigInt>,
    /// `f^(k)_h` in lexicographic `(k, h)` order.
    pub row_column_factors: Vec<IntPoly>,
    #[serde(flatten)]
    pub product: LiftedProduct,
    pub expected_lengths: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniqueLengthCertificate {
    pub length: usize,
    /// Product of the primes up to `length`.
    #[serde(with = "crate::serde_dec")]
    pub modulus: BigUint,
    #[serde(with = "crate::serde_dec::vec")]
    pub roots: Vec<BigInt>,
    pub element: IvpElement,
    pub expected_lengths: Vec<usize>,
}

fn matrix_size(m: &[usize]) -> u64 {
    let total: usize = m.iter().sum();
    (total * total - m.iter().map(|x| x * x).sum::<usize>()) as u64
}

/// `(k, h)` pairs in lexicographic order, 1-based.
fn groups(m: &[usize]) -> Vec<(usize, usize)> {
    m.iter().enumerate().flat_map(|(k, &mk)| (1..=mk).map(move |h| (k + 1, h))).collect()
}

struct Layout {
    linear_roots: Vec<BigInt>,
    matrix: Vec<MatrixEntry>,
    factors: Vec<IntPoly>,
    family: Vec<IntPoly>,
}

fn layout(m: &[usize], s: usize, residues: &ResidueSystem) -> Layout {
    let mut sorted = signed(&residues.elements);
    sorted.sort();
    let linear_roots = sorted[..s].to_vec();
    let mut rest = sorted[s..].iter();
    let mut matrix = Vec::new();
    for &(k, h) in &groups(m) {
        for (i, j) in groups(m).into_iter().filter(|&(i, _)| i != k) {
            let residue = rest.next().expect("N residues for N entries").clone();
            matrix.push(MatrixEntry { k, h, i, j, residue });
        }
    }
    let factors: Vec<IntPoly> = groups(m)
        .into_iter()
        .map(|(k, h)| {
            let roots: Vec<BigInt> = matrix
                .iter()
                .filter(|e| (e.k, e.h) == (k, h) || (e.i, e.j) == (k, h))
                .map(|e| e.residue.clone())
                .collect();
            from_roots(&roots)
        })
        .collect();
    let mut family = factors.clone();
    family.extend(linear_factors(&linear_roots));
    Layout { linear_roots, matrix, factors, family }
}

fn expected_from(m: &[usize]) -> Vec<usize> {
    m.iter().map(|x| x + 1).collect()
}

/// Builds an element whose essentially different factorizations have
/// exactly the lengths in `lengths`, counted with multiplicity.
pub fn construct_lengths(lengths: &[usize]) -> Result<Certificate> {
    if lengths.is_empty() {
        return Err(Error::InvalidLengths("at least one length is required".into()));
    }
    if let Some(bad) = lengths.iter().find(|&&l| l < 2) {
        return Err(Error::InvalidLengths(format!("lengths must be at least 2, got {bad}")));
    }
    if let [l] = lengths {
        return construct_unique_length(*l).map(Certificate::UniqueLength);
    }
    let mut m: Vec<usize> = lengths.iter().map(|l| l - 1).collect();
    m.sort_unstable();
    let big_n = matrix_size(&m);
    let p = next_prime(big_n);
    let s = p - big_n;
    let residue_system = safe_residue_system(p)?;
    let l = layout(&m, s as usize, &residue_system);
    let count = l.factors.len();
    let product = LiftedProduct::build(l.family, (0..count).collect(), p)?;
    Ok(Certificate::PrescribedLengths(PrescribedLengthsCertificate {
        expected_lengths: expected_from(&m),
        m,
        big_n,
        p,
        s,
        residue_system,
        r0_matrix: l.matrix,
        linear_roots: l.linear_roots,
        row_column_factors: l.factors,
        product,
    }))
}

fn unique_roots(length: usize) -> (BigUint, Vec<BigInt>) {
    let modulus: BigUint = primes_up_to(length as u64).into_iter().map(BigUint::from).product();
    let m = BigInt::from(modulus.clone());
    let roots = (0..length).map(|j| BigInt::one() + &m * j).collect();
    (modulus, roots)
}

fn construct_unique_length(length: usize) -> Result<UniqueLengthCertificate> {
    let (modulus, roots) = unique_roots(length);
    let element = make_element(1, BigUint::one(), BigUint::one(), linear_factors(&roots))?;
    Ok(UniqueLengthCertificate { length, modulus, roots, element, expected_lengths: vec![length] })
}

impl PrescribedLengthsCertificate {
    pub(super) fn verify(&self, budget: usize, report: &mut Checklist) -> Option<LengthProfile> {
        let m = &self.m;
        let shape = m.len() >= 2 && m.iter().all(|&x| x >= 1) && m.windows(2).all(|w| w[0] <= w[1]);
        if !report.push("parameters", shape, format!("m = {m:?}")) {
            return None;
        }
        let big_n = matrix_size(m);
        let p = next_prime(big_n);
        report.push("N", self.big_n == big_n, format!("N = (Σm)² − Σm² = {big_n}"));
        report.push("prime", self.p == p, format!("smallest prime above {big_n} is {p}"));
        report.push("s", self.s == p - big_n, format!("s = p − N = {}", p - big_n));
        let rs = &self.residue_system;
        let check = rs.check();
        if !report.push(
            "residue_system",
            rs.p == p && rs.elements.len() as u64 == p && check.passed,
            format!("complete mod {} and incomplete mod every other prime: {}", rs.p, check.passed),
        ) {
            return None;
        }
        let l = layout(m, (p - big_n) as usize, rs);
        report.push(
            "layout",
            self.linear_roots == l.linear_roots && self.r0_matrix == l.matrix,
            format!("{} linear roots and {} matrix entries in lexicographic order", l.linear_roots.len(), l.matrix.len()),
        );
        report.push(
            "factors.row_column",
            self.row_column_factors == l.factors,
            "each f^(k)_h is the product over its row and column",
        );
        let count = l.factors.len();
        self.product.verify(&l.family, &(0..count).collect::<Vec<_>>(), budget, report);
        let deg = self.product.element.degree();
        report.push("degree", deg as u64 == big_n + p, format!("deg H = {deg}, N + p = {}", big_n + p));
        report.push(
            "expected_lengths",
            self.expected_lengths == expected_from(m),
            format!("{:?}", self.expected_lengths),
        );

        // the minimal covers are exactly: all linears plus every group but one
        let mut predicted: Vec<Vec<usize>> = (1..=m.len())
            .map(|skip| {
                let mut v: Vec<usize> = groups(m)
                    .iter()
                    .enumerate()
                    .filter(|(_, &(k, _))| k != skip)
                    .map(|(idx, _)| idx)
                    .collect();
                v.extend(count..l.family.len());
                v
            })
            .collect();
        predicted.sort();
        match minimal_p_subsets(self.product.element.factors(), p) {
            Ok(found) => {
                report.push(
                    "minimal_subsets",
                    found == predicted,
                    format!("{} minimal covers, {} predicted", found.len(), predicted.len()),
                );
            }
            Err(e) => {
                report.push("minimal_subsets", false, e.to_string());
            }
        }
        verify_element(&self.product.element, &p.into(), &self.expected_lengths, report)
    }
}

impl UniqueLengthCertificate {
    pub(super) fn verify(&self, report: &mut Checklist) -> Option<LengthProfile> {
        if !report.push("parameters", self.length >= 2, format!("length {}", self.length)) {
            return None;
        }
        let (modulus, roots) = unique_roots(self.length);
        report.push("modulus", self.modulus == modulus, format!("product of primes up to {} = {modulus}", self.length));
        report.push("roots", self.roots == roots, "roots 1 + j·M₀");
        report.push(
            "element.factors",
            self.element.factors() == linear_factors(&roots).as_slice(),
            "element is the product of the linear factors",
        );
        report.push("expected_lengths", self.expected_lengths == [self.length], format!("{:?}", self.expected_lengths));
        verify_element(&self.element, &BigUint::one(), &self.expected_lengths, report)
    }
}
