//! An element with exactly two factorizations, of lengths 2 and `n + 2`.
//!
//! With residues `a_1, …, a_p` modulo `p > n + 1`, put
//! `f = (x−a_2)⋯(x−a_p)` and `g = (x−a_{n+2})⋯(x−a_p)`, lift both, and take
//! `H = F·(x−a_1)⋯(x−a_{n+1})·G / p`. The roots of `F` and `x−a_1` cover
//! every residue, as do those of all the linear factors and `G`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{linear_factors, signed, verify_element, LiftedProduct};
use crate::congruence::{next_prime, safe_residue_system, ResidueSystem};
use crate::error::Result;
use crate::monoid::LengthProfile;
use crate::poly::{from_roots, IntPoly};
use crate::report::Checklist;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortLongCertificate {
    pub n: u64,
    pub p: u64,
    pub residue_system: ResidueSystem,
    pub f: IntPoly,
    pub g: IntPoly,
    #[serde(flatten)]
    pub product: LiftedProduct,
    pub expected_lengths: Vec<usize>,
}

fn family(n: usize, a: &[BigInt]) -> (IntPoly, IntPoly, Vec<IntPoly>) {
    let f = from_roots(&a[1..]);
    let g = from_roots(&a[n + 1..]);
    let mut fam = vec![f.clone()];
    fam.extend(linear_factors(&a[..=n]));
    fam.push(g.clone());
    (f, g, fam)
}

fn expected_lengths(n: usize) -> Vec<usize> {
    vec![2, n + 2]
}

pub fn construct_short_long(n: u64) -> Result<ShortLongCertificate> {
    let p = next_prime(n + 1);
    let residue_system = safe_residue_system(p)?;
    let a = signed(&residue_system.elements);
    let nu = n as usize;
    let (f, g, fam) = family(nu, &a);
    let product = LiftedProduct::build(fam, vec![0, nu + 2], p)?;
    Ok(ShortLongCertificate { n, p, residue_system, f, g, product, expected_lengths: expected_lengths(nu) })
}

impl ShortLongCertificate {
    pub(super) fn verify(&self, budget: usize, report: &mut Checklist) -> Option<LengthProfile> {
        let p = next_prime(self.n + 1);
        report.push("prime", self.p == p, format!("smallest prime above {} is {p}", self.n + 1));
        let rs = &self.residue_system;
        let check = rs.check();
        if !report.push(
            "residue_system",
            rs.p == self.p && check.passed,
            format!("complete mod {} and incomplete mod every other prime: {}", rs.p, check.passed),
        ) {
            return None;
        }
        let n = self.n as usize;
        let (f, g, fam) = family(n, &signed(&rs.elements));
        report.push("factors.f", self.f == f, "f is the product over a_2..a_p");
        report.push("factors.g", self.g == g, "g is the product over a_(n+2)..a_p");
        self.product.verify(&fam, &[0, n + 2], budget, report);
        report.push(
            "expected_lengths",
            self.expected_lengths == expected_lengths(n),
            format!("{:?}", self.expected_lengths),
        );
        verify_element(&self.product.element, &p.into(), &self.expected_lengths, report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{verify_certificate, Certificate};

    #[test]
    fn small_cases_verify() {
        for n in 0..=3 {
            let cert = construct_short_long(n).unwrap();
            let report = verify_certificate(&Certificate::ShortLong(cert.clone()));
            assert!(report.passed, "n = {n}: {:?}", report.failures().collect::<Vec<_>>());
            let profile = report.profile.unwrap();
            let mut want = vec![2, n as usize + 2];
            want.sort_unstable();
            assert_eq!(profile.lengths, want);
        }
    }

    #[test]
    fn n_one_uses_prime_three() {
        let cert = construct_short_long(1).unwrap();
        assert_eq!(cert.p, 3);
        let residues: Vec<u64> = cert.residue_system.elements.iter().map(|e| e.try_into().unwrap()).collect();
        assert_eq!(residues, [1, 5, 3]);
        assert_eq!(cert.product.element.degree(), 2 + 2 + 1);
    }
}
