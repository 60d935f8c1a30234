//! Factorization in the multiplicative monoid of `Int(Z)`.
//!
//! Elements are kept in factored form `±(a/b) · ∏ g_i` with `g_i` primitive
//! and irreducible in `Z[x]`. Every factorization into irreducibles of such
//! an element has the shape
//!
//! ```text
//!   (primes of a·c) · ∏_j (∏_{i ∈ I_j} g_i) / d_j
//! ```
//!
//! where `I_1, …, I_k` partition the factor multiset, `d_j = d(∏_{I_j} g_i)`,
//! and `∏ d_j = b·c` for some `c` with `b·c | d(∏ g_i)`. Each block must
//! itself be irreducible, which is checked by scanning its splits.

mod engine;
mod table;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::congruence::find_eisenstein_prime;
use crate::error::{Error, Result};
use crate::fixed_divisor::{fixed_divisor, fixed_divisor_of_product};
use crate::poly::{product, IntPoly, RationalPoly};

pub use engine::{
    enumerate_factorizations, enumerate_factorizations_with, is_irreducible, is_irreducible_with,
    length_profile, length_profile_with, minimal_p_subsets, EnumerationConfig, IrreducibilityWitness,
    DEFAULT_ENUMERATION_BOUND,
};

/// Primes searched when looking for an Eisenstein certificate of a factor.
pub const EISENSTEIN_SEARCH_BOUND: u64 = 10_000;

/// How the `Z[x]`-irreducibility of a factor is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trust {
    Linear,
    Eisenstein(u64),
    /// Irreducibility claimed by the caller but not certified.
    Asserted,
}

impl Trust {
    pub fn derive(f: &IntPoly) -> Trust {
        if f.degree() == Some(1) {
            Trust::Linear
        } else if let Some(q) = find_eisenstein_prime(f, EISENSTEIN_SEARCH_BOUND) {
            Trust::Eisenstein(q)
        } else {
            Trust::Asserted
        }
    }

    pub fn is_certified(self) -> bool {
        !matches!(self, Trust::Asserted)
    }
}

/// Nonzero element `unit · (a/b) · ∏ factors` of `Int(Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub struct IvpElement {
    unit: i8,
    a: BigUint,
    b: BigUint,
    factors: Vec<IntPoly>,
    trust: Vec<Trust>,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    unit: i8,
    #[serde(with = "crate::serde_dec")]
    a: BigUint,
    #[serde(with = "crate::serde_dec")]
    b: BigUint,
    factors: Vec<IntPoly>,
    #[serde(default)]
    certified: Vec<bool>,
}

impl TryFrom<ElementRepr> for IvpElement {
    type Error = Error;
    fn try_from(r: ElementRepr) -> Result<Self> {
        // certification is re-derived; the flags in the input are only hints
        make_element(r.unit, r.a, r.b, r.factors)
    }
}

impl From<IvpElement> for ElementRepr {
    fn from(e: IvpElement) -> Self {
        ElementRepr {
            unit: e.unit,
            certified: e.trust.iter().map(|t| t.is_certified()).collect(),
            a: e.a,
            b: e.b,
            factors: e.factors,
        }
    }
}

/// Validates membership in `Int(Z)`: `b | d(∏ factors)`.
pub fn make_element(unit: i8, a: BigUint, b: BigUint, factors: Vec<IntPoly>) -> Result<IvpElement> {
    if unit != 1 && unit != -1 {
        return Err(Error::InvalidArgument(format!("unit must be ±1, got {unit}")));
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument("a and b must be positive".into()));
    }
    if !a.gcd(&b).is_one() {
        return Err(Error::NotCoprime { a, b });
    }
    for (index, f) in factors.iter().enumerate() {
        let ok = f.degree().is_some_and(|d| d >= 1)
            && f.leading().is_some_and(|l| l > &BigInt::zero())
            && f.is_primitive();
        if !ok {
            return Err(Error::BadFactor { index });
        }
    }
    let refs: Vec<&IntPoly> = factors.iter().collect();
    let d = fixed_divisor_of_product(&refs)?;
    if !(&d % &b).is_zero() {
        return Err(Error::NotMember { b, fixed_divisor: d });
    }
    let trust = factors.iter().map(Trust::derive).collect();
    Ok(IvpElement { unit, a, b, factors, trust })
}

impl IvpElement {
    pub fn unit(&self) -> i8 {
        self.unit
    }

    pub fn num_constant(&self) -> &BigUint {
        &self.a
    }

    pub fn denominator(&self) -> &BigUint {
        &self.b
    }

    pub fn factors(&self) -> &[IntPoly] {
        &self.factors
    }

    pub fn trust(&self) -> &[Trust] {
        &self.trust
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(IntPoly::degree_or_zero).sum()
    }

    pub fn numerator_product(&self) -> IntPoly {
        product(&self.factors)
    }

    /// `d(∏ g_i)`, computed from the factor values.
    pub fn numerator_fixed_divisor(&self) -> BigUint {
        let refs: Vec<&IntPoly> = self.factors.iter().collect();
        fixed_divisor_of_product(&refs).expect("factors are nonzero")
    }

    pub fn to_rational(&self) -> RationalPoly {
        let k = BigInt::from(self.a.clone()) * BigInt::from(self.unit);
        RationalPoly::new(self.numerator_product().scale(&k), self.b.clone())
    }

    /// Index of the first factor equal to each factor; identical factors
    /// share an id.
    pub fn class_ids(&self) -> Vec<usize> {
        (0..self.factors.len())
            .map(|i| self.factors.iter().position(|g| g == &self.factors[i]).unwrap())
            .collect()
    }

    pub fn first_untrusted(&self) -> Option<usize> {
        self.trust.iter().position(|t| !t.is_certified())
    }
}

impl fmt::Display for IvpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unit < 0 {
            f.write_str("-")?;
        }
        if !self.a.is_one() || self.factors.is_empty() {
            write!(f, "{}", self.a)?;
        }
        for g in &self.factors {
            write!(f, "({g})")?;
        }
        if !self.b.is_one() {
            write!(f, " / {}", self.b)?;
        }
        Ok(())
    }
}

/// Result of [`is_member`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipWitness {
    /// All binomial coordinates are integers and `b | d(g)` in the normal
    /// form `a·g/b`.
    Member { b: BigUint, fixed_divisor: BigUint },
    /// The coordinate of `C(x, index)` is `numerator/denominator ∉ Z`.
    NonIntegerCoordinate { index: usize, numerator: BigInt, denominator: BigUint },
}

/// Decides `f ∈ Int(Z)` through the binomial basis, and cross-checks against
/// the criterion `b | d(g)` for the normal form `f = a·g/b`.
pub fn is_member(f: &RationalPoly) -> Result<(bool, MembershipWitness)> {
    let mut f = f.clone();
    f.normalize();
    let (_, g, content) = f.numerator.primitive_part()?;
    let den = BigInt::from(f.denominator.clone());
    let coords = f.numerator.binomial_coefficients();
    let by_basis = coords.iter().position(|c| !(c % &den).is_zero());

    let b = &f.denominator / content.gcd(&f.denominator);
    let d = fixed_divisor(&g)?.value;
    let by_normal_form = (&d % &b).is_zero();
    assert_eq!(
        by_basis.is_none(),
        by_normal_form,
        "binomial-basis and normal-form membership criteria disagree"
    );
    Ok(match by_basis {
        None => (true, MembershipWitness::Member { b, fixed_divisor: d }),
        Some(index) => {
            let c = &coords[index];
            let g = BigInt::from(c.magnitude().gcd(&f.denominator));
            (
                false,
                MembershipWitness::NonIntegerCoordinate {
                    index,
                    numerator: c / &g,
                    denominator: (&den / &g).magnitude().clone(),
                },
            )
        }
    })
}

/// One block `(∏_{i ∈ factors} g_i) / denominator` of a factorization.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Block {
    /// Factor indices (class representatives, sorted, repeated for repeated
    /// factors).
    pub factors: Vec<usize>,
    #[serde(with = "crate::serde_dec")]
    pub denominator: BigUint,
}

/// A factorization into irreducibles of `Int(Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub unit: i8,
    #[serde(with = "crate::serde_dec::vec")]
    pub constants: Vec<BigUint>,
    pub blocks: Vec<Block>,
}

impl Factorization {
    pub fn length(&self) -> usize {
        self.constants.len() + self.blocks.len()
    }

    /// Sorts constants, block contents and blocks.
    pub fn canonicalize(&mut self) {
        self.constants.sort();
        for b in &mut self.blocks {
            b.factors.sort_unstable();
        }
        self.blocks.sort();
    }

    /// Multiplies the factorization out.
    pub fn expand(&self, e: &IvpElement) -> RationalPoly {
        let mut acc = RationalPoly::from(IntPoly::constant(BigInt::from(self.unit)));
        for c in &self.constants {
            acc = &acc * &RationalPoly::from(IntPoly::constant(BigInt::from(c.clone())));
        }
        for b in &self.blocks {
            let num = product(b.factors.iter().map(|&i| &e.factors()[i]));
            acc = &acc * &RationalPoly::new(num, b.denominator.clone());
        }
        acc
    }

    pub fn render(&self, e: &IvpElement) -> String {
        let mut parts: Vec<String> = self.constants.iter().map(ToString::to_string).collect();
        for b in &self.blocks {
            let body: Vec<String> = b.factors.iter().map(|&i| format!("({})", e.factors()[i])).collect();
            let body = body.concat();
            if b.denominator.is_one() {
                parts.push(body);
            } else {
                parts.push(format!("[{body} / {}]", b.denominator));
            }
        }
        let sign = if self.unit < 0 { "-" } else { "" };
        format!("{sign}{}", parts.join(" · "))
    }
}

/// Factorizations are essentially the same when their constant multisets
/// and block multisets coincide; units are only `±1` and factors are
/// normalized, so association reduces to equality.
pub fn essentially_equal(f1: &Factorization, f2: &Factorization) -> bool {
    let (mut a, mut b) = (f1.clone(), f2.clone());
    a.canonicalize();
    b.canonicalize();
    a.constants == b.constants && a.blocks == b.blocks
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthProfile {
    /// One entry per essentially different factorization, ascending.
    pub lengths: Vec<usize>,
    pub length_set: BTreeSet<usize>,
    #[serde(serialize_with = "serialize_ratio")]
    pub elasticity: Ratio<u64>,
}

fn serialize_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
}

impl LengthProfile {
    pub fn from_lengths(mut lengths: Vec<usize>) -> Self {
        lengths.sort_unstable();
        let length_set: BTreeSet<usize> = lengths.iter().copied().collect();
        let elasticity = match (length_set.first(), length_set.last()) {
            (Some(&lo), Some(&hi)) => Ratio::new(hi as u64, lo as u64),
            _ => Ratio::one(),
        };
        Self { lengths, length_set, elasticity }
    }
}
