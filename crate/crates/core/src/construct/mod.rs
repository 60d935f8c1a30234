//! Elements of `Int(Z)` with prescribed sets of lengths, each emitted with a
//! certificate that [`verify_certificate`] re-checks without trusting any
//! of its contents.
//!
//! All constructions share one shape: a complete residue system modulo a
//! prime `p` (containing no complete system modulo any other prime) is
//! split among linear factors and products of linear factors, the
//! non-linear products are lifted to Eisenstein polynomials that keep every
//! fixed divisor of every sub-product, and the whole product is divided by
//! `p`. Factorizations then correspond to the inclusion-minimal sets of
//! factors whose roots cover all residues modulo `p`.

mod grid;
mod prescribed;
mod short_long;
mod x_multiple;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lift::{lift_family, verify_lift, LiftCertificate, DEFAULT_SUBSET_BUDGET};
use crate::monoid::{is_member, length_profile, make_element, IvpElement, LengthProfile};
use crate::poly::IntPoly;
use crate::report::{CheckItem, Checklist};

pub use grid::{construct_elasticity, construct_grid, GridCertificate};
pub use prescribed::{construct_lengths, PrescribedLengthsCertificate, UniqueLengthCertificate};
pub use short_long::{construct_short_long, ShortLongCertificate};
pub use x_multiple::{construct_x_multiple, ClaimedFactor, Parity, XMultipleCertificate};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    #[serde(rename = "example7")]
    ShortLong(ShortLongCertificate),
    #[serde(rename = "example8")]
    Grid(GridCertificate),
    #[serde(rename = "theorem9")]
    PrescribedLengths(PrescribedLengthsCertificate),
    #[serde(rename = "theorem10")]
    XMultiple(XMultipleCertificate),
    UniqueLength(UniqueLengthCertificate),
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    schema_version: u32,
    #[serde(flatten)]
    certificate: Certificate,
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::ShortLong(_) => "example7",
            Certificate::Grid(_) => "example8",
            Certificate::PrescribedLengths(_) => "theorem9",
            Certificate::XMultiple(_) => "theorem10",
            Certificate::UniqueLength(_) => "unique_length",
        }
    }

    pub fn to_json(&self) -> String {
        let env = Envelope { schema_version: SCHEMA_VERSION, certificate: self.clone() };
        serde_json::to_string_pretty(&env).expect("certificates always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let env: Envelope = serde_json::from_str(text)?;
        if env.schema_version != SCHEMA_VERSION {
            return Err(Error::Json(format!("unsupported schema_version {}", env.schema_version)));
        }
        Ok(env.certificate)
    }

    /// The constructed element.
    pub fn element(&self) -> &IvpElement {
        match self {
            Certificate::ShortLong(c) => &c.product.element,
            Certificate::Grid(c) => &c.product.element,
            Certificate::PrescribedLengths(c) => &c.product.element,
            Certificate::XMultiple(c) => &c.element,
            Certificate::UniqueLength(c) => &c.element,
        }
    }
}

/// Product of a lifted family divided by its fixed divisor. Members listed
/// in `replaced` enter the element as their lifts, the others unchanged, so
/// `element.factors()[i]` corresponds to `lift.family[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedProduct {
    pub lift: LiftCertificate,
    pub replaced: Vec<usize>,
    pub element: IvpElement,
}

impl LiftedProduct {
    fn build(family: Vec<IntPoly>, replaced: Vec<usize>, denominator: u64) -> Result<Self> {
        let lift = lift_family(&family)?;
        let factors = (0..family.len())
            .map(|i| if replaced.contains(&i) { lift.lifted[i].clone() } else { family[i].clone() })
            .collect();
        let element = make_element(1, BigUint::one(), BigUint::from(denominator), factors)?;
        Ok(Self { lift, replaced, element })
    }

    fn verify(&self, expected_family: &[IntPoly], expected_replaced: &[usize], budget: usize, report: &mut Checklist) {
        report.push(
            "lift.family",
            self.lift.family == expected_family,
            "lift family matches the factors rebuilt from the residues",
        );
        report.push("lift.replaced", self.replaced == expected_replaced, format!("replaced members {:?}", self.replaced));
        report.extend_prefixed("", verify_lift(&self.lift, budget));
        let factors = self.element.factors();
        let aligned = factors.len() == self.lift.family.len()
            && factors.iter().enumerate().all(|(i, f)| {
                let src = if self.replaced.contains(&i) { self.lift.lifted.get(i) } else { self.lift.family.get(i) };
                src == Some(f)
            });
        report.push("element.factors", aligned, "element factors are the lifted and unlifted family members");
    }
}

fn linear_factors(roots: &[BigInt]) -> Vec<IntPoly> {
    roots.iter().map(IntPoly::linear).collect()
}

fn signed(values: &[BigUint]) -> Vec<BigInt> {
    values.iter().cloned().map(BigInt::from).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub kind: String,
    pub passed: bool,
    pub items: Vec<CheckItem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<LengthProfile>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }
}

/// Element-level checks shared by all constructions: membership, the value
/// of `d(numerator)`, certified factors, and the enumerated lengths.
fn verify_element(
    element: &IvpElement,
    fixed_divisor: &BigUint,
    expected_lengths: &[usize],
    report: &mut Checklist,
) -> Option<LengthProfile> {
    let member = is_member(&element.to_rational()).map(|(ok, _)| ok).unwrap_or(false);
    report.push("element.membership", member, "every binomial coordinate is an integer");
    let d = element.numerator_fixed_divisor();
    report.push(
        "element.fixed_divisor",
        &d == fixed_divisor && element.denominator() == fixed_divisor,
        format!("d(numerator) = {d}, denominator {}, expected {fixed_divisor}", element.denominator()),
    );
    let untrusted = element.first_untrusted();
    report.push(
        "element.certified_factors",
        untrusted.is_none(),
        match untrusted {
            None => "every factor is linear or Eisenstein".to_string(),
            Some(i) => format!("factor {i} has no irreducibility certificate"),
        },
    );
    let mut expected = expected_lengths.to_vec();
    expected.sort_unstable();
    match length_profile(element) {
        Ok(profile) => {
            report.push(
                "enumeration.lengths",
                profile.lengths == expected,
                format!("enumerated {:?}, expected {:?}", profile.lengths, expected),
            );
            Some(profile)
        }
        Err(e) => {
            report.push("enumeration.lengths", false, format!("enumeration failed: {e}"));
            None
        }
    }
}

pub fn verify_certificate(cert: &Certificate) -> VerificationReport {
    verify_certificate_with(cert, DEFAULT_SUBSET_BUDGET)
}

/// Re-checks every claim of `cert` from its raw data. `subset_budget` bounds
/// the sub-products examined when re-checking the lift.
pub fn verify_certificate_with(cert: &Certificate, subset_budget: usize) -> VerificationReport {
    let mut report = Checklist::default();
    let profile = match cert {
        Certificate::ShortLong(c) => c.verify(subset_budget, &mut report),
        Certificate::Grid(c) => c.verify(subset_budget, &mut report),
        Certificate::PrescribedLengths(c) => c.verify(subset_budget, &mut report),
        Certificate::XMultiple(c) => c.verify(subset_budget, &mut report),
        Certificate::UniqueLength(c) => c.verify(&mut report),
    };
    VerificationReport { kind: cert.kind().to_string(), passed: report.passed(), items: report.items, profile }
}
