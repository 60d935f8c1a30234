//! Replacing monic polynomials by monic Eisenstein polynomials of the same
//! degree without changing the fixed divisor of any sub-product.
//!
//! Let `n` be the total degree of the family and `M = ∏_{p ≤ n} p^{v_p(n!)}`.
//! No monic polynomial of degree at most `n` has a fixed divisor with a
//! prime power exceeding the one in `M`, and values of polynomials that
//! agree modulo `M` agree modulo `M`. Each non-leading coefficient of `f_i`
//! is shifted by a multiple of `M` to become divisible by the prime
//! `q > n`, with the constant term kept off `q²`, so `F_i ≡ f_i (mod M)` is
//! Eisenstein at `q`. Collisions are pushed apart by multiples of `q²·M`
//! added to the constant term, which preserves both properties.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::congruence::{factorial_valuation, is_eisenstein, is_prime, next_prime, primes_up_to};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::report::Checklist;

/// Subset checks run exhaustively when `2^|family|` is at most this.
pub const DEFAULT_SUBSET_BUDGET: usize = 256;
/// Mixed replacements per subset run exhaustively up to this many.
pub const MIXED_BUDGET: usize = 64;
const SAMPLED_SUBSETS: usize = 32;
const SAMPLED_MIXED: usize = 8;
const SAMPLING_DOMAIN: &[u8] = b"intz lift verification v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftCertificate {
    pub family: Vec<IntPoly>,
    pub lifted: Vec<IntPoly>,
    pub total_degree: usize,
    /// Eisenstein prime, the smallest prime above `total_degree`.
    pub q: u64,
    #[serde(with = "crate::serde_dec")]
    pub modulus: BigUint,
    /// `F_i - f_i`.
    pub perturbations: Vec<IntPoly>,
    /// Multiple of `q²·M` added to each constant term to avoid collisions.
    #[serde(with = "crate::serde_dec::vec")]
    pub uniqueness_offsets: Vec<BigInt>,
}

/// `∏_{p ≤ n} p^{v_p(n!)}`.
pub fn lift_modulus(n: usize) -> BigUint {
    primes_up_to(n as u64)
        .into_iter()
        .fold(BigUint::one(), |acc, p| acc * BigUint::from(p).pow(factorial_valuation(n as u64, p)))
}

fn mod_inverse(a: u64, q: u64) -> u64 {
    // q prime, a ≢ 0
    let mut result = 1u128;
    let mut base = a as u128 % q as u128;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % q as u128;
        }
        base = base * base % q as u128;
        e >>= 1;
    }
    result as u64
}

pub fn lift_family(family: &[IntPoly]) -> Result<LiftCertificate> {
    for f in family {
        if !f.is_monic() || f.is_constant() {
            return Err(Error::NotMonicNonConstant(f.to_string()));
        }
    }
    let n: usize = family.iter().map(IntPoly::degree_or_zero).sum();
    let modulus = lift_modulus(n);
    let q = next_prime(n as u64);
    let qb = BigInt::from(q);
    let q2 = &qb * &qb;
    let m = BigInt::from(modulus.clone());
    let m_inv = BigInt::from(mod_inverse((&modulus % q).to_u64().unwrap(), q));

    let mut taken: HashSet<IntPoly> = family.iter().cloned().collect();
    let mut lifted = Vec::with_capacity(family.len());
    let mut offsets = Vec::with_capacity(family.len());
    for f in family {
        let deg = f.degree_or_zero();
        let mut coeffs: Vec<BigInt> = f.coeffs().to_vec();
        for (j, c) in coeffs.iter_mut().enumerate().take(deg) {
            // smallest t in [0, q) with c + M t ≡ 0 (mod q)
            let t = ((-&*c) * &m_inv).mod_floor(&qb);
            *c += &m * &t;
            if j == 0 && (&*c % &q2).is_zero() {
                *c += &m * &qb;
            }
        }
        let base = IntPoly::new(coeffs);
        let step = &q2 * &m;
        let mut k = BigInt::zero();
        let mut candidate = base.clone();
        while taken.contains(&candidate) {
            k += 1;
            candidate = &base + &IntPoly::constant(&k * &step);
        }
        taken.insert(candidate.clone());
        offsets.push(&k * &step);
        lifted.push(candidate);
    }
    let perturbations = family.iter().zip(&lifted).map(|(f, g)| g - f).collect();
    Ok(LiftCertificate {
        family: family.to_vec(),
        lifted,
        total_degree: n,
        q,
        modulus,
        perturbations,
        uniqueness_offsets: offsets,
    })
}

/// Values of `f_i` and `F_i` at `0..=n`, reduced modulo `n!`.
///
/// Every sub-product is monic of degree at most `n`, so its fixed divisor
/// divides `n!` and equals the gcd of `n!` with its values.
struct ValueGrid {
    bound: BigUint,
    original: Vec<Vec<BigUint>>,
    lifted: Vec<Vec<BigUint>>,
}

impl ValueGrid {
    fn new(cert: &LiftCertificate, n: usize) -> Self {
        let bound: BigUint = (1..=n as u64).map(BigUint::from).product();
        let m = BigInt::from(bound.clone());
        let eval = |fs: &[IntPoly]| -> Vec<Vec<BigUint>> {
            fs.iter()
                .map(|f| (0..=n as i64).map(|c| f.evaluate_at(c).mod_floor(&m).magnitude().clone()).collect())
                .collect()
        };
        Self { original: eval(&cert.family), lifted: eval(&cert.lifted), bound }
    }

    /// `d(∏_{i ∈ subset} g_i)` with `g_i = F_i` when `replaced[i]`.
    fn fixed_divisor(&self, subset: &[usize], replaced: &[bool], degrees: &[usize]) -> BigUint {
        let deg: usize = subset.iter().map(|&i| degrees[i]).sum();
        let mut g = self.bound.clone();
        for c in 0..=deg {
            let v = subset.iter().fold(BigUint::one(), |acc, &i| {
                let x = if replaced[i] { &self.lifted[i][c] } else { &self.original[i][c] };
                acc * x % &g
            });
            g = g.gcd(&v);
            if g.is_one() {
                break;
            }
        }
        g
    }
}

fn sampling_rng(cert: &LiftCertificate) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(SAMPLING_DOMAIN);
    for f in &cert.family {
        h.update(f.to_string().as_bytes());
        h.update(b";");
    }
    ChaCha8Rng::from_seed(h.finalize().into())
}

fn subsets_to_check(len: usize, budget: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    if len < usize::BITS as usize && (1usize << len) <= budget {
        return (0..1usize << len).map(|m| (0..len).filter(|i| m >> i & 1 == 1).collect()).collect();
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new(), (0..len).collect()];
    out.extend((0..len).map(|i| vec![i]));
    for i in 0..len {
        for j in i + 1..len {
            out.push(vec![i, j]);
        }
    }
    for _ in 0..SAMPLED_SUBSETS {
        let size = rand::Rng::gen_range(rng, 3..len.max(4)).min(len);
        let mut s = sample(rng, len, size).into_vec();
        s.sort_unstable();
        out.push(s);
    }
    out.sort();
    out.dedup();
    out
}

/// Which members of `subset` are replaced, one mask per mixed replacement.
fn replacements_to_check(subset: &[usize], rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let k = subset.len();
    if (1usize << k.min(30)) <= MIXED_BUDGET {
        return (0..1usize << k)
            .map(|m| (0..k).filter(|i| m >> i & 1 == 1).map(|i| subset[i]).collect())
            .collect();
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new(), subset.to_vec()];
    for i in 0..k {
        out.push(vec![subset[i]]);
        out.push(subset.iter().copied().filter(|&x| x != subset[i]).collect());
    }
    for _ in 0..SAMPLED_MIXED {
        let size = rand::Rng::gen_range(rng, 1..k);
        let mut s: Vec<usize> = sample(rng, k, size).into_iter().map(|i| subset[i]).collect();
        s.sort_unstable();
        out.push(s);
    }
    out
}

/// Re-checks a lift certificate: structure, congruences, the Eisenstein
/// property, distinctness, and fixed-divisor preservation on sub-products
/// with arbitrary mixtures of original and lifted members.
pub fn verify_lift(cert: &LiftCertificate, subset_budget: usize) -> Checklist {
    let mut report = Checklist::default();
    let len = cert.family.len();
    let shapes_ok = cert.lifted.len() == len
        && cert.perturbations.len() == len
        && cert.uniqueness_offsets.len() == len;
    if !report.push("lift.shape", shapes_ok, format!("{len} family members")) {
        return report;
    }

    let monic = cert.family.iter().all(|f| f.is_monic() && !f.is_constant());
    report.push("lift.family_monic", monic, "every f_i monic and non-constant");

    let n: usize = cert.family.iter().map(IntPoly::degree_or_zero).sum();
    report.push(
        "lift.total_degree",
        n == cert.total_degree,
        format!("sum of degrees {n}, certificate says {}", cert.total_degree),
    );
    let modulus = lift_modulus(n);
    report.push(
        "lift.modulus",
        modulus == cert.modulus,
        format!("∏ p^v_p({n}!) over p ≤ {n} = {modulus}"),
    );
    report.push(
        "lift.eisenstein_prime",
        is_prime(cert.q) && cert.q as usize > n,
        format!("q = {} must be a prime above {n}", cert.q),
    );

    let m = BigInt::from(modulus.clone());
    let mut congruent = true;
    let mut detail = String::from("F_i ≡ f_i (mod M), same degree, monic");
    for (i, (f, g)) in cert.family.iter().zip(&cert.lifted).enumerate() {
        let diff = g - f;
        let ok = g.is_monic()
            && g.degree() == f.degree()
            && diff == cert.perturbations[i]
            && diff.coeffs().iter().all(|c| (c % &m).is_zero());
        if !ok {
            congruent = false;
            detail = format!("member {i}: {g} is not a valid lift of {f}");
            break;
        }
    }
    report.push("lift.congruence", congruent, detail);

    let bad: Vec<usize> = (0..len).filter(|&i| !is_eisenstein(&cert.lifted[i], cert.q)).collect();
    report.push(
        "lift.eisenstein",
        bad.is_empty(),
        if bad.is_empty() { format!("all lifted members Eisenstein at {}", cert.q) } else { format!("not Eisenstein: members {bad:?}") },
    );

    let distinct: HashSet<&IntPoly> = cert.lifted.iter().collect();
    report.push("lift.distinct", distinct.len() == len, format!("{} distinct of {len}", distinct.len()));

    let step = BigInt::from(cert.q).pow(2) * &m;
    let offsets_ok = cert.uniqueness_offsets.iter().all(|o| (o % &step).is_zero());
    report.push("lift.offsets", offsets_ok, "collision offsets are multiples of q²·M");

    if !congruent || !monic {
        report.push("lift.fixed_divisors", false, "skipped: family or lifted members are malformed");
        return report;
    }
    let degrees: Vec<usize> = cert.family.iter().map(IntPoly::degree_or_zero).collect();
    let grid = ValueGrid::new(cert, n);
    let mut rng = sampling_rng(cert);
    let none = vec![false; len];
    let mut checks = 0usize;
    let mut mismatch = None;
    'outer: for subset in subsets_to_check(len, subset_budget, &mut rng) {
        let reference = grid.fixed_divisor(&subset, &none, &degrees);
        for swap in replacements_to_check(&subset, &mut rng) {
            let mut replaced = none.clone();
            for &i in &swap {
                replaced[i] = true;
            }
            checks += 1;
            let d = grid.fixed_divisor(&subset, &replaced, &degrees);
            if d != reference {
                mismatch = Some(format!("K = {subset:?}, replaced {swap:?}: d = {d}, expected {reference}"));
                break 'outer;
            }
        }
    }
    let exhaustive = len < 64 && (1usize << len) <= subset_budget;
    report.push(
        "lift.fixed_divisors",
        mismatch.is_none(),
        mismatch.unwrap_or_else(|| {
            format!("{checks} sub-products agree ({})", if exhaustive { "exhaustive" } else { "sampled" })
        }),
    );
    report
}
