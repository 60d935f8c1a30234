use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use crate::congruence::{factorial_valuation, primes_up_to};
use crate::poly::IntPoly;

/// Capped p-adic valuations of each factor at the points `0..=D`, where `D`
/// is the total degree of the factor family.
///
/// For a sub-multiset `J` of primitive factors, `v_p(d(∏_J g_i))` is the
/// minimum over the points of `Σ_{i ∈ J} v_p(g_i(c))`, and it never exceeds
/// `v_p(D!)`. Capping each term at `v_p(D!)` (zeros included) leaves that
/// minimum unchanged, so the table answers every fixed-divisor query on
/// sub-products with small-integer arithmetic.
pub(crate) struct ValuationTable {
    primes: Vec<u64>,
    /// `rows[factor][prime][point]`
    rows: Vec<Vec<Vec<u32>>>,
}

pub(crate) type Exponents = Vec<u32>;

impl ValuationTable {
    pub fn new(factors: &[IntPoly]) -> Self {
        let total: usize = factors.iter().map(IntPoly::degree_or_zero).sum();
        let primes = primes_up_to(total as u64);
        let caps: Vec<u32> = primes.iter().map(|&p| factorial_valuation(total as u64, p)).collect();
        let rows = factors
            .iter()
            .map(|g| {
                let values: Vec<BigInt> = (0..=total as i64).map(|c| g.evaluate_at(c)).collect();
                primes
                    .iter()
                    .zip(&caps)
                    .map(|(&p, &cap)| values.iter().map(|v| capped_valuation(v, p, cap)).collect())
                    .collect()
            })
            .collect();
        Self { primes, rows }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Exponent vector of `d(∏_{i ∈ mask} g_i)` over [`Self::primes`].
    pub fn exponents(&self, mask: u64) -> Exponents {
        let members: Vec<usize> = (0..self.rows.len()).filter(|&i| mask >> i & 1 == 1).collect();
        (0..self.primes.len())
            .map(|pi| {
                if members.is_empty() {
                    return 0;
                }
                let points = self.rows[members[0]][pi].len();
                (0..points)
                    .map(|c| members.iter().map(|&i| self.rows[i][pi][c]).sum::<u32>())
                    .min()
                    .unwrap_or(0)
            })
            .collect()
    }

    /// Exponent vector of `n`, or `None` if `n` has a prime factor outside
    /// the table.
    pub fn exponents_of(&self, n: &BigUint) -> Option<Exponents> {
        let mut rest = n.clone();
        let out = self
            .primes
            .iter()
            .map(|&p| {
                let pb = BigUint::from(p);
                let mut e = 0;
                while !rest.is_zero() && (&rest % &pb).is_zero() {
                    rest /= &pb;
                    e += 1;
                }
                e
            })
            .collect();
        (rest == BigUint::from(1u32)).then_some(out)
    }

    pub fn value_of(&self, exps: &[u32]) -> BigUint {
        self.primes
            .iter()
            .zip(exps)
            .fold(BigUint::from(1u32), |acc, (&p, &e)| acc * BigUint::from(p).pow(e))
    }
}

fn capped_valuation(v: &BigInt, p: u64, cap: u32) -> u32 {
    if v.is_zero() {
        return cap;
    }
    let p = BigInt::from(p);
    let mut v = v.clone();
    let mut e = 0;
    while e < cap {
        let (q, r) = v.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        v = q;
        e += 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed_divisor::fixed_divisor;
    use crate::poly::{parse_poly, product};

    #[test]
    fn agrees_with_fixed_divisor_on_all_subsets() {
        let fs: Vec<IntPoly> = ["x", "x-1", "x-2", "x-3", "x^2+3x+6", "x-8"]
            .iter()
            .map(|s| parse_poly(s).unwrap())
            .collect();
        let t = ValuationTable::new(&fs);
        for mask in 1u64..(1 << fs.len()) {
            let sub: Vec<&IntPoly> = (0..fs.len()).filter(|i| mask >> i & 1 == 1).map(|i| &fs[i]).collect();
            let d = fixed_divisor(&product(sub)).unwrap().value;
            assert_eq!(t.value_of(&t.exponents(mask)), d, "mask {mask:b}");
        }
        assert_eq!(t.value_of(&t.exponents(0)), BigUint::from(1u32));
    }

    #[test]
    fn exponents_of_rejects_foreign_primes() {
        let t = ValuationTable::new(&[parse_poly("x^2-x").unwrap()]);
        assert_eq!(t.exponents_of(&BigUint::from(2u32)), Some(vec![1]));
        assert_eq!(t.exponents_of(&BigUint::from(3u32)), None);
    }
}
