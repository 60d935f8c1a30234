//! Dense univariate polynomials over Z and Q with unbounded coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Polynomial with integer coefficients.
///
/// Coefficients are stored in ascending order of degree: `coeffs[i]` is the
/// coefficient of `x^i`. The highest stored coefficient is never zero; the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear(root: &BigInt) -> Self {
        Self { coeffs: vec![-root, BigInt::one()] }
    }

    pub fn x() -> Self {
        Self { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, treating the zero polynomial as degree 0.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Horner evaluation.
    pub fn evaluate(&self, c: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * c + a;
        }
        acc
    }

    pub fn evaluate_at(&self, c: i64) -> BigInt {
        self.evaluate(&BigInt::from(c))
    }

    /// Greatest common divisor of the coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigUint {
        let mut g = BigInt::zero();
        for a in &self.coeffs {
            g = g.gcd(a);
            if g.is_one() {
                break;
            }
        }
        g.magnitude().clone()
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Splits `self = sign * content * primitive` with `primitive` of
    /// content 1 and positive leading coefficient.
    pub fn primitive_part(&self) -> Result<(i8, IntPoly, BigUint)> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        let content = self.content();
        let sign: i8 = if lead.is_negative() { -1 } else { 1 };
        let divisor = BigInt::from_biguint(if sign < 0 { Sign::Minus } else { Sign::Plus }, content.clone());
        let primitive = IntPoly::new(self.coeffs.iter().map(|a| a / &divisor).collect());
        Ok((sign, primitive, content))
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * k).collect())
    }

    /// Exact division of every coefficient; caller guarantees divisibility.
    pub fn div_exact(&self, k: &BigInt) -> IntPoly {
        debug_assert!(self.coeffs.iter().all(|a| (a % k).is_zero()));
        IntPoly::new(self.coeffs.iter().map(|a| a / k).collect())
    }

    /// Forward differences `Δ^k f(0)` for `k = 0..=deg f`, the coordinates of
    /// `f` in the basis of binomial polynomials `C(x, k)`.
    pub fn binomial_coefficients(&self) -> Vec<BigInt> {
        let Some(n) = self.degree() else {
            return Vec::new();
        };
        let mut table: Vec<BigInt> = (0..=n as i64).map(|c| self.evaluate_at(c)).collect();
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            out.push(table[0].clone());
            for i in 0..n - k {
                table[i] = &table[i + 1] - &table[i];
            }
        }
        out
    }

    /// Inverse of [`IntPoly::binomial_coefficients`]: `Σ coords[k] · C(x, k)`.
    pub fn from_binomial_coefficients(coords: &[BigInt]) -> RationalPoly {
        let Some(n) = coords.len().checked_sub(1) else {
            return RationalPoly::from(IntPoly::zero());
        };
        // n! · C(x,k) = (n!/k!) · x(x-1)…(x-k+1)
        let mut num = IntPoly::zero();
        let mut falling = IntPoly::one();
        let n_fact: BigInt = (1..=n as u64).map(BigInt::from).product();
        let mut k_fact = BigInt::one();
        for (k, coord) in coords.iter().enumerate() {
            if k > 0 {
                k_fact *= BigInt::from(k as u64);
                falling = &falling * &IntPoly::linear(&BigInt::from(k as u64 - 1));
            }
            let weight = coord * (&n_fact / &k_fact);
            num = &num + &falling.scale(&weight);
        }
        RationalPoly::new(num, n_fact.magnitude().clone())
    }

    /// Text form: descending powers, explicit signs, `x^k`, no `*`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Exact product; the empty product is 1.
pub fn product<'a, I>(fs: I) -> IntPoly
where
    I: IntoIterator<Item = &'a IntPoly>,
{
    fs.into_iter().fold(IntPoly::one(), |acc, f| &acc * f)
}

/// Monic `∏ (x - r)`; repeated roots are kept.
pub fn from_roots(roots: &[BigInt]) -> IntPoly {
    let mut coeffs = vec![BigInt::one()];
    for r in roots {
        // multiply by (x - r) in place
        coeffs.push(BigInt::zero());
        for k in (0..coeffs.len()).rev() {
            let lower = if k > 0 { coeffs[k - 1].clone() } else { BigInt::zero() };
            coeffs[k] = lower - r * &coeffs[k];
        }
    }
    IntPoly::new(coeffs)
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mag = a.magnitude();
            if first {
                if a.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if a.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl FromStr for IntPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::serde_dec::vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        crate::serde_dec::vec::deserialize(d).map(IntPoly::new)
    }
}

/// Parses an integer polynomial in `x`, e.g. `"3x^2 - 2*x + 17"`.
pub fn parse_poly(text: &str) -> Result<IntPoly> {
    Parser { src: text.as_bytes(), pos: 0 }.poly()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> Option<&'a [u8]> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        let src: &'a [u8] = self.src;
        (self.pos > start).then(|| &src[start..self.pos])
    }

    fn poly(mut self) -> Result<IntPoly> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        self.skip_ws();
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let mut negative = false;
        if let Some(b @ (b'+' | b'-')) = self.peek() {
            negative = b == b'-';
            self.pos += 1;
            self.skip_ws();
        }
        loop {
            let (coef, power) = self.term()?;
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            if negative {
                coeffs[power] -= coef;
            } else {
                coeffs[power] += coef;
            }
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            }
            self.pos += 1;
            self.skip_ws();
        }
        Ok(IntPoly::new(coeffs))
    }

    fn term(&mut self) -> Result<(BigInt, usize)> {
        let coef = match self.digits() {
            Some(d) => {
                let coef: BigInt = std::str::from_utf8(d).unwrap().parse().unwrap();
                if let Some(b'.' | b'/') = self.peek() {
                    return self.err("coefficients must be integers");
                }
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_ws();
                    if self.peek() != Some(b'x') {
                        return self.err("expected `x` after `*`");
                    }
                }
                if self.peek() != Some(b'x') {
                    if self.peek().is_some_and(|b| b.is_ascii_alphabetic()) {
                        return self.err("the only variable is `x`");
                    }
                    return Ok((coef, 0));
                }
                coef
            }
            None if self.peek() == Some(b'x') => BigInt::one(),
            None if self.peek().is_some_and(|b| b.is_ascii_alphabetic()) => {
                return self.err("the only variable is `x`");
            }
            None => return self.err("expected a coefficient or `x`"),
        };
        // at `x`
        self.pos += 1;
        if self.peek().is_some_and(|b| b.is_ascii_alphanumeric() || b == b'_') {
            return self.err("the only variable is `x`");
        }
        let save = self.pos;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            self.pos = save;
            return Ok((coef, 1));
        }
        self.pos += 1;
        self.skip_ws();
        let Some(d) = self.digits() else {
            return self.err("expected an exponent after `^`");
        };
        let power: usize = match std::str::from_utf8(d).unwrap().parse() {
            Ok(p) if p <= 1 << 20 => p,
            _ => return self.err("exponent too large"),
        };
        Ok((coef, power))
    }
}

/// Polynomial with rational coefficients, `numerator / denominator`.
#[derive(Clone, Debug)]
pub struct RationalPoly {
    pub numerator: IntPoly,
    pub denominator: BigUint,
}

impl RationalPoly {
    /// Builds and normalizes so that `gcd(content(numerator), denominator) = 1`.
    pub fn new(numerator: IntPoly, denominator: BigUint) -> Self {
        assert!(!denominator.is_zero(), "zero denominator");
        let mut r = Self { numerator, denominator };
        r.normalize();
        r
    }

    pub fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.denominator = BigUint::one();
            return;
        }
        let g = self.numerator.content().gcd(&self.denominator);
        if !g.is_one() {
            self.numerator = self.numerator.div_exact(&BigInt::from(g.clone()));
            self.denominator /= g;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.denominator.is_one()
    }
}

impl From<IntPoly> for RationalPoly {
    fn from(p: IntPoly) -> Self {
        Self { numerator: p, denominator: BigUint::one() }
    }
}

impl PartialEq for RationalPoly {
    fn eq(&self, other: &Self) -> bool {
        let l = self.numerator.scale(&BigInt::from(other.denominator.clone()));
        let r = other.numerator.scale(&BigInt::from(self.denominator.clone()));
        l == r
    }
}

impl Eq for RationalPoly {}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        RationalPoly::new(&self.numerator * &rhs.numerator, &self.denominator * &rhs.denominator)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / {}", self.numerator, self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        parse_poly(s).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("x^2 - x").coeffs(), big(&[0, -1, 1]).as_slice());
        assert!(p("0").is_zero());
        assert_eq!(p("0").coeffs().len(), 0);
        assert!(matches!(parse_poly("(unparseable) x^^2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x^^2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn parse_variants() {
        assert_eq!(p("3*x^2+2 x -1"), IntPoly::from_i64s(&[-1, 2, 3]));
        assert_eq!(p("-x"), IntPoly::from_i64s(&[0, -1]));
        assert_eq!(p("x + x"), IntPoly::from_i64s(&[0, 2]));
        assert_eq!(p("x ^ 3"), IntPoly::from_i64s(&[0, 0, 0, 1]));
        let huge = "123456789012345678901234567890";
        assert_eq!(p(&format!("{huge}x")).coeff(1), huge.parse::<BigInt>().unwrap());
    }

    #[test]
    fn parse_errors() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("1.5x").is_err());
        assert!(parse_poly("1/2x").is_err());
        assert!(parse_poly("y^2").is_err());
        assert!(parse_poly("2y").is_err());
        assert!(parse_poly("xy").is_err());
        assert!(parse_poly("x +").is_err());
        assert!(parse_poly("x 2").is_err());
    }

    #[test]
    fn format_canonical() {
        assert_eq!(p("x^3-16x^2+68x-80").to_string(), "x^3 - 16x^2 + 68x - 80");
        assert_eq!(p("-2x+4").to_string(), "-2x + 4");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
        assert_eq!(p("x^2 + 1").to_string(), "x^2 + 1");
    }

    #[test]
    fn product_examples() {
        assert_eq!(product(&[]), IntPoly::one());
        assert_eq!(product(&[p("x"), p("x-1")]), p("x^2-x"));
        assert_eq!(product(&[p("x-4"), p("x-2"), p("x-10")]), p("x^3-16x^2+68x-80"));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p("x^2-x").evaluate_at(3), BigInt::from(6));
        assert_eq!(IntPoly::zero().evaluate_at(1_000_000_000), BigInt::zero());
        assert_eq!(p("x^3-16x^2+68x-80").evaluate_at(0), BigInt::from(-80));
    }

    #[test]
    fn content_examples() {
        assert_eq!(p("2x^2+4").content(), BigUint::from(2u32));
        assert_eq!(p("x^2-x").content(), BigUint::one());
        assert_eq!(IntPoly::zero().content(), BigUint::zero());
    }

    #[test]
    fn primitive_part_examples() {
        assert_eq!(p("-2x+4").primitive_part().unwrap(), (-1, p("x-2"), BigUint::from(2u32)));
        assert_eq!(p("x^2-x").primitive_part().unwrap(), (1, p("x^2-x"), BigUint::one()));
        assert_eq!(p("6").primitive_part().unwrap(), (1, IntPoly::one(), BigUint::from(6u32)));
        assert_eq!(IntPoly::zero().primitive_part(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(p("x^2-x").binomial_coefficients(), big(&[0, 0, 2]));
        assert_eq!(p("7").binomial_coefficients(), big(&[7]));
        assert_eq!(p("x").binomial_coefficients(), big(&[0, 1]));
        assert!(IntPoly::zero().binomial_coefficients().is_empty());
    }

    #[test]
    fn binomial_inverse_of_fractional_coordinates() {
        // C(x,2) = (x^2 - x)/2
        let r = IntPoly::from_binomial_coefficients(&big(&[0, 0, 1]));
        assert_eq!(r.numerator, p("x^2-x"));
        assert_eq!(r.denominator, BigUint::from(2u32));
    }

    #[test]
    fn from_roots_examples() {
        assert_eq!(from_roots(&big(&[0, 1])), p("x^2-x"));
        assert_eq!(from_roots(&[]), IntPoly::one());
        assert_eq!(from_roots(&big(&[4, 2, 10])), p("x^3-16x^2+68x-80"));
        assert_eq!(from_roots(&big(&[3, 3])), p("x^2-6x+9"));
    }

    #[test]
    fn json_is_decimal_strings() {
        let f = p("x^2 - 12345678901234567890123");
        let j = serde_json::to_string(&f).unwrap();
        assert_eq!(j, r#"["-12345678901234567890123","0","1"]"#);
        let back: IntPoly = serde_json::from_str(&j).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn rational_normalizes() {
        let r = RationalPoly::new(p("2x^2-2x"), BigUint::from(4u32));
        assert_eq!(r.numerator, p("x^2-x"));
        assert_eq!(r.denominator, BigUint::from(2u32));
    }
}
