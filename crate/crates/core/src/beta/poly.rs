//! Integer polynomials with ascending coefficients, plus the rational helpers
//! used for real-root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::contfrac::parse_integer_array;
use crate::error::Result;

/// `c_0 + c_1 X + ... + c_l X^l`; trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Parses an ascending JSON integer array such as `[-1, -1, 1]`.
    pub fn parse_json(text: &str) -> Result<IntPoly> {
        Ok(IntPoly::new(parse_integer_array(text)?))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPoly {
        let mut g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        if self.coeffs.last().is_some_and(Signed::is_negative) {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub(crate) fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// `1 + max |c_i|` for a monic polynomial: every root has modulus below it.
    pub fn cauchy_bound(&self) -> BigInt {
        let lead = self
            .coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one)
            .abs();
        let m = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        BigInt::one() + m.div_ceil(&lead)
    }

    /// A monic factor of degree 1 or 2 (up to half the degree), if trial
    /// division finds one. Larger factors are not searched for.
    pub fn small_factor(&self) -> Option<IntPoly> {
        let l = self.degree()?;
        if l < 2 || !self.is_monic() {
            return None;
        }
        if self.coeffs[0].is_zero() {
            return Some(IntPoly::from_i64(&[0, 1]));
        }
        let bound = self.cauchy_bound().to_i64().filter(|&b| b <= 1_000)?;
        let c0 = self.coeffs[0]
            .abs()
            .to_u64()
            .filter(|&c| c <= 1_000_000_000_000)?;
        let divisors = signed_divisors(c0);
        for &t in &divisors {
            if self.eval_int(&BigInt::from(-t)).is_zero() {
                return Some(IntPoly::from_i64(&[t, 1]));
            }
        }
        if l >= 4 {
            for &b in divisors
                .iter()
                .filter(|b| b.unsigned_abs() <= (bound * bound) as u64)
            {
                for a in -2 * bound..=2 * bound {
                    let f = IntPoly::from_i64(&[b, a, 1]);
                    if self.to_rat().rem(&f.to_rat()).is_zero() {
                        return Some(f);
                    }
                }
            }
        }
        None
    }
}

fn signed_divisors(n: u64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            for e in [d, n / d] {
                out.push(e as i64);
                out.push(-(e as i64));
            }
        }
        d += 1;
    }
    out.sort_by_key(|x| (x.unsigned_abs(), *x < 0));
    out.dedup();
    out
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("X")?,
                (1, false) => write!(f, "{a}X")?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "{a}X^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Rational polynomial, ascending, trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RatPoly {
    pub(crate) coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub(crate) fn new(mut coeffs: Vec<BigRational>) -> RatPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub(crate) fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub(crate) fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub(crate) fn rem(&self, d: &RatPoly) -> RatPoly {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.last().expect("non-zero divisor");
        let dd = d.degree();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let q = &r[top] / dl;
            if !q.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    r[top - dd + i] -= &q * c;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        RatPoly::new(r)
    }

    fn neg(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Sturm chain of a square-free polynomial.
pub(crate) struct Sturm {
    chain: Vec<RatPoly>,
}

impl Sturm {
    pub(crate) fn new(p: &RatPoly) -> Sturm {
        let mut chain = vec![p.clone(), p.derivative()];
        while !chain.last().expect("non-empty").is_zero() {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        chain.retain(|q| !q.is_zero());
        Sturm { chain }
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| sign_of(&p.eval(x))))
    }

    fn at_infinity(&self) -> usize {
        Self::variations(
            self.chain
                .iter()
                .map(|p| sign_of(p.coeffs.last().expect("non-zero"))),
        )
    }

    /// Number of distinct real roots in `(a, b]`.
    pub(crate) fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.at(a) - self.at(b)
    }

    /// Number of distinct real roots in `(a, inf)`.
    pub(crate) fn count_above(&self, a: &BigRational) -> usize {
        self.at(a) - self.at_infinity()
    }
}

pub(crate) fn sign_of(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn basics() {
        let p = IntPoly::from_i64(&[-1, -1, 1, 0]);
        assert_eq!(p.degree(), Some(2));
        assert!(p.is_monic());
        assert_eq!(p.to_string(), "X^2 - X - 1");
        assert_eq!(
            IntPoly::from_i64(&[1, -1, -1, -1, 1]).to_string(),
            "X^4 - X^3 - X^2 - X + 1"
        );
        assert_eq!(p.eval(&rat(2, 1)), rat(1, 1));
        assert_eq!(
            IntPoly::from_i64(&[4, -6, 2]).primitive_part(),
            IntPoly::from_i64(&[2, -3, 1])
        );
        assert_eq!(
            IntPoly::from_i64(&[-4, 6, -2]).primitive_part(),
            IntPoly::from_i64(&[2, -3, 1])
        );
        assert_eq!(IntPoly::parse_json("[-1, -1, 1]").unwrap(), p);
    }

    #[test]
    fn factors() {
        assert_eq!(IntPoly::from_i64(&[-1, -1, 1]).small_factor(), None);
        assert_eq!(IntPoly::from_i64(&[-1, -1, 0, 1]).small_factor(), None);
        // (X - 2)(X^2 + 1)
        assert_eq!(
            IntPoly::from_i64(&[-2, 1, -2, 1]).small_factor(),
            Some(IntPoly::from_i64(&[-2, 1]))
        );
        // (X^2 + X + 1)(X^2 - 3X + 1) = X^4 - 2X^3 - X^2 - 2X + 1
        let f = IntPoly::from_i64(&[1, -2, -1, -2, 1])
            .small_factor()
            .unwrap();
        assert_eq!(f.degree(), Some(2));
        assert_eq!(IntPoly::from_i64(&[1, -1, -1, -1, 1]).small_factor(), None);
    }

    #[test]
    fn sturm_counts() {
        // (X - 1)(X - 2)(X + 3) = X^3 - 7X + 6
        let p = IntPoly::from_i64(&[6, -7, 0, 1]).to_rat();
        let s = Sturm::new(&p);
        assert_eq!(s.count(&rat(-10, 1), &rat(10, 1)), 3);
        assert_eq!(s.count(&rat(0, 1), &rat(3, 2)), 1);
        assert_eq!(s.count_above(&rat(3, 2)), 1);
        assert_eq!(s.count_above(&rat(2, 1)), 0);
    }
}
