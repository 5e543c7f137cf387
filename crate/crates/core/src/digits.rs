//! Digit streams, certified truncation intervals and eventually periodic
//! expansions.
//!
//! A stream `a_0 a_1 a_2 ...` is read as the fractional expansion
//! `0.a_0 a_1 a_2 ...`, so fractional digit `t >= 1` is `a_{t-1}`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::automaton::Dfao;
use crate::cobham::MorphicRepr;
use crate::error::{Error, Result};
use crate::exact::{self, Interval};
use crate::words::Word;

/// Anything that yields the terms `a_0, a_1, ...` of a digit sequence.
pub trait DigitSource: Sync {
    /// The first `len` terms as integers.
    fn terms(&self, len: usize) -> Result<Vec<u32>>;

    /// The first `len` terms, each checked to be a digit below `base`.
    fn digits(&self, base: u32, len: usize) -> Result<Vec<u32>> {
        let terms = self.terms(len)?;
        if let Some(&bad) = terms.iter().find(|&&d| d >= base) {
            return Err(Error::NotADigit(bad.to_string(), base));
        }
        Ok(terms)
    }
}

fn word_terms(w: &Word) -> Result<Vec<u32>> {
    w.to_digits(u32::MAX)
}

impl DigitSource for Dfao {
    fn terms(&self, len: usize) -> Result<Vec<u32>> {
        word_terms(&self.sequence_prefix(len))
    }
}

impl DigitSource for MorphicRepr {
    fn terms(&self, len: usize) -> Result<Vec<u32>> {
        word_terms(&self.sequence_prefix(len))
    }
}

impl DigitSource for Word {
    fn terms(&self, len: usize) -> Result<Vec<u32>> {
        if len > self.len() {
            return Err(Error::StreamExhausted {
                needed: len,
                available: self.len(),
            });
        }
        word_terms(&self.prefix(len))
    }
}

impl DigitSource for [u32] {
    fn terms(&self, len: usize) -> Result<Vec<u32>> {
        self.get(..len)
            .map(<[u32]>::to_vec)
            .ok_or(Error::StreamExhausted {
                needed: len,
                available: self.len(),
            })
    }
}

impl DigitSource for Vec<u32> {
    fn terms(&self, len: usize) -> Result<Vec<u32>> {
        self.as_slice().terms(len)
    }
}

/// Exact enclosure of every real whose expansion starts with the given digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncationInterval {
    #[serde(serialize_with = "ser_rational")]
    pub lo: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: BigRational,
    /// Number of fractional digits fixed by the enclosure; `hi - lo = base^-depth`.
    pub depth: usize,
    pub base: u32,
}

fn ser_rational<S: serde::Serializer>(
    x: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&exact::format_rational(x))
}

/// `sum d_i b^(len-1-i)`, the integer written by `digits`.
pub fn digits_to_int(digits: &[u32], base: u32) -> BigUint {
    let b = BigUint::from(base);
    digits.iter().fold(BigUint::zero(), |acc, &d| acc * &b + d)
}

impl TruncationInterval {
    /// `[0.d_1...d_N, 0.d_1...d_N + b^-N]` for fractional digits `d_1..d_N`.
    pub fn from_digits(base: u32, digits: &[u32]) -> Result<TruncationInterval> {
        TruncationInterval::with_offset(base, digits, 1)
    }

    /// Enclosure of `sum_n a_n b^-(n + offset)` given `a_0..a_{N-1}`.
    pub fn with_offset(base: u32, terms: &[u32], offset: usize) -> Result<TruncationInterval> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        if offset == 0 {
            return Err(Error::Precondition(
                "digit offset must be at least 1".into(),
            ));
        }
        if let Some(&bad) = terms.iter().find(|&&d| d >= base) {
            return Err(Error::NotADigit(bad.to_string(), base));
        }
        let depth = terms.len() + offset - 1;
        let num = digits_to_int(terms, base);
        let den = exact::big_pow(base, depth);
        let lo = BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()));
        let hi = BigRational::new(BigInt::from(num + 1u32), BigInt::from(den));
        Ok(TruncationInterval {
            lo,
            hi,
            depth,
            base,
        })
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// True when every point of the enclosure lies strictly farther than
    /// `bound` from `x`.
    pub fn separated_from(&self, x: &BigRational, bound: &BigRational) -> bool {
        let d = self.interval().distance_to(x);
        d.lo > *bound
    }
}

/// `[lo, hi]` enclosing `0.a_0 a_1 ... a_{N-1} ...` for the first `len` terms of `source`.
pub fn truncation_interval(
    source: &(impl DigitSource + ?Sized),
    base: u32,
    len: usize,
) -> Result<TruncationInterval> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    TruncationInterval::from_digits(base, &source.digits(base, len)?)
}

/// The rational `0.U V V V ...` in base `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicRational {
    pub u: Vec<u32>,
    pub v: Vec<u32>,
    pub base: u32,
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
}

impl PeriodicRational {
    pub fn new(u: Vec<u32>, v: Vec<u32>, base: u32) -> Result<PeriodicRational> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        if v.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&bad) = u.iter().chain(v.iter()).find(|&&d| d >= base) {
            return Err(Error::NotADigit(bad.to_string(), base));
        }
        let mut uv = u.clone();
        uv.extend_from_slice(&v);
        let num = BigInt::from(digits_to_int(&uv, base)) - BigInt::from(digits_to_int(&u, base));
        let den = BigInt::from(Self::denominator_of(base, u.len(), v.len()));
        Ok(PeriodicRational {
            value: BigRational::new(num, den),
            u,
            v,
            base,
        })
    }

    pub fn from_words(u: &Word, v: &Word, base: u32) -> Result<PeriodicRational> {
        PeriodicRational::new(u.to_digits(base)?, v.to_digits(base)?, base)
    }

    /// `b^r (b^s - 1)`.
    pub fn denominator_of(base: u32, r: usize, s: usize) -> BigUint {
        exact::big_pow(base, r) * (exact::big_pow(base, s) - 1u32)
    }

    pub fn r(&self) -> usize {
        self.u.len()
    }

    pub fn s(&self) -> usize {
        self.v.len()
    }

    /// The unreduced denominator `b^r (b^s - 1)` attached to the expansion.
    pub fn q(&self) -> BigUint {
        Self::denominator_of(self.base, self.r(), self.s())
    }

    /// The matching numerator over [`PeriodicRational::q`].
    pub fn p(&self) -> BigUint {
        let scaled = &self.value * BigRational::from_integer(BigInt::from(self.q()));
        scaled
            .to_integer()
            .to_biguint()
            .expect("value is non-negative")
    }

    /// Fractional digit `t >= 1` of the expansion as written.
    pub fn digit(&self, t: usize) -> u32 {
        assert!(t >= 1, "digits are indexed from 1");
        let i = t - 1;
        if i < self.u.len() {
            self.u[i]
        } else {
            self.v[(i - self.u.len()) % self.v.len()]
        }
    }

    /// The first `len` fractional digits as written.
    pub fn expansion(&self, len: usize) -> Vec<u32> {
        (1..=len).map(|t| self.digit(t)).collect()
    }
}

pub fn periodic_value(u: &[u32], v: &[u32], base: u32) -> Result<PeriodicRational> {
    PeriodicRational::new(u.to_vec(), v.to_vec(), base)
}

/// Smallest `t <= limit` where two digit sequences (indexed from 1) differ.
pub fn first_difference(
    a: impl Fn(usize) -> u32,
    b: impl Fn(usize) -> u32,
    limit: usize,
) -> Option<usize> {
    (1..=limit).find(|&t| a(t) != b(t))
}

/// First fractional position `j <= limit` where the written expansion of `x`
/// and the stream `0.a_0 a_1 ...` differ.
pub fn digit_agreement(
    x: &PeriodicRational,
    source: &(impl DigitSource + ?Sized),
    limit: usize,
) -> Result<Option<usize>> {
    let stream = source.digits(x.base, limit)?;
    Ok(first_difference(|t| x.digit(t), |t| stream[t - 1], limit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn truncation_intervals() {
        let tm = truncation_interval(&fixtures::thue_morse(), 2, 4).unwrap();
        assert_eq!((tm.lo.clone(), tm.hi.clone()), (rat(3, 8), rat(7, 16)));
        let empty = truncation_interval(&fixtures::thue_morse(), 2, 0).unwrap();
        assert_eq!((empty.lo, empty.hi), (rat(0, 1), rat(1, 1)));
        let bs = truncation_interval(&fixtures::baum_sweet(), 10, 3).unwrap();
        assert_eq!((bs.lo, bs.hi), (rat(110, 1000), rat(111, 1000)));
        assert!(matches!(
            truncation_interval(&fixtures::baum_sweet(), 1, 3),
            Err(Error::InvalidBase(1))
        ));
        let big = vec![0u32, 5];
        assert!(matches!(
            truncation_interval(&big, 2, 2),
            Err(Error::NotADigit(..))
        ));
    }

    #[test]
    fn offsets() {
        // the same terms read as a_0 + 0.a_1 a_2 ... with offset 0 is rejected; offset 2 shifts once more
        let t = TruncationInterval::with_offset(10, &[1, 2], 2).unwrap();
        assert_eq!((t.lo, t.hi, t.depth), (rat(12, 1000), rat(13, 1000), 3));
        assert!(TruncationInterval::with_offset(10, &[1], 0).is_err());
    }

    #[test]
    fn periodic_values() {
        assert_eq!(periodic_value(&[1], &[3], 10).unwrap().value, rat(2, 15));
        assert_eq!(periodic_value(&[], &[9], 10).unwrap().value, rat(1, 1));
        let x = periodic_value(&[], &[0, 1, 1, 0, 1, 0], 2).unwrap();
        assert_eq!(x.value, rat(26, 63));
        assert_eq!(x.q(), BigUint::from(63u32));
        assert_eq!(x.p(), BigUint::from(26u32));
        assert!(matches!(
            periodic_value(&[1], &[], 10),
            Err(Error::EmptyWord)
        ));
        // improper expansion carried into the preperiod
        assert_eq!(periodic_value(&[1], &[9], 10).unwrap().value, rat(2, 10));
    }

    #[test]
    fn agreement() {
        let x = periodic_value(&[], &[1], 2).unwrap();
        assert_eq!(digit_agreement(&x, &vec![1, 0, 1, 1], 4).unwrap(), Some(2));
        let own = x.expansion(50);
        assert_eq!(digit_agreement(&x, &own, 50).unwrap(), None);
        let y = periodic_value(&[1, 2], &[3], 10).unwrap();
        let stream = vec![1, 2, 3, 3, 4];
        assert_eq!(digit_agreement(&y, &stream, 5).unwrap(), Some(5));
        assert_eq!(digit_agreement(&y, &stream, 4).unwrap(), None);
    }

    proptest! {
        #[test]
        fn period_doubling(u in prop::collection::vec(0u32..3, 0..6), v in prop::collection::vec(0u32..3, 1..6)) {
            let vv: Vec<u32> = v.iter().chain(v.iter()).copied().collect();
            let a = periodic_value(&u, &v, 3).unwrap();
            let b = periodic_value(&u, &vv, 3).unwrap();
            prop_assert_eq!(&a.value, &b.value);
            prop_assert!(a.value >= rat(0, 1) && a.value <= rat(1, 1));
            let q = BigInt::from(a.q());
            prop_assert!((q % a.value.denom()).is_zero());
        }

        #[test]
        fn nesting(d in prop::collection::vec(0u32..10, 0..30), next in 0u32..10) {
            let outer = TruncationInterval::from_digits(10, &d).unwrap();
            let mut longer = d.clone();
            longer.push(next);
            let inner = TruncationInterval::from_digits(10, &longer).unwrap();
            prop_assert!(outer.lo <= inner.lo && inner.hi <= outer.hi);
            prop_assert_eq!(inner.width() * rat(10, 1), outer.width());
        }

        #[test]
        fn agreement_symmetric_and_monotone(a in prop::collection::vec(0u32..2, 1..40), b in prop::collection::vec(0u32..2, 1..40)) {
            let limit = a.len().min(b.len());
            let ab = first_difference(|t| a[t - 1], |t| b[t - 1], limit);
            let ba = first_difference(|t| b[t - 1], |t| a[t - 1], limit);
            prop_assert_eq!(ab, ba);
            if let Some(j) = first_difference(|t| a[t - 1], |t| b[t - 1], limit / 2) {
                prop_assert_eq!(ab, Some(j));
            }
        }
    }
}
