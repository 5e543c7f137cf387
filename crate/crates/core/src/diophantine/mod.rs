//! Irrationality-measure machinery: approximant ladders, the Lemma-style
//! separation bound, the Thue-Morse-Mahler verifier and empirical exponents.
//!
//! Every `holds` flag is decided by [`exact::pow_cmp`]. Margins are grid
//! brackets of the relevant exponent and are informative only.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::digits::DigitSource;
use crate::error::{Error, Result};
use crate::exact::{self, Interval};

mod conditions;
mod dist;
mod exponent;
mod ladder;
mod tmm;

pub use conditions::{
    ladder_conditions_report, ConditionMode, ConditionParams, ConditionRecord, ConditionReport,
    ConditionRow, BAKER_CONCLUSION,
};
pub use dist::{lemma_dist_check, LemmaDistReport};
pub use exponent::{
    empirical_exponent, empirical_exponent_with_grid, ConvergentExponent, ExponentReport,
};
pub use ladder::{
    build_ladder, build_ladder_with, overlap_ladder, overlap_ladder_with, ApproximantRecord,
    LadderConfig, LadderKind, LadderReport, ReportRow,
};
pub use tmm::{tmm_verify, TmmReport};

/// Default exponent grid step denominator.
pub const GRID: u64 = 64;

/// Default cap on digit-stream depth.
pub const DEFAULT_MAX_DEPTH: usize = 1 << 22;

/// `d k (k^m + 1)`.
pub fn measure_bound(d: u64, k: u64, m: u32) -> Result<BigUint> {
    if d < 1 || k < 2 || m < 1 {
        return Err(Error::Precondition(format!(
            "measure_bound needs d >= 1, k >= 2, m >= 1 (got {d}, {k}, {m})"
        )));
    }
    let km = num_traits::pow(BigUint::from(k), m as usize);
    Ok(BigUint::from(d) * k * (km + 1u32))
}

/// Grid bracket of `log x_{n+1} / log x_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthBracket {
    pub n: usize,
    #[serde(serialize_with = "ser_rational")]
    pub lo: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: BigRational,
}

/// Outcome of one certified inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub holds: bool,
    /// Exponent slack on the grid; `None` when the enclosure gives no bound.
    #[serde(serialize_with = "ser_opt_rational")]
    pub margin: Option<BigRational>,
}

pub(crate) fn ser_opt_rational<S: serde::Serializer>(
    x: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&exact::format_rational(x)),
        None => s.serialize_none(),
    }
}

pub(crate) fn ser_rational<S: serde::Serializer>(
    x: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&exact::format_rational(x))
}

pub(crate) fn split(e: &BigRational) -> (u64, u64) {
    use num_traits::ToPrimitive;
    let n = e.numer().to_u64().expect("exponent numerator fits u64");
    let d = e.denom().to_u64().expect("exponent denominator fits u64");
    (n, d)
}

/// `dist < base^(-e)` for every point of the enclosure.
pub(crate) fn below_power(
    dist: &Interval,
    base: &BigRational,
    e: &BigRational,
    grid: u64,
) -> Check {
    let (num, den) = split(e);
    // dist^den < (1/base)^num
    let holds = pow_cmp_upper(&dist.hi, den, &base.recip(), num);
    let (lower, _) = decay_exponent_bracket(dist, base, grid);
    Check {
        holds,
        margin: Some(lower - e),
    }
}

/// `dist > base^(-e)` (or `>=` when `strict` is false) for every point of the enclosure.
pub(crate) fn above_power(
    dist: &Interval,
    base: &BigRational,
    e: &BigRational,
    strict: bool,
    grid: u64,
) -> Check {
    let (num, den) = split(e);
    let ord = exact::pow_cmp(&dist.lo, den, &base.recip(), num);
    let holds = if strict {
        ord == Ordering::Greater
    } else {
        ord != Ordering::Less
    };
    let (_, upper) = decay_exponent_bracket(dist, base, grid);
    Check {
        holds,
        margin: upper.map(|u| e - u),
    }
}

/// Whether the enclosure decides `dist < base^(-e)` one way or the other.
pub(crate) fn below_decided(dist: &Interval, base: &BigRational, e: &BigRational) -> bool {
    let (num, den) = split(e);
    let inv = base.recip();
    pow_cmp_upper(&dist.hi, den, &inv, num)
        || exact::pow_cmp(&dist.lo, den, &inv, num) != Ordering::Less
}

/// Whether the enclosure decides `dist > base^(-e)`.
pub(crate) fn above_decided(dist: &Interval, base: &BigRational, e: &BigRational) -> bool {
    let (num, den) = split(e);
    let inv = base.recip();
    exact::pow_cmp(&dist.lo, den, &inv, num) == Ordering::Greater
        || exact::pow_cmp(&dist.hi, den, &inv, num) != Ordering::Greater
}

fn pow_cmp_upper(x: &BigRational, a: u64, y: &BigRational, b: u64) -> bool {
    exact::pow_cmp(x, a, y, b) == Ordering::Less
}

fn decay_exponent_bracket(
    dist: &Interval,
    base: &BigRational,
    grid: u64,
) -> (BigRational, Option<BigRational>) {
    let one = BigRational::one();
    let lo = if dist.lo >= one {
        one.clone()
    } else {
        dist.lo.clone()
    };
    let hi = if dist.hi >= one { one } else { dist.hi.clone() };
    exact::decay_exponent_bracket(&lo, &hi, base, grid)
}

/// Digit prefix of a source, extended by doubling up to a cap.
pub(crate) struct DigitStream<'a, S: DigitSource + ?Sized> {
    source: &'a S,
    base: u32,
    digits: Vec<u32>,
    cap: usize,
}

impl<'a, S: DigitSource + ?Sized> DigitStream<'a, S> {
    pub(crate) fn new(source: &'a S, base: u32, cap: usize) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        Ok(DigitStream {
            source,
            base,
            digits: Vec::new(),
            cap,
        })
    }

    pub(crate) fn ensure(&mut self, len: usize) -> Result<&[u32]> {
        if len > self.cap {
            return Err(Error::StreamExhausted {
                needed: len,
                available: self.cap,
            });
        }
        if len > self.digits.len() {
            let target = len.max(2 * self.digits.len()).min(self.cap);
            self.digits = self.source.digits(self.base, target)?;
        }
        Ok(&self.digits[..len])
    }

    /// Closed enclosure of `0.a_0 a_1 ...` from the first `len` digits.
    pub(crate) fn interval(&mut self, len: usize) -> Result<Interval> {
        let base = self.base;
        let digits = self.ensure(len)?;
        Ok(crate::digits::TruncationInterval::from_digits(base, digits)?.interval())
    }

    pub(crate) fn cap(&self) -> usize {
        self.cap
    }
}

/// Smallest period `<= window` of the last half of `digits`; used only to warn.
pub(crate) fn eventual_period(digits: &[u32], window: usize) -> Option<usize> {
    let half = digits.len() / 2;
    let tail = &digits[half..];
    (1..=window.min(tail.len() / 2)).find(|&p| (p..tail.len()).all(|i| tail[i] == tail[i - p]))
}

pub(crate) fn rational_of(n: &BigUint) -> BigRational {
    BigRational::from_integer(n.clone().into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn bound_values() {
        assert_eq!(measure_bound(2, 2, 2).unwrap(), BigUint::from(20u32));
        assert_eq!(measure_bound(3, 2, 5).unwrap(), BigUint::from(198u32));
        assert_eq!(measure_bound(1, 2, 1).unwrap(), BigUint::from(6u32));
        assert!(measure_bound(0, 2, 1).is_err());
        assert!(measure_bound(1, 1, 1).is_err());
        assert!(measure_bound(1, 2, 0).is_err());
    }

    #[test]
    fn power_checks() {
        let d = Interval::new(rat(1, 1000), rat(1, 999));
        let ten = rat(10, 1);
        assert!(below_power(&d, &ten, &rat(2, 1), GRID).holds);
        assert!(!below_power(&d, &ten, &rat(3, 1), GRID).holds);
        assert!(above_power(&d, &ten, &rat(4, 1), true, GRID).holds);
        // 1/1000 is exactly 10^-3: strict fails, non-strict holds
        assert!(!above_power(&d, &ten, &rat(3, 1), true, GRID).holds);
        assert!(above_power(&d, &ten, &rat(3, 1), false, GRID).holds);
        let zero = Interval::new(rat(0, 1), rat(1, 10));
        let c = above_power(&zero, &ten, &rat(5, 1), true, GRID);
        assert!(!c.holds && c.margin.is_none());
    }

    #[test]
    fn periods() {
        assert_eq!(eventual_period(&[1, 0, 1, 0, 1, 0, 1, 0], 4), Some(2));
        assert_eq!(eventual_period(&[0, 1, 1, 0, 1, 0, 0, 1], 4), None);
    }
}
