//! Exact rational helpers shared by the certification code.
//!
//! Every `holds` flag in the crate is decided here, by integer arithmetic.
//! Comparisons of the form `x^a < y^b` first try a cheap dyadic enclosure
//! (128-bit mantissas with directed rounding) and fall back to full
//! big-integer powers only when the enclosures overlap.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PREC: u64 = 128;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn big_pow(base: u32, exp: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), exp)
}

/// `base^(-exp)` as a rational.
pub fn inv_pow(base: u32, exp: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(big_pow(base, exp)))
}

pub fn rat_pow(x: &BigRational, exp: u64) -> BigRational {
    let n = num_traits::pow(x.numer().clone(), exp as usize);
    let d = num_traits::pow(x.denom().clone(), exp as usize);
    BigRational::new(n, d)
}

/// Parses `"num/den"` or a plain integer. Whitespace around the parts is ignored.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(n, d))
}

pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Wire form of a rational: `{"num": "...", "den": "..."}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalJson {
    fn from(x: &BigRational) -> Self {
        RationalJson {
            num: x.numer().to_string(),
            den: x.denom().to_string(),
        }
    }
}

impl TryFrom<&RationalJson> for BigRational {
    type Error = Error;

    fn try_from(j: &RationalJson) -> Result<Self> {
        parse_rational(&format!("{}/{}", j.num, j.den))
    }
}

/// Approximate `log2(x)` for `x > 0`; used only to seed exact searches.
pub fn log2_approx(x: &BigRational) -> f64 {
    log2_int(x.numer().magnitude()) - log2_int(x.denom().magnitude())
}

fn log2_int(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return n.to_f64().unwrap_or(0.0).log2();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(1.0);
    top.log2() + shift as f64
}

/// Enclosure `[lo, hi] * 2^exp` of a positive rational.
#[derive(Debug, Clone)]
struct Dyadic {
    lo: BigUint,
    hi: BigUint,
    exp: i64,
}

impl Dyadic {
    fn of(x: &BigRational) -> Dyadic {
        let n = x.numer().magnitude();
        let d = x.denom().magnitude();
        let shift = PREC as i64 - (n.bits() as i64 - d.bits() as i64);
        let (q, r) = if shift >= 0 {
            (n << (shift as u64)).div_rem(d)
        } else {
            n.div_rem(&(d << ((-shift) as u64)))
        };
        let hi = if r.is_zero() { q.clone() } else { &q + 1u32 };
        Dyadic {
            lo: q,
            hi,
            exp: -shift,
        }
    }

    fn truncate(mut self) -> Dyadic {
        let bits = self.hi.bits();
        if bits > PREC + 8 {
            let t = bits - PREC;
            let mask = (BigUint::one() << t) - 1u32;
            let round_up = !(&self.hi & &mask).is_zero();
            self.lo >>= t;
            self.hi >>= t;
            if round_up {
                self.hi += 1u32;
            }
            self.exp += t as i64;
        }
        self
    }

    fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
            exp: self.exp + other.exp,
        }
        .truncate()
    }

    fn pow(&self, mut e: u64) -> Dyadic {
        let mut acc = Dyadic {
            lo: BigUint::one(),
            hi: BigUint::one(),
            exp: 0,
        };
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `Some(Less)` when every point of `self` is below every point of `other`.
    fn separate(&self, other: &Dyadic) -> Option<Ordering> {
        if lt_scaled(&self.hi, self.exp, &other.lo, other.exp) {
            Some(Ordering::Less)
        } else if lt_scaled(&other.hi, other.exp, &self.lo, self.exp) {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

/// `a * 2^ea < b * 2^eb`, strictly.
fn lt_scaled(a: &BigUint, ea: i64, b: &BigUint, eb: i64) -> bool {
    if a.is_zero() {
        return !b.is_zero();
    }
    if b.is_zero() {
        return false;
    }
    let top_a = a.bits() as i64 + ea; // a*2^ea < 2^top_a
    let bot_b = b.bits() as i64 - 1 + eb; // b*2^eb >= 2^bot_b
    if top_a <= bot_b {
        return true;
    }
    let top_b = b.bits() as i64 + eb;
    let bot_a = a.bits() as i64 - 1 + ea;
    if top_b <= bot_a {
        return false;
    }
    let m = ea.min(eb);
    (a << ((ea - m) as u64)) < (b << ((eb - m) as u64))
}

/// Exact comparison of `x^a` with `y^b` for non-negative rationals.
pub fn pow_cmp(x: &BigRational, a: u64, y: &BigRational, b: u64) -> Ordering {
    assert!(
        !x.is_negative() && !y.is_negative(),
        "pow_cmp needs x, y >= 0"
    );
    let x_zero = x.is_zero() && a > 0;
    let y_zero = y.is_zero() && b > 0;
    match (x_zero, y_zero) {
        (true, true) => return Ordering::Equal,
        (true, false) => return Ordering::Less,
        (false, true) => return Ordering::Greater,
        _ => {}
    }
    if let Some(ord) = Dyadic::of(x).pow(a).separate(&Dyadic::of(y).pow(b)) {
        return ord;
    }
    let lhs = num_traits::pow(x.numer().magnitude().clone(), a as usize)
        * num_traits::pow(y.denom().magnitude().clone(), b as usize);
    let rhs = num_traits::pow(y.numer().magnitude().clone(), b as usize)
        * num_traits::pow(x.denom().magnitude().clone(), a as usize);
    lhs.cmp(&rhs)
}

/// Grid bracket `[lo, hi]` (step `1/den`) of `log(x) / log(y)` for `x, y > 1`.
///
/// `lo` is the largest grid point with `y^lo <= x`, `hi` the smallest with `y^hi >= x`.
pub fn log_ratio_bracket(x: &BigRational, y: &BigRational, den: u64) -> (BigRational, BigRational) {
    let one = BigRational::one();
    assert!(
        *x > one && *y > one && den > 0,
        "log_ratio_bracket needs x, y > 1"
    );
    let estimate = log2_approx(x) / log2_approx(y) * den as f64;
    let mut i = estimate.floor().max(0.0) as u64;
    // y^(i/den) <= x  <=>  y^i <= x^den
    let below = |i: u64| pow_cmp(y, i, x, den) != Ordering::Greater;
    while i > 0 && !below(i) {
        i -= 1;
    }
    while below(i + 1) {
        i += 1;
    }
    let lo = BigRational::new(BigInt::from(i), BigInt::from(den));
    let hi = if pow_cmp(y, i, x, den) == Ordering::Equal {
        lo.clone()
    } else {
        BigRational::new(BigInt::from(i + 1), BigInt::from(den))
    };
    (lo, hi)
}

/// Certified grid bracket of the exponent `tau` in `dist = base^(-tau)`, given an
/// enclosure `dist in [lo, hi]` with `0 <= lo <= hi < 1`. A zero lower end
/// leaves the upper exponent unbounded (`None`).
pub fn decay_exponent_bracket(
    lo: &BigRational,
    hi: &BigRational,
    base: &BigRational,
    den: u64,
) -> (BigRational, Option<BigRational>) {
    let one = BigRational::one();
    let lower = if hi.is_zero() || *hi >= one {
        BigRational::zero()
    } else {
        log_ratio_bracket(&hi.recip(), base, den).0
    };
    let upper = if lo.is_zero() {
        None
    } else if *lo >= one {
        Some(BigRational::zero())
    } else {
        Some(log_ratio_bracket(&lo.recip(), base, den).1)
    };
    (lower, upper)
}

/// Ceiling of a rational.
pub fn ceil(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

/// Floor of a rational.
pub fn floor(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

pub fn to_usize(x: &BigInt) -> Option<usize> {
    if x.sign() == Sign::Minus {
        None
    } else {
        x.to_usize()
    }
}

/// Closed rational interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Interval {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Interval {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// Enclosure of `|t - x|` over all `t` in the interval.
    pub fn distance_to(&self, x: &BigRational) -> Interval {
        if *x < self.lo {
            Interval::new(&self.lo - x, &self.hi - x)
        } else if *x > self.hi {
            Interval::new(x - &self.hi, x - &self.lo)
        } else {
            let far = (x - &self.lo).max(&self.hi - x);
            Interval::new(BigRational::zero(), far)
        }
    }

    /// Enclosure of `|s - t|` for `s` in `self`, `t` in `other`.
    pub fn distance_between(&self, other: &Interval) -> Interval {
        let far = (&self.hi - &other.lo)
            .abs()
            .max((&other.hi - &self.lo).abs());
        let near = if self.hi < other.lo {
            &other.lo - &self.hi
        } else if other.hi < self.lo {
            &self.lo - &other.hi
        } else {
            BigRational::zero()
        };
        Interval::new(near, far)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("1/4").unwrap(), rat(1, 4));
        assert_eq!(parse_rational(" -6 / 8 ").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
        assert_eq!(format_rational(&rat(6, 8)), "3/4");
        assert_eq!(format_rational(&rat(4, 2)), "2");
    }

    #[test]
    fn pow_cmp_matches_direct_powers() {
        let cases = [
            (rat(3, 2), 5, rat(5, 2), 3),
            (rat(2, 1), 10, rat(32, 1), 2),
            (rat(1, 3), 4, rat(1, 9), 2),
        ];
        for (x, a, y, b) in cases {
            let direct = rat_pow(&x, a).cmp(&rat_pow(&y, b));
            assert_eq!(pow_cmp(&x, a, &y, b), direct, "{x}^{a} vs {y}^{b}");
        }
    }

    #[test]
    fn pow_cmp_on_huge_values_uses_enclosures() {
        // 2^4000 vs 3^2523 (3^2523 < 2^4000 < 3^2524)
        let two = int(2);
        let three = int(3);
        assert_eq!(pow_cmp(&two, 4000, &three, 2523), Ordering::Greater);
        assert_eq!(pow_cmp(&two, 4000, &three, 2524), Ordering::Less);
        assert_eq!(pow_cmp(&two, 4000, &int(16), 1000), Ordering::Equal);
    }

    #[test]
    fn log_ratio_bracket_is_exact_on_powers() {
        let (lo, hi) = log_ratio_bracket(&int(1024), &int(2), 64);
        assert_eq!(lo, int(10));
        assert_eq!(hi, int(10));
        let (lo, hi) = log_ratio_bracket(&int(10), &int(2), 64);
        // log2(10) = 3.3219...
        assert_eq!(lo, rat(212, 64));
        assert_eq!(hi, rat(213, 64));
    }

    #[test]
    fn interval_distances() {
        let i = Interval::new(rat(1, 4), rat(1, 2));
        assert_eq!(
            i.distance_to(&rat(0, 1)),
            Interval::new(rat(1, 4), rat(1, 2))
        );
        assert_eq!(i.distance_to(&rat(3, 8)).lo, rat(0, 1));
        let j = Interval::new(rat(3, 4), rat(1, 1));
        assert_eq!(i.distance_between(&j), Interval::new(rat(1, 4), rat(3, 4)));
    }
}
