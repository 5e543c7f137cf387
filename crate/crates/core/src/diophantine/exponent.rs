use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{eventual_period, ser_opt_rational, ser_rational, GRID};
use crate::contfrac::{certified_cf_of_interval, convergents};
use crate::digits::{DigitSource, TruncationInterval};
use crate::error::{Error, Result};
use crate::exact;

fn ser_int<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergentExponent {
    pub index: usize,
    #[serde(serialize_with = "ser_int")]
    pub p: BigInt,
    #[serde(serialize_with = "ser_int")]
    pub q: BigInt,
    /// Largest grid point `tau` with `|xi - p/q| <= q^-tau` certified.
    #[serde(serialize_with = "ser_rational")]
    pub lower: BigRational,
    /// Smallest grid point `tau` with `|xi - p/q| >= q^-tau` certified.
    #[serde(serialize_with = "ser_opt_rational")]
    pub upper: Option<BigRational>,
    /// The enclosure pins the distance down to a factor of two.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentReport {
    pub base: u32,
    pub depth: usize,
    pub grid: u64,
    pub convergents: Vec<ConvergentExponent>,
    /// Maximum of `upper` over certified convergents.
    #[serde(serialize_with = "ser_opt_rational")]
    pub max_exponent: Option<BigRational>,
}

/// Exponents `tau` with `|xi - p/q| ~ q^-tau` for the convergents of `xi`
/// that are fixed by its first `depth` digits.
pub fn empirical_exponent(
    source: &(impl DigitSource + ?Sized),
    b: u32,
    depth: usize,
) -> Result<ExponentReport> {
    empirical_exponent_with_grid(source, b, depth, GRID)
}

pub fn empirical_exponent_with_grid(
    source: &(impl DigitSource + ?Sized),
    b: u32,
    depth: usize,
    grid: u64,
) -> Result<ExponentReport> {
    if depth < 64 {
        return Err(Error::Precondition(format!(
            "depth must be at least 64, got {depth}"
        )));
    }
    if grid == 0 {
        return Err(Error::Precondition(
            "grid denominator must be positive".into(),
        ));
    }
    if b < 2 {
        return Err(Error::InvalidBase(b));
    }
    let digits = source.digits(b, depth)?;
    if let Some(p) = eventual_period(&digits, depth / 8) {
        return Err(Error::RationalTarget(format!(
            "the last {} of {depth} digits repeat with period {p}",
            depth - depth / 2
        )));
    }
    let t = TruncationInterval::from_digits(b, &digits)?;
    let enclosure = t.interval();
    let cf = certified_cf_of_interval(&t.lo, &t.hi)
        .ok_or_else(|| Error::Undecided("the truncation interval straddles an integer".into()))?;
    let one = BigInt::one();
    let mut out = Vec::new();
    for (index, (p, q)) in convergents(&cf, cf.len()).into_iter().enumerate() {
        if q <= one {
            continue;
        }
        let x = BigRational::new(p.clone(), q.clone());
        let dist = enclosure.distance_to(&x);
        if dist.hi.is_zero() {
            continue;
        }
        let qr = BigRational::from_integer(q.clone());
        let (lower, upper) = exact::decay_exponent_bracket(&dist.lo, &dist.hi, &qr, grid);
        let two = BigRational::from_integer(2.into());
        let certified = !dist.lo.is_zero() && &dist.lo * two >= dist.hi;
        out.push(ConvergentExponent {
            index,
            p,
            q,
            lower,
            upper,
            certified,
        });
    }
    let max_exponent = out
        .iter()
        .filter(|c| c.certified)
        .filter_map(|c| c.upper.clone())
        .max();
    Ok(ExponentReport {
        base: b,
        depth,
        grid,
        convergents: out,
        max_exponent,
    })
}
