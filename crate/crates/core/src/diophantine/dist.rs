use num_rational::BigRational;
use serde::Serialize;

use super::{ser_rational, DigitStream, GRID};
use crate::digits::{DigitSource, PeriodicRational};
use crate::error::{Error, Result};
use crate::exact::{self, Interval};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaDistReport {
    pub j: usize,
    pub r: usize,
    pub s: usize,
    /// `b^-(j+s)`.
    #[serde(serialize_with = "ser_rational")]
    pub bound: BigRational,
    /// Enclosure of `|xi - p/q|` over every continuation of the digits read.
    #[serde(skip)]
    pub distance: Interval,
    /// Number of stream digits used.
    pub depth: usize,
    pub holds: bool,
    /// Grid bracket of `j + s - log_b(1/dist)` from above, when available.
    #[serde(serialize_with = "super::ser_opt_rational")]
    pub margin: Option<BigRational>,
}

/// Certifies `|xi - p/q| > b^-(j+s)` where `xi = 0.a_0 a_1 ...` first differs
/// from the written expansion of `x` at fractional position `j > r`.
pub fn lemma_dist_check(
    x: &PeriodicRational,
    source: &(impl DigitSource + ?Sized),
    j: usize,
    max_depth: usize,
) -> Result<LemmaDistReport> {
    let (r, s, b) = (x.r(), x.s(), x.base);
    if j <= r {
        return Err(Error::Precondition(format!(
            "need j > r, got j = {j}, r = {r}"
        )));
    }
    let mut stream = DigitStream::new(source, b, max_depth)?;
    let digits = stream.ensure(j)?;
    if let Some(t) = (1..j).find(|&t| digits[t - 1] != x.digit(t)) {
        return Err(Error::Precondition(format!(
            "digits already differ at position {t} < j = {j}"
        )));
    }
    if digits[j - 1] == x.digit(j) {
        return Err(Error::Precondition(format!(
            "digits agree at position j = {j}"
        )));
    }
    let bound = exact::inv_pow(b, j + s);
    let mut depth = j;
    loop {
        let distance = stream.interval(depth)?.distance_to(&x.value);
        if distance.lo > bound || depth >= stream.cap() {
            let holds = distance.lo > bound;
            if !holds && distance.lo == num_traits::Zero::zero() {
                return Err(Error::Undecided(format!(
                    "x lies inside the stream enclosure at depth {depth}"
                )));
            }
            let base = BigRational::from_integer(b.into());
            let check = super::above_power(
                &distance,
                &base,
                &BigRational::from_integer((j + s).into()),
                true,
                GRID,
            );
            return Ok(LemmaDistReport {
                j,
                r,
                s,
                bound,
                distance,
                depth,
                holds,
                margin: check.margin,
            });
        }
        depth = (2 * depth).min(stream.cap());
    }
}
