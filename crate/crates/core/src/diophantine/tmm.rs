use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;

use super::{
    above_decided, above_power, below_decided, below_power, DigitStream, DEFAULT_MAX_DEPTH, GRID,
};
use crate::digits::{first_difference, PeriodicRational};
use crate::error::{Error, Result};
use crate::exact::Interval;
use crate::fixtures;
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TmmReport {
    pub base: u32,
    pub n: usize,
    /// First fractional position where `xi` and `p_n/q_n` differ.
    pub j: usize,
    /// Number of leading digits shared, `j - 1`.
    pub agreement: usize,
    /// `5 * 2^n + 1`, the agreement length claimed for this construction.
    pub expected_agreement: usize,
    pub agreement_matches: bool,
    /// Four digits of the stream and of the approximant from position `j`.
    pub stream_digits: Vec<u32>,
    pub approximant_digits: Vec<u32>,
    /// Stream starts with `sigma^n(011) sigma^n(01) 0110`.
    pub stream_prefix_ok: bool,
    /// Approximant starts with `sigma^n(011) sigma^n(01) 1001`.
    pub approximant_prefix_ok: bool,
    pub divergence_ok: bool,
    /// `|xi - p/q| >= b^-(5*2^n + 3)`.
    pub lower_ok: bool,
    /// `|xi - p/q| < b^-(5*2^n + 2)`.
    pub upper_ok: bool,
    #[serde(serialize_with = "super::ser_opt_rational")]
    pub lower_margin: Option<BigRational>,
    #[serde(serialize_with = "super::ser_opt_rational")]
    pub upper_margin: Option<BigRational>,
    #[serde(serialize_with = "ser_big")]
    pub q: BigUint,
    #[serde(skip)]
    pub distance: Interval,
}

fn ser_big<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl TmmReport {
    /// The certified facts: prefix identities, divergence digits and both bounds.
    pub fn holds(&self) -> bool {
        self.stream_prefix_ok
            && self.approximant_prefix_ok
            && self.divergence_ok
            && self.lower_ok
            && self.upper_ok
    }
}

/// Thue-Morse digits in base `b` against `p_n/q_n = 0.(sigma^n(011))^inf`,
/// `q_n = b^(3 * 2^n) - 1`, with `xi = 0.t_0 t_1 t_2 ...`.
pub fn tmm_verify(b: u32, n: usize) -> Result<TmmReport> {
    if n < 2 {
        return Err(Error::Precondition(format!("need n >= 2, got {n}")));
    }
    if b < 2 {
        return Err(Error::InvalidBase(b));
    }
    if n > 24 {
        return Err(Error::Precondition(format!(
            "n = {n} is beyond the supported range"
        )));
    }
    let morphic = fixtures::thue_morse_morphic();
    let sigma = morphic.sigma();
    let block = |s: &str| -> Result<Vec<u32>> {
        let w = Word::parse(sigma.source(), s)?;
        sigma.iterate(&w, n)?.to_digits(2)
    };
    let period = block("011")?;
    let head = [period.clone(), block("01")?].concat();
    let x = PeriodicRational::new(Vec::new(), period, b)?;
    let q = x.q();

    let unit = 1usize << n;
    let expected_agreement = 5 * unit + 1;
    let automaton = fixtures::thue_morse();
    let mut stream = DigitStream::new(&automaton, b, DEFAULT_MAX_DEPTH)?;
    let limit = 6 * unit + 8;
    let digits = stream.ensure(limit)?.to_vec();
    let j = first_difference(|t| x.digit(t), |t| digits[t - 1], limit)
        .ok_or_else(|| Error::Undecided("stream never leaves the approximant".into()))?;

    let four = |f: &dyn Fn(usize) -> u32| (j..j + 4).map(f).collect::<Vec<u32>>();
    let stream_digits = four(&|t| digits[t - 1]);
    let approximant_digits = four(&|t| x.digit(t));
    let divergence_ok = stream_digits == [0, 1, 1, 0] && approximant_digits == [1, 0, 0, 1];
    let with_tail = |tail: [u32; 4]| [head.as_slice(), &tail].concat();
    let stream_prefix_ok = digits.starts_with(&with_tail([0, 1, 1, 0]));
    let approximant_prefix_ok = x.expansion(5 * unit + 4) == with_tail([1, 0, 0, 1]);

    let base = BigRational::from_integer(b.into());
    let lower_exp = BigRational::from_integer((5 * unit + 3).into());
    let upper_exp = BigRational::from_integer((5 * unit + 2).into());
    let mut depth = j + 8;
    let distance = loop {
        let dist = stream.interval(depth)?.distance_to(&x.value);
        if above_decided(&dist, &base, &lower_exp) && below_decided(&dist, &base, &upper_exp) {
            break dist;
        }
        if depth >= stream.cap() {
            return Err(Error::Undecided(format!(
                "enclosure too wide at depth {depth}"
            )));
        }
        depth = (2 * depth).min(stream.cap());
    };
    let lower = above_power(&distance, &base, &lower_exp, false, GRID);
    let upper = below_power(&distance, &base, &upper_exp, GRID);

    Ok(TmmReport {
        base: b,
        n,
        j,
        agreement: j - 1,
        expected_agreement,
        agreement_matches: j - 1 == expected_agreement,
        stream_digits,
        approximant_digits,
        stream_prefix_ok,
        approximant_prefix_ok,
        divergence_ok,
        lower_ok: lower.holds,
        upper_ok: upper.holds,
        lower_margin: lower.margin,
        upper_margin: upper.margin,
        q,
        distance,
    })
}
