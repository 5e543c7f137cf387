use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{
    above_decided, above_power, below_decided, below_power, eventual_period, rational_of,
    ser_rational, Check, DigitStream, GrowthBracket, DEFAULT_MAX_DEPTH, GRID,
};
use crate::cobham::{MorphicRepr, STRUCTURAL_SCAN_DEPTH};
use crate::digits::{first_difference, PeriodicRational};
use crate::error::{Error, Result};
use crate::exact::{self, Interval};
use crate::words::Word;

pub const PREFIX_AGREEMENT: &str = "prefix_agreement";
pub const APPROXIMATION_ORDER: &str = "approximation_order";
pub const DENOMINATOR_GROWTH: &str = "denominator_growth";
pub const DENOMINATOR_IDENTITY: &str = "denominator_identity";
pub const KERNEL_LOWER_BOUND: &str = "kernel_lower_bound";
pub const REPETITION_BOUND: &str = "repetition_bound";
pub const OVERLAP_AGREEMENT: &str = "overlap_agreement";
pub const OVERLAP_ORDER: &str = "overlap_order";
pub const OVERLAP_LOWER_BOUND: &str = "overlap_lower_bound";
pub const DISTINCT_WINDOW: &str = "distinct_window";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderConfig {
    /// Denominator of the exponent grid used for margins.
    pub grid: u64,
    /// Hard cap on the number of stream digits read.
    pub max_depth: usize,
    /// Window of the eventual-periodicity warning scan.
    pub periodicity_window: usize,
}

impl Default for LadderConfig {
    fn default() -> Self {
        LadderConfig {
            grid: GRID,
            max_depth: DEFAULT_MAX_DEPTH,
            periodicity_window: 1 << 12,
        }
    }
}

fn ser_big<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproximantRecord {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub t: usize,
    /// `0.U_n V_n V_n ...`; `value.u` and `value.v` are the digits of `U_n`, `V_n`.
    pub value: PeriodicRational,
    #[serde(serialize_with = "ser_big")]
    pub p: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub q: BigUint,
    /// First fractional position where the stream leaves the approximant.
    pub j: Option<usize>,
    #[serde(skip)]
    pub distance: Interval,
    /// Stream digits used for the distance enclosure.
    pub depth: usize,
    pub checks: BTreeMap<String, Check>,
}

impl ApproximantRecord {
    pub fn u_n(&self) -> Word {
        Word::from_digits(self.value.base, &self.value.u).expect("digits below the base")
    }

    pub fn v_n(&self) -> Word {
        Word::from_digits(self.value.base, &self.value.v).expect("digits below the base")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LadderKind {
    Automatic,
    Overlap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LadderReport {
    pub kind: LadderKind,
    pub base: u32,
    pub k: u32,
    /// Internal alphabet size.
    pub d: usize,
    /// Kernel size.
    pub m: usize,
    #[serde(serialize_with = "ser_rational")]
    pub epsilon: BigRational,
    pub records: Vec<ApproximantRecord>,
    /// First index at which each check holds, if any.
    pub thresholds: BTreeMap<String, Option<usize>>,
    /// Indices after the threshold where a check fails again.
    pub later_violations: BTreeMap<String, Vec<usize>>,
    pub growth_ratios: Vec<GrowthBracket>,
    /// `s_{n+1} / s_n`, exact.
    #[serde(serialize_with = "ser_rationals")]
    pub length_ratios: Vec<BigRational>,
    pub warnings: Vec<String>,
}

fn ser_rationals<S: serde::Serializer>(
    xs: &[BigRational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(exact::format_rational))
}

/// One line of the flat JSON report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub index: usize,
    pub inequality: String,
    pub holds: bool,
    pub margin_num: Option<String>,
    pub margin_den: Option<String>,
}

impl LadderReport {
    /// Every check reached its threshold and never failed afterwards.
    pub fn holds(&self) -> bool {
        self.thresholds.values().all(Option::is_some)
            && self.later_violations.values().all(Vec::is_empty)
    }

    pub fn rows(&self) -> Vec<ReportRow> {
        let mut rows = Vec::new();
        for rec in &self.records {
            for (name, c) in &rec.checks {
                rows.push(ReportRow {
                    index: rec.n,
                    inequality: name.clone(),
                    holds: c.holds,
                    margin_num: c.margin.as_ref().map(|m| m.numer().to_string()),
                    margin_den: c.margin.as_ref().map(|m| m.denom().to_string()),
                });
            }
        }
        rows
    }

    fn summarize(&mut self) {
        let mut names: Vec<String> = Vec::new();
        for rec in &self.records {
            for name in rec.checks.keys() {
                if !names.contains(name) {
                    names.push(name.clone());
                }
            }
        }
        for name in names {
            let results: Vec<(usize, bool)> = self
                .records
                .iter()
                .filter_map(|r| r.checks.get(&name).map(|c| (r.n, c.holds)))
                .collect();
            let first = results.iter().find(|(_, h)| *h).map(|(n, _)| *n);
            let later = match first {
                Some(f) => results
                    .iter()
                    .filter(|(n, h)| *n > f && !*h)
                    .map(|(n, _)| *n)
                    .collect(),
                None => Vec::new(),
            };
            self.thresholds.insert(name.clone(), first);
            self.later_violations.insert(name, later);
        }
        self.growth_ratios = self
            .records
            .windows(2)
            .filter(|w| w[0].q > BigUint::from(1u32))
            .map(|w| {
                let (lo, hi) =
                    exact::log_ratio_bracket(&rational_of(&w[1].q), &rational_of(&w[0].q), GRID);
                GrowthBracket { n: w[0].n, lo, hi }
            })
            .collect();
        self.length_ratios = self
            .records
            .windows(2)
            .map(|w| BigRational::new(w[1].s.into(), w[0].s.into()))
            .collect();
    }
}

enum Target {
    Below(BigRational, BigRational),
    Above(BigRational, BigRational),
}

/// Encloses `|xi - x|` deeply enough to decide every target, then evaluates them.
fn certify<S: crate::digits::DigitSource + ?Sized>(
    stream: &mut DigitStream<'_, S>,
    x: &BigRational,
    start: usize,
    targets: &[(&'static str, Target)],
    grid: u64,
) -> Result<(Interval, usize, Vec<(&'static str, Check)>)> {
    let mut depth = start.min(stream.cap());
    loop {
        let dist = stream.interval(depth)?.distance_to(x);
        let decided = targets.iter().all(|(_, t)| match t {
            Target::Below(base, e) => below_decided(&dist, base, e),
            Target::Above(base, e) => above_decided(&dist, base, e),
        });
        if decided {
            let checks = targets
                .iter()
                .map(|(name, t)| {
                    let c = match t {
                        Target::Below(base, e) => below_power(&dist, base, e, grid),
                        Target::Above(base, e) => above_power(&dist, base, e, true, grid),
                    };
                    (*name, c)
                })
                .collect();
            return Ok((dist, depth, checks));
        }
        if depth >= stream.cap() {
            return Err(Error::Undecided(format!(
                "distance enclosure still too wide at depth {depth}"
            )));
        }
        depth = (2 * depth).min(stream.cap());
    }
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(n.into())
}

fn periodicity_warning<S: crate::digits::DigitSource + ?Sized>(
    stream: &mut DigitStream<'_, S>,
    window: usize,
) -> Result<Option<String>> {
    let len = (2 * window).min(stream.cap());
    let digits = stream.ensure(len)?;
    Ok(eventual_period(digits, window / 2).map(|p| {
        format!(
            "the first {len} digits end with period {p}; the sequence may be eventually periodic"
        )
    }))
}

/// Approximants `0.U_n V_n V_n ...` with `U_n = phi(sigma^n(U))`,
/// `V_n = phi(sigma^n(aV))`, where `U a V a` is the first repetition of a
/// letter in the internal fixed point.
pub fn build_ladder(
    m: &MorphicRepr,
    b: u32,
    n_max: usize,
    epsilon: &BigRational,
) -> Result<LadderReport> {
    build_ladder_with(m, b, n_max, epsilon, &LadderConfig::default())
}

pub fn build_ladder_with(
    m: &MorphicRepr,
    b: u32,
    n_max: usize,
    epsilon: &BigRational,
    config: &LadderConfig,
) -> Result<LadderReport> {
    if *epsilon <= BigRational::zero() {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    let k = m.k();
    let d = m.internal_alphabet_size();
    let km = m.to_automaton().kernel()?.m;
    let k_pow_m = k.pow(km as u32) as usize;
    let internal = m.internal_prefix(d + 1);
    let (u, a, v) = internal.find_second_occurrence_prefix(d)?;
    let mut av_letters = vec![a];
    av_letters.extend_from_slice(v.letters());
    let av = Word::new(internal.alphabet().clone(), av_letters)?;

    let mut stream = DigitStream::new(m, b, config.max_depth)?;
    let mut warnings = Vec::new();
    warnings.extend(periodicity_warning(&mut stream, config.periodicity_window)?);

    let base = int(b as usize);
    let d_exp = BigRational::new(((d + 1) as u64).into(), (d as u64).into());
    let lower_exp = int(k_pow_m + 1) + epsilon;
    let growth_exp = int(k as usize) + epsilon;
    let (mut cur_u, mut cur_av) = (u, av);
    let mut records = Vec::new();
    for n in 0..=n_max {
        if n > 0 {
            cur_u = m.sigma().apply(&cur_u)?;
            cur_av = m.sigma().apply(&cur_av)?;
        }
        let un = m.phi().apply(&cur_u)?.to_digits(b)?;
        let vn = m.phi().apply(&cur_av)?.to_digits(b)?;
        let x = PeriodicRational::new(un, vn, b)?;
        let (r, s, t) = (x.r(), x.s(), (k as usize).pow(n as u32));
        let q = x.q();
        let qr = rational_of(&q);

        let limit = (r + s) * k_pow_m + s + 64;
        let digits = stream.ensure(limit)?;
        let j = first_difference(|i| x.digit(i), |i| digits[i - 1], limit).ok_or_else(|| {
            Error::Undecided(format!(
                "stream agrees with approximant {n} on {limit} digits; the sequence looks periodic"
            ))
        })?;

        let targets = [
            (
                PREFIX_AGREEMENT,
                Target::Below(base.clone(), int(r + s + t)),
            ),
            (
                APPROXIMATION_ORDER,
                Target::Below(qr.clone(), d_exp.clone()),
            ),
            (
                KERNEL_LOWER_BOUND,
                Target::Above(qr.clone(), lower_exp.clone()),
            ),
        ];
        let (distance, depth, found) =
            certify(&mut stream, &x.value, j + s + 2, &targets, config.grid)?;
        let mut checks: BTreeMap<String, Check> =
            found.into_iter().map(|(n, c)| (n.to_string(), c)).collect();

        let rep_bound = (r + s) * k_pow_m;
        checks.insert(
            REPETITION_BOUND.into(),
            Check {
                holds: j <= rep_bound,
                margin: Some(int(rep_bound) - int(j)),
            },
        );

        let q_next = PeriodicRational::denominator_of(b, k as usize * r, k as usize * s);
        let (num, den) = (epsilon.numer(), epsilon.denom());
        let den_u = exact::to_usize(den).expect("small epsilon denominator") as u64;
        let num_u = exact::to_usize(num).expect("small epsilon numerator") as u64;
        let holds = exact::pow_cmp(&rational_of(&q_next), den_u, &qr, k as u64 * den_u + num_u)
            == Ordering::Less;
        let margin = (q > BigUint::from(1u32)).then(|| {
            &growth_exp - exact::log_ratio_bracket(&rational_of(&q_next), &qr, config.grid).1
        });
        checks.insert(DENOMINATOR_GROWTH.into(), Check { holds, margin });

        records.push(ApproximantRecord {
            n,
            r,
            s,
            t,
            p: x.p(),
            q,
            value: x,
            j: Some(j),
            distance,
            depth,
            checks,
        });
    }
    for i in 0..records.len().saturating_sub(1) {
        let expected = PeriodicRational::denominator_of(
            b,
            k as usize * records[i].r,
            k as usize * records[i].s,
        );
        let holds = records[i + 1].q == expected;
        records[i].checks.insert(
            DENOMINATOR_IDENTITY.into(),
            Check {
                holds,
                margin: Some(BigRational::zero()),
            },
        );
    }

    let mut report = LadderReport {
        kind: LadderKind::Automatic,
        base: b,
        k,
        d,
        m: km,
        epsilon: epsilon.clone(),
        records,
        thresholds: BTreeMap::new(),
        later_violations: BTreeMap::new(),
        growth_ratios: Vec::new(),
        length_ratios: Vec::new(),
        warnings,
    };
    report.summarize();
    Ok(report)
}

/// Purely periodic approximants `0.(phi(sigma^n(W)))^inf` built from an
/// internal prefix `W W a`.
pub fn overlap_ladder(m: &MorphicRepr, b: u32, n_max: usize) -> Result<LadderReport> {
    overlap_ladder_with(m, b, n_max, &LadderConfig::default())
}

pub fn overlap_ladder_with(
    m: &MorphicRepr,
    b: u32,
    n_max: usize,
    config: &LadderConfig,
) -> Result<LadderReport> {
    let hyp = m.structural_hypotheses(STRUCTURAL_SCAN_DEPTH);
    let w = hyp.internal_overlap.ok_or(Error::HypothesisNotFound {
        what: "internal prefix of the form W W a",
        depth: hyp.depth,
    })?;
    let k = m.k();
    let d = m.internal_alphabet_size();
    let km = m.to_automaton().kernel()?.m;
    let k_pow_m = k.pow(km as u32) as usize;
    let epsilon = BigRational::new(1.into(), (w.len() as u64).into());

    let mut stream = DigitStream::new(m, b, config.max_depth)?;
    let mut warnings = Vec::new();
    warnings.extend(periodicity_warning(&mut stream, config.periodicity_window)?);

    let base = int(b as usize);
    let order_exp = int(2) + &epsilon;
    let mut cur = w;
    let mut records = Vec::new();
    for n in 0..=n_max {
        if n > 0 {
            cur = m.sigma().apply(&cur)?;
        }
        let un = m.phi().apply(&cur)?.to_digits(b)?;
        let x = PeriodicRational::new(Vec::new(), un, b)?;
        let (s, t) = (x.s(), (k as usize).pow(n as u32));
        let q = x.q();
        let qr = rational_of(&q);

        let limit = s * (k_pow_m + 1) + 64;
        let digits = stream.ensure(limit)?;
        let j = first_difference(|i| x.digit(i), |i| digits[i - 1], limit);

        let targets = [
            (
                OVERLAP_AGREEMENT,
                Target::Below(base.clone(), int(2 * s + t)),
            ),
            (OVERLAP_ORDER, Target::Below(qr.clone(), order_exp.clone())),
            (
                OVERLAP_LOWER_BOUND,
                Target::Above(base.clone(), int(s * (k_pow_m + 1))),
            ),
        ];
        let start = j.unwrap_or(2 * s + t) + s + 2;
        let (distance, depth, found) =
            certify(&mut stream, &x.value, start, &targets, config.grid)?;
        let checks = found.into_iter().map(|(n, c)| (n.to_string(), c)).collect();
        records.push(ApproximantRecord {
            n,
            r: 0,
            s,
            t,
            p: x.p(),
            q,
            value: x,
            j,
            distance,
            depth,
            checks,
        });
    }
    let values: Vec<BigRational> = records.iter().map(|r| r.value.value.clone()).collect();
    for (i, rec) in records.iter_mut().enumerate() {
        let end = (i + km).min(values.len());
        let holds = (i + 1..end).all(|j| values[j] != values[i]);
        rec.checks.insert(
            DISTINCT_WINDOW.into(),
            Check {
                holds,
                margin: None,
            },
        );
    }
    let all_distinct =
        (0..values.len()).all(|i| (i + 1..values.len()).all(|j| values[i] != values[j]));
    if !all_distinct {
        warnings.push("some approximants coincide outside the kernel window".into());
    }

    let mut report = LadderReport {
        kind: LadderKind::Overlap,
        base: b,
        k,
        d,
        m: km,
        epsilon,
        records,
        thresholds: BTreeMap::new(),
        later_violations: BTreeMap::new(),
        growth_ratios: Vec::new(),
        length_ratios: Vec::new(),
        warnings,
    };
    report.summarize();
    Ok(report)
}
