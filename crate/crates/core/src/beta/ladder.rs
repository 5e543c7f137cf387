use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::expansion::{beta_periodic_value, word_value};
use super::field::{FieldElement, NumberField};
use super::poly::IntPoly;
use crate::cobham::MorphicRepr;
use crate::digits::DigitSource;
use crate::diophantine::{
    below_decided, below_power, ladder_conditions_report, measure_bound, Check, ConditionParams,
    ConditionRecord, ConditionReport, GRID,
};
use crate::error::{Error, Result};
use crate::exact::{self, Interval};
use crate::words::Word;

/// Determinant of an integer matrix by fraction-free elimination.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Resultant of two integer polynomials (ascending coefficients) via the Sylvester matrix.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (p, q) = (f.len() - 1, g.len() - 1);
    let n = p + q;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for row in 0..q {
        for (i, c) in f.iter().rev().enumerate() {
            m[row][row + i] = c.clone();
        }
    }
    for row in 0..p {
        for (i, c) in g.iter().rev().enumerate() {
            m[q + row][row + i] = c.clone();
        }
    }
    bareiss_det(m)
}

/// Coefficients of the polynomial through `(x_i, y_i)`, by Lagrange interpolation.
fn interpolate(points: &[(BigRational, BigRational)]) -> Vec<BigRational> {
    let n = points.len();
    let mut out = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial prod_{j != i} (X - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = yi / denom;
        for (k, c) in basis.iter().enumerate() {
            out[k] += c * &scale;
        }
    }
    out
}

/// Primitive integer polynomial vanishing at `alpha`: the resultant in `Y` of the
/// minimal polynomial and `D X - A(Y)`, where `D alpha = A(beta)`.
pub fn annihilating_polynomial(alpha: &FieldElement) -> IntPoly {
    let (d, a) = alpha.integer_form();
    let f = alpha.field().minpoly().coeffs().to_vec();
    let top = (1..a.len()).rev().find(|&i| !a[i].is_zero());
    let Some(top) = top else {
        return IntPoly::new(vec![-a[0].clone(), d]).primitive_part();
    };
    let l = f.len() - 1;
    let points: Vec<(BigRational, BigRational)> = (0..=l as i64)
        .map(|x| {
            let mut g: Vec<BigInt> = a[..=top].iter().map(|c| -c).collect();
            g[0] += &d * x;
            let r = resultant(&f, &g);
            (
                BigRational::from_integer(x.into()),
                BigRational::from_integer(r),
            )
        })
        .collect();
    let coeffs = interpolate(&points)
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect();
    IntPoly::new(coeffs).primitive_part()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaLadderConfig {
    pub epsilon: BigRational,
    pub grid: u64,
    pub max_depth: usize,
    /// Parameters for the finite-range hypothesis report. Defaults to
    /// `s = k + 1`, `eta = 1 + 1/d - epsilon`, `eta' = dk(k^m + 1) + 1`.
    pub conditions: Option<ConditionParams>,
}

impl Default for BetaLadderConfig {
    fn default() -> Self {
        BetaLadderConfig {
            epsilon: exact::rat(1, 4),
            grid: GRID,
            max_depth: 1 << 16,
            conditions: None,
        }
    }
}

fn ser_poly<S: serde::Serializer>(p: &IntPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.coeffs().iter().map(|c| c.to_string()))
}

fn ser_int<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_interval<S: serde::Serializer>(x: &Interval, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq([exact::format_rational(&x.lo), exact::format_rational(&x.hi)])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaRecord {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub u_n: Vec<u32>,
    pub v_n: Vec<u32>,
    pub j: usize,
    /// `alpha_n` in the power basis of `beta`.
    pub alpha: Vec<String>,
    #[serde(serialize_with = "ser_poly")]
    pub annihilator: IntPoly,
    /// Height of `annihilator`, an upper bound for the height of `alpha_n`.
    #[serde(serialize_with = "ser_int")]
    pub height: BigInt,
    /// `V_n` is all zeros: the approximant has a finite expansion.
    pub degenerate: bool,
    #[serde(serialize_with = "ser_interval")]
    pub distance: Interval,
    pub depth: usize,
    /// `|xi - alpha_n| < H_n^-(1 + 1/d - epsilon)`.
    pub approximation: Check,
    /// `log2(H_n / ((r+s)^(l-1) beta^(r+s)))`, for the fitted constant.
    pub height_fit_log2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaLadderReport {
    #[serde(serialize_with = "ser_poly")]
    pub minpoly: IntPoly,
    pub beta: f64,
    pub l: usize,
    pub k: u32,
    pub d: usize,
    pub m: usize,
    pub epsilon: String,
    pub records: Vec<BetaRecord>,
    /// First `n` whose approximation check holds.
    pub threshold: Option<usize>,
    /// Indices after the threshold where the check fails.
    pub later_violations: Vec<usize>,
    /// Largest `height_fit_log2` over the range: `log2` of the fitted constant.
    pub fitted_constant_log2: f64,
    pub conditions: ConditionReport,
    pub warnings: Vec<String>,
}

impl BetaLadderReport {
    /// The approximation check reached a threshold and never failed afterwards.
    pub fn holds(&self) -> bool {
        self.threshold.is_some() && self.later_violations.is_empty()
    }
}

/// Approximants `alpha_n = 0.U_n V_n V_n ...` in base `beta` for the digit
/// sequence of `m`, with heights and certified distances.
pub fn beta_ladder(
    m: &MorphicRepr,
    field: &Arc<NumberField>,
    n_max: usize,
) -> Result<BetaLadderReport> {
    beta_ladder_with(m, field, n_max, &BetaLadderConfig::default())
}

pub fn beta_ladder_with(
    m: &MorphicRepr,
    field: &Arc<NumberField>,
    n_max: usize,
    config: &BetaLadderConfig,
) -> Result<BetaLadderReport> {
    let eps = &config.epsilon;
    if !eps.is_positive() {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    let k = m.k();
    let d = m.internal_alphabet_size();
    let km = m.to_automaton().kernel()?.m;
    let k_pow_m = (k as usize).pow(km as u32);
    let l = field.degree();
    let top = field.floor_beta();
    let internal = m.internal_prefix(d + 1);
    let (u, a, v) = internal.find_second_occurrence_prefix(d)?;
    let mut av = vec![a];
    av.extend_from_slice(v.letters());
    let av = Word::new(internal.alphabet().clone(), av)?;

    let exponent = BigRational::one() + BigRational::new(1.into(), (d as u64).into()) - eps;
    if !exponent.is_positive() {
        return Err(Error::Precondition("epsilon too large".into()));
    }
    let digits_of = |w: &Word| m.phi().apply(w)?.to_digits(top + 1);
    let beta = FieldElement::beta(field);
    let tail_unit = FieldElement::from_int(field, top as i64)
        .mul(&beta.sub(&FieldElement::one(field))?.inv()?)?;
    let beta_hi = field.enclosure().hi.to_f64().unwrap_or(f64::NAN);

    let (mut cu, mut cav) = (u, av);
    let mut stream: Vec<u32> = Vec::new();
    let mut records = Vec::new();
    let mut warnings = Vec::new();
    for n in 0..=n_max {
        if n > 0 {
            cu = m.sigma().apply(&cu)?;
            cav = m.sigma().apply(&cav)?;
        }
        let (un, vn) = (digits_of(&cu)?, digits_of(&cav)?);
        let (r, s) = (un.len(), vn.len());
        let degenerate = vn.iter().all(|&x| x == 0);
        if degenerate {
            warnings.push(format!(
                "V_{n} is all zeros; alpha_{n} has a finite expansion"
            ));
        }
        let alpha = beta_periodic_value(&un, &vn, field)?;
        let annihilator = annihilating_polynomial(&alpha);
        let height = annihilator.height();

        let limit = (r + s) * k_pow_m + s + 64;
        if stream.len() < limit {
            stream = m.digits(
                top + 1,
                limit.max(2 * stream.len()).min(config.max_depth.max(limit)),
            )?;
        }
        let digit = |t: usize| {
            if t <= r {
                un[t - 1]
            } else {
                vn[(t - 1 - r) % s]
            }
        };
        let j = (1..=limit)
            .find(|&t| stream[t - 1] != digit(t))
            .ok_or_else(|| {
                Error::Undecided(format!("stream agrees with alpha_{n} on {limit} digits"))
            })?;

        if height <= BigInt::one() {
            warnings.push(format!(
                "alpha_{n} has height 1; its approximation check is reported as failing"
            ));
        }
        let h = BigRational::from_integer(height.clone());
        let mut depth = j + s + 8;
        let (distance, approximation) = loop {
            if depth > stream.len() {
                if depth > config.max_depth {
                    return Err(Error::Undecided(format!(
                        "alpha_{n}: enclosure too wide at depth {depth}"
                    )));
                }
                stream = m.digits(top + 1, depth)?;
            }
            let head = word_value(&stream[..depth], field)?;
            let diff = head.sub(&alpha)?;
            let tail = tail_unit.mul(&beta.pow(-(depth as i64))?)?;
            let tail_hi = tail.enclosure_relative(&exact::rat(1, 8)).hi;
            let width = &tail_hi / BigRational::from_integer(4.into());
            let e = diff.enclosure_within(&width);
            // xi - alpha in [diff, diff + tail]
            let dist =
                Interval::new(e.lo.clone(), &e.hi + &tail_hi).distance_to(&BigRational::zero());
            let decided = h > BigRational::one() && below_decided(&dist, &h, &exponent);
            if decided || (h <= BigRational::one()) {
                let check = if h > BigRational::one() {
                    below_power(&dist, &h, &exponent, config.grid)
                } else {
                    Check {
                        holds: false,
                        margin: None,
                    }
                };
                break (dist, check);
            }
            depth *= 2;
        };

        let fit = log2_big(&height)
            - ((l - 1) as f64) * ((r + s) as f64).log2()
            - (r + s) as f64 * beta_hi.log2();
        records.push(BetaRecord {
            n,
            r,
            s,
            u_n: un.clone(),
            v_n: vn.clone(),
            j,
            alpha: alpha.coeffs().iter().map(exact::format_rational).collect(),
            annihilator,
            height,
            degenerate,
            distance,
            depth,
            approximation,
            height_fit_log2: fit,
        });
    }

    let params = match &config.conditions {
        Some(p) => p.clone(),
        None => ConditionParams::Lemma53 {
            s: k as u64 + 1,
            eta: exponent.clone(),
            eta_prime: BigRational::from_integer(
                measure_bound(d as u64, k as u64, km as u32)?.into(),
            ) + BigRational::one(),
        },
    };
    let cond_records: Vec<ConditionRecord> = records
        .iter()
        .map(|r| ConditionRecord {
            height: BigRational::from_integer(r.height.clone()),
            error: r.distance.clone(),
            value: None,
        })
        .collect();
    let conditions = ladder_conditions_report(&cond_records, &params);
    let threshold = records.iter().find(|r| r.approximation.holds).map(|r| r.n);
    let later_violations = match threshold {
        Some(t) => records
            .iter()
            .filter(|r| r.n > t && !r.approximation.holds)
            .map(|r| r.n)
            .collect(),
        None => Vec::new(),
    };
    let fitted_constant_log2 = records
        .iter()
        .map(|r| r.height_fit_log2)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(BetaLadderReport {
        minpoly: field.minpoly().clone(),
        beta: field.approx(),
        l,
        k,
        d,
        m: km,
        epsilon: exact::format_rational(eps),
        records,
        threshold,
        later_violations,
        fitted_constant_log2,
        conditions,
        warnings,
    })
}

fn log2_big(x: &BigInt) -> f64 {
    exact::log2_approx(&BigRational::from_integer(x.abs().max(BigInt::one())))
}
