//! Continued fractions: convergents, certified expansions of intervals,
//! purely periodic expansions as quadratic numbers, and the quadratic
//! approximant ladder.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cobham::{MorphicRepr, STRUCTURAL_SCAN_DEPTH};
use crate::error::{Error, Result};
use crate::exact::{self, Interval};
use crate::words::Word;

/// `[a_0; a_1, a_2, ...]` with `a_i >= 1` for `i >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CfWord {
    pub a0: BigInt,
    pub quotients: Vec<BigUint>,
}

impl CfWord {
    pub fn new(a0: BigInt, quotients: Vec<BigUint>) -> Result<CfWord> {
        if quotients.iter().any(Zero::is_zero) {
            return Err(Error::Precondition(
                "partial quotients must be positive".into(),
            ));
        }
        Ok(CfWord { a0, quotients })
    }

    /// `[0; q_1, ..., q_n]` from small quotients.
    pub fn fractional(quotients: &[u64]) -> Result<CfWord> {
        CfWord::new(
            BigInt::zero(),
            quotients.iter().map(|&q| BigUint::from(q)).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    /// Parses a JSON integer array `[a0, a1, ...]`; entries may be numbers or decimal strings.
    pub fn parse_json(text: &str) -> Result<CfWord> {
        let values: Vec<serde_json::Value> = serde_json::from_str(text)?;
        let ints = values
            .iter()
            .map(json_integer)
            .collect::<Result<Vec<_>>>()?;
        CfWord::from_integers(&ints)
    }

    pub fn from_integers(ints: &[BigInt]) -> Result<CfWord> {
        let (a0, rest) = ints
            .split_first()
            .ok_or_else(|| Error::Parse("a continued fraction needs at least a_0".into()))?;
        let quotients = rest
            .iter()
            .map(|q| {
                q.to_biguint().filter(|q| !q.is_zero()).ok_or_else(|| {
                    Error::Precondition(format!("partial quotient {q} is not positive"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CfWord::new(a0.clone(), quotients)
    }

    pub fn to_integers(&self) -> Vec<BigInt> {
        std::iter::once(self.a0.clone())
            .chain(self.quotients.iter().map(|q| BigInt::from(q.clone())))
            .collect()
    }

    /// Exact value of the finite expansion.
    pub fn value(&self) -> BigRational {
        let (p, q) = convergents(self, self.len())
            .pop()
            .expect("at least p_0/q_0");
        BigRational::new(p, q)
    }

    pub fn prefix(&self, n: usize) -> CfWord {
        CfWord {
            a0: self.a0.clone(),
            quotients: self.quotients[..n.min(self.len())].to_vec(),
        }
    }

    /// Closed interval of all reals whose expansion starts with this word.
    pub fn cylinder(&self) -> Interval {
        let conv = convergents(self, self.len());
        let n = conv.len() - 1;
        let (p, q) = &conv[n];
        let (pp, qp) = if n == 0 {
            (BigInt::one(), BigInt::zero())
        } else {
            conv[n - 1].clone()
        };
        let a = BigRational::new(p.clone(), q.clone());
        let b = BigRational::new(p + pp, q + qp);
        Interval::new(a.clone().min(b.clone()), a.max(b))
    }

    /// Enclosure of every real starting with this word whose remaining partial
    /// quotients all lie in `[1, bound]`.
    pub fn bounded_tail_enclosure(&self, bound: &BigUint) -> Interval {
        let m = BigRational::from_integer(BigInt::from(bound.clone()));
        let one = BigRational::one();
        let t_lo = &one + &one / (&m + &one);
        let t_hi = &m + &one;
        let a = self.with_tail(&t_lo);
        let b = self.with_tail(&t_hi);
        Interval::new(a.clone().min(b.clone()), a.max(b))
    }

    /// `[a_0; a_1, ..., a_n, t]` for a real tail `t >= 1`.
    pub fn with_tail(&self, t: &BigRational) -> BigRational {
        let conv = convergents(self, self.len());
        let n = conv.len() - 1;
        let (p, q) = &conv[n];
        let (pp, qp) = if n == 0 {
            (BigInt::one(), BigInt::zero())
        } else {
            conv[n - 1].clone()
        };
        let num = t * BigRational::from_integer(p.clone()) + BigRational::from_integer(pp);
        let den = t * BigRational::from_integer(q.clone()) + BigRational::from_integer(qp);
        num / den
    }
}

impl fmt::Display for CfWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.a0)?;
        for (i, q) in self.quotients.iter().enumerate() {
            write!(f, "{}{q}", if i == 0 { "; " } else { ", " })?;
        }
        f.write_str("]")
    }
}

impl Serialize for CfWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.to_integers().iter().map(|x| x.to_string()))
    }
}

fn json_integer(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(Error::Parse(format!("`{n}` is not an integer")))
            }
        }
        serde_json::Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("`{s}` is not an integer"))),
        other => Err(Error::Parse(format!("`{other}` is not an integer"))),
    }
}

/// Parses a JSON integer array such as `[1, -3, 0, 1]`.
pub fn parse_integer_array(text: &str) -> Result<Vec<BigInt>> {
    let values: Vec<serde_json::Value> = serde_json::from_str(text)?;
    values.iter().map(json_integer).collect()
}

/// `(p_i, q_i)` for `i = 0..=min(n, len)`.
pub fn convergents(cf: &CfWord, n: usize) -> Vec<(BigInt, BigInt)> {
    let n = n.min(cf.len());
    let mut out = Vec::with_capacity(n + 1);
    let (mut pp, mut qp) = (BigInt::one(), BigInt::zero());
    let (mut p, mut q) = (cf.a0.clone(), BigInt::one());
    out.push((p.clone(), q.clone()));
    for a in &cf.quotients[..n] {
        let a = BigInt::from(a.clone());
        let np = &a * &p + &pp;
        let nq = &a * &q + &qp;
        pp = std::mem::replace(&mut p, np);
        qp = std::mem::replace(&mut q, nq);
        out.push((p.clone(), q.clone()));
    }
    out
}

/// Euclid's algorithm; the last quotient is at least 2 unless the expansion is `[a_0]`.
pub fn cf_of_rational(x: &BigRational) -> CfWord {
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let (a0, r) = num.div_mod_floor(&den);
    let mut quotients = Vec::new();
    num = den;
    den = r;
    while !den.is_zero() {
        let (a, r) = num.div_mod_floor(&den);
        quotients.push(a.to_biguint().expect("positive"));
        num = den;
        den = r;
    }
    CfWord { a0, quotients }
}

/// Both expansions of a rational: the canonical one and the one ending in 1.
fn both_expansions(x: &BigRational) -> Vec<CfWord> {
    let canonical = cf_of_rational(x);
    let mut alt = canonical.clone();
    match alt.quotients.last_mut() {
        Some(last) => {
            *last -= 1u32;
            if last.is_zero() {
                // only possible for a final quotient 1, which Euclid never emits
                return vec![canonical];
            }
        }
        None => alt.a0 -= 1,
    }
    alt.quotients.push(BigUint::one());
    vec![canonical, alt]
}

fn common_prefix_len(a: &CfWord, b: &CfWord) -> Option<usize> {
    if a.a0 != b.a0 {
        return None;
    }
    Some(
        a.quotients
            .iter()
            .zip(&b.quotients)
            .take_while(|(x, y)| x == y)
            .count(),
    )
}

/// Longest expansion `[a_0; a_1..a_m]` shared by every irrational in `[lo, hi]`,
/// or `None` when the interval straddles an integer. A point interval gets
/// the canonical expansion of its rational.
///
/// Candidates come from the common prefixes of the endpoint expansions; each
/// is accepted only if `[lo, hi]` lies in its closed cylinder.
pub fn certified_cf_of_interval(lo: &BigRational, hi: &BigRational) -> Option<CfWord> {
    assert!(lo <= hi, "empty interval");
    if lo == hi {
        return Some(cf_of_rational(lo));
    }
    let mut best: Option<CfWord> = None;
    for a in both_expansions(lo) {
        for b in both_expansions(hi) {
            let Some(len) = common_prefix_len(&a, &b) else {
                continue;
            };
            let mut n = len;
            loop {
                let cand = a.prefix(n);
                if best.as_ref().is_some_and(|w| w.len() >= cand.len()) {
                    break;
                }
                let cyl = cand.cylinder();
                if cyl.lo <= *lo && *hi <= cyl.hi {
                    best = Some(cand);
                    break;
                }
                if n == 0 {
                    break;
                }
                n -= 1;
            }
        }
    }
    best
}

/// Real root in `(0, 1)` of an integer quadratic, kept as an isolating interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticNumber {
    /// Coefficients `[c0, c1, c2]` of `c0 + c1 X + c2 X^2`.
    #[serde(serialize_with = "ser_ints")]
    pub poly: Vec<BigInt>,
    #[serde(serialize_with = "ser_rational")]
    pub lo: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: BigRational,
}

fn ser_ints<S: serde::Serializer>(x: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(|c| c.to_string()))
}

fn ser_rational<S: serde::Serializer>(
    x: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&exact::format_rational(x))
}

pub(crate) fn eval_int_poly(poly: &[BigInt], x: &BigRational) -> BigRational {
    poly.iter().rev().fold(BigRational::zero(), |acc, c| {
        acc * x + BigRational::from_integer(c.clone())
    })
}

impl QuadraticNumber {
    fn sign_at(&self, x: &BigRational) -> Sign {
        eval_int_poly(&self.poly, x).numer().sign()
    }

    /// Halves the isolating interval until its width is at most `width`.
    pub fn refine(&mut self, width: &BigRational) {
        let s_lo = self.sign_at(&self.lo);
        while &self.hi - &self.lo > *width {
            let mid = (&self.lo + &self.hi) / BigRational::from_integer(2.into());
            let s = self.sign_at(&mid);
            if s == Sign::NoSign {
                self.lo = mid.clone();
                self.hi = mid;
                return;
            }
            if s == s_lo {
                self.lo = mid;
            } else {
                self.hi = mid;
            }
        }
    }

    pub fn enclosure(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    /// Largest absolute coefficient after removing the content.
    pub fn height(&self) -> BigInt {
        let content = self.poly.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        self.poly
            .iter()
            .map(|c| (c / &content).abs())
            .max()
            .unwrap_or_default()
    }

    /// The first `n` partial quotients of the root, obtained by refinement.
    pub fn cf_prefix(&mut self, n: usize) -> CfWord {
        let mut width = BigRational::new(BigInt::one(), BigInt::from(1u32 << 8));
        loop {
            self.refine(&width);
            if let Some(cf) = certified_cf_of_interval(&self.lo, &self.hi) {
                if cf.len() >= n {
                    return cf.prefix(n);
                }
            }
            width = &width * &width;
        }
    }
}

/// `P(X) = q_{s-1} X^2 + (q_s - p_{s-1}) X - p_s` for the convergents of
/// `[0; U]` (with `p_0/q_0 = 0/1`), whose root in `(0, 1)` is `[0; U U U ...]`.
pub fn periodic_cf_quadratic(u: &[BigUint]) -> Result<QuadraticNumber> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    let cf = CfWord::new(BigInt::zero(), u.to_vec())?;
    let conv = convergents(&cf, u.len());
    let s = u.len();
    let (ps, qs) = &conv[s];
    let (pp, qp) = &conv[s - 1];
    Ok(QuadraticNumber {
        poly: vec![-ps.clone(), qs - pp, qp.clone()],
        lo: BigRational::zero(),
        hi: BigRational::one(),
    })
}

/// Letters of a word read as positive partial quotients.
pub fn word_quotients(w: &Word) -> Result<Vec<BigUint>> {
    w.to_digits(u32::MAX)?
        .into_iter()
        .map(|d| {
            if d == 0 {
                Err(Error::Precondition("partial quotient 0 in sequence".into()))
            } else {
                Ok(BigUint::from(d))
            }
        })
        .collect()
}

/// One rung `alpha_n = [0; overline(U_n)]` of the quadratic ladder.
#[derive(Debug, Clone, Serialize)]
pub struct QuadraticRecord {
    pub n: usize,
    pub s_n: usize,
    pub t_n: usize,
    pub alpha: QuadraticNumber,
    #[serde(serialize_with = "ser_bigint")]
    pub height: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub q_s: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub q_s_plus_t: BigInt,
    /// `H(alpha_n) < q_{s_n}`.
    pub height_below_q_s: bool,
    /// `|xi - alpha_n| < 1 / q_{s_n + t_n}^2`.
    pub approximation: bool,
    /// Grid bracket of `log(q_{s+t}^2) / log(q_s)`.
    #[serde(serialize_with = "ser_bracket")]
    pub exponent_ratio: (BigRational, BigRational),
}

fn ser_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_bracket<S: serde::Serializer>(
    x: &(BigRational, BigRational),
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq([exact::format_rational(&x.0), exact::format_rational(&x.1)])
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadraticLadder {
    pub records: Vec<QuadraticRecord>,
    /// All `alpha_n` coincide (the internal word is periodic from the start).
    pub degenerate: bool,
}

impl QuadraticLadder {
    pub fn holds(&self) -> bool {
        self.records
            .iter()
            .all(|r| r.height_below_q_s && r.approximation)
    }
}

/// Quadratic approximants built from a prefix `a U a` of the internal word.
pub fn quadratic_ladder(m: &MorphicRepr, n_max: usize) -> Result<QuadraticLadder> {
    quadratic_ladder_with_depth(m, n_max, STRUCTURAL_SCAN_DEPTH)
}

pub fn quadratic_ladder_with_depth(
    m: &MorphicRepr,
    n_max: usize,
    scan_depth: usize,
) -> Result<QuadraticLadder> {
    let hyp = m.structural_hypotheses(scan_depth);
    let u = hyp.first_letter_repeats.ok_or(Error::HypothesisNotFound {
        what: "first letter repeats",
        depth: hyp.depth,
    })?;
    let k = m.k() as usize;
    let mut records = Vec::with_capacity(n_max + 1);
    let grid = |x: &BigInt, y: &BigInt| {
        exact::log_ratio_bracket(
            &BigRational::from_integer(x.clone()),
            &BigRational::from_integer(y.clone()),
            64,
        )
    };
    let mut previous: Option<Vec<BigInt>> = None;
    let mut degenerate = n_max > 0;
    for n in 0..=n_max {
        let t_n = k.pow(n as u32);
        let s_n = t_n * (u.len() + 1);
        let depth = s_n + t_n + 4;
        let xi = CfWord::new(BigInt::zero(), word_quotients(&m.sequence_prefix(depth))?)?;
        let u_n: Vec<BigUint> = xi.quotients[..s_n].to_vec();
        let mut alpha = periodic_cf_quadratic(&u_n)?;
        let conv = convergents(&xi, s_n + t_n);
        let q_s = conv[s_n].1.clone();
        let q_st = conv[s_n + t_n].1.clone();
        let height = alpha.height();
        let height_below_q_s = height < q_s;

        // xi through its cylinder, alpha_n through root refinement
        let xi_encl = xi.cylinder();
        let target = BigRational::new(BigInt::one(), &q_st * &q_st);
        alpha.refine(&(&target / BigRational::from_integer(BigInt::from(8))));
        let dist = xi_encl.distance_between(&alpha.enclosure());
        let approximation = dist.hi < target;

        let prim: Vec<BigInt> = {
            let c = alpha.poly.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            alpha.poly.iter().map(|x| x / &c).collect()
        };
        if let Some(prev) = &previous {
            degenerate &= *prev == prim;
        }
        previous = Some(prim);
        let exponent_ratio = if q_s > BigInt::one() {
            grid(&(&q_st * &q_st), &q_s)
        } else {
            (BigRational::zero(), BigRational::zero())
        };
        records.push(QuadraticRecord {
            n,
            s_n,
            t_n,
            alpha,
            height,
            q_s,
            q_s_plus_t: q_st,
            height_below_q_s,
            approximation,
            exponent_ratio,
        });
    }
    Ok(QuadraticLadder {
        records,
        degenerate,
    })
}

/// Outcome of [`lemma_dist2_check`].
#[derive(Debug, Clone, Serialize)]
pub struct LemmaDist2 {
    /// Number of agreeing partial quotients after `a_0`.
    pub n: usize,
    #[serde(serialize_with = "ser_rational")]
    pub bound: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub distance_lower: BigRational,
    pub holds: bool,
}

/// `|xi - alpha| >= 1 / ((M+2)^3 q_n^2)` for any two reals with quotients at
/// most `M` that start with the given words and first differ at index `n+1`.
pub fn lemma_dist2_check(alpha: &CfWord, xi: &CfWord, bound_m: &BigUint) -> Result<LemmaDist2> {
    if let Some(q) = alpha
        .quotients
        .iter()
        .chain(&xi.quotients)
        .find(|q| *q > bound_m)
    {
        return Err(Error::Precondition(format!(
            "partial quotient {q} exceeds the bound {bound_m}"
        )));
    }
    if alpha.a0 != xi.a0 {
        return Err(Error::Precondition("integer parts differ".into()));
    }
    let n = alpha
        .quotients
        .iter()
        .zip(&xi.quotients)
        .take_while(|(a, b)| a == b)
        .count();
    if n >= alpha.len() || n >= xi.len() {
        return Err(Error::Precondition(format!(
            "no disagreement within the first {n} partial quotients"
        )));
    }
    let q_n = convergents(alpha, n)[n].1.clone();
    let m2 = BigInt::from(bound_m.clone()) + 2;
    let bound = BigRational::new(BigInt::one(), &m2 * &m2 * &m2 * &q_n * &q_n);
    let a = alpha.bounded_tail_enclosure(bound_m);
    let b = xi.bounded_tail_enclosure(bound_m);
    let distance_lower = a.distance_between(&b).lo;
    Ok(LemmaDist2 {
        n,
        holds: distance_lower >= bound,
        bound,
        distance_lower,
    })
}

/// Integer partial quotients as `u64` when they fit.
pub fn small_quotients(cf: &CfWord) -> Option<Vec<u64>> {
    cf.quotients.iter().map(ToPrimitive::to_u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::fixtures;
    use proptest::prelude::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn convergent_examples() {
        let fib = CfWord::fractional(&[1, 1, 1, 1, 1]).unwrap();
        let c = convergents(&fib, 5);
        assert_eq!(c.last().unwrap(), &(BigInt::from(5), BigInt::from(8)));
        let sqrt2 = CfWord::fractional(&[2, 2, 2, 2]).unwrap();
        assert_eq!(
            convergents(&sqrt2, 4)[4],
            (BigInt::from(12), BigInt::from(29))
        );
        let bare = CfWord::new(BigInt::from(3), vec![]).unwrap();
        assert_eq!(
            convergents(&bare, 10),
            vec![(BigInt::from(3), BigInt::one())]
        );
    }

    #[test]
    fn rational_expansions() {
        assert_eq!(cf_of_rational(&rat(2, 15)).to_string(), "[0; 7, 2]");
        assert_eq!(cf_of_rational(&rat(-7, 3)).to_string(), "[-3; 1, 2]");
        assert_eq!(cf_of_rational(&rat(-7, 3)).value(), rat(-7, 3));
        assert_eq!(cf_of_rational(&rat(5, 1)).to_string(), "[5]");
    }

    #[test]
    fn interval_expansions() {
        let cf = certified_cf_of_interval(&rat(3, 8), &rat(7, 16)).unwrap();
        assert_eq!(cf.to_string(), "[0; 2]");
        let point = certified_cf_of_interval(&rat(2, 15), &rat(2, 15)).unwrap();
        assert_eq!(point.to_string(), "[0; 7, 2]");
        let unit = certified_cf_of_interval(&rat(0, 1), &rat(1, 1)).unwrap();
        assert_eq!(unit.to_string(), "[0]");
        assert!(certified_cf_of_interval(&rat(1, 2), &rat(3, 2)).is_none());
    }

    #[test]
    fn quadratics() {
        let mut golden = periodic_cf_quadratic(&big(&[1])).unwrap();
        assert_eq!(
            golden.poly,
            vec![BigInt::from(-1), BigInt::from(1), BigInt::from(1)]
        );
        assert_eq!(golden.cf_prefix(12), CfWord::fractional(&[1; 12]).unwrap());
        let mut silver = periodic_cf_quadratic(&big(&[2])).unwrap();
        assert_eq!(
            silver.poly,
            vec![BigInt::from(-1), BigInt::from(2), BigInt::from(1)]
        );
        silver.refine(&rat(1, 1 << 40));
        // root of X^2 + 2X - 1 is sqrt(2) - 1 in (0.41421356237, 0.41421356238)
        assert!(
            silver.lo > rat(41421356237, 100000000000)
                && silver.hi < rat(41421356238, 100000000000)
        );
        for q in [&golden, &silver] {
            assert!(eval_int_poly(&q.poly, &q.lo) <= BigRational::zero());
            assert!(eval_int_poly(&q.poly, &q.hi) >= BigRational::zero());
        }
        let u = big(&[1, 3, 2]);
        let mut x = periodic_cf_quadratic(&u).unwrap();
        let expected: Vec<BigUint> = u.iter().cycle().take(9).cloned().collect();
        assert_eq!(x.cf_prefix(9).quotients, expected);
        assert!(periodic_cf_quadratic(&[]).is_err());
    }

    #[test]
    fn ladder_on_bundled_example() {
        let ladder = quadratic_ladder(&fixtures::cf_ab_morphic(), 5).unwrap();
        assert!(ladder.holds(), "{ladder:#?}");
        assert!(!ladder.degenerate);
        for w in ladder.records.windows(2) {
            assert_eq!(w[1].s_n, 2 * w[0].s_n);
            assert_eq!(w[1].t_n, 2 * w[0].t_n);
        }
        assert!(quadratic_ladder(&fixtures::thue_morse_morphic(), 2).is_err());
    }

    #[test]
    fn constant_ladder_is_degenerate() {
        let json = r#"{"k":2,"sigma":{"q":"qq"},"phi":{"q":"1"},"start":"q"}"#;
        let m = MorphicRepr::parse_json(json).unwrap();
        let ladder = quadratic_ladder(&m, 3).unwrap();
        assert!(ladder.degenerate);
        // s_n = 1 at n = 0 gives H = q_1, so the strict inequality fails there
        assert!(!ladder.records[0].height_below_q_s);
        assert!(ladder.records.iter().all(|r| r.approximation));
    }

    #[test]
    fn lemma_dist2_examples() {
        let alpha = CfWord::fractional(&[1, 1, 1, 1]).unwrap();
        let xi = CfWord::fractional(&[1, 1, 2, 1]).unwrap();
        let r = lemma_dist2_check(&alpha, &xi, &BigUint::from(2u32)).unwrap();
        assert_eq!(r.n, 2);
        assert_eq!(r.bound, rat(1, 64 * 4));
        assert!(r.holds);
        assert!(lemma_dist2_check(&alpha, &alpha, &BigUint::from(2u32)).is_err());
        assert!(lemma_dist2_check(&alpha, &xi, &BigUint::from(1u32)).is_err());
    }

    proptest! {
        #[test]
        fn determinant_identity(q in prop::collection::vec(1u64..50, 1..25)) {
            let cf = CfWord::fractional(&q).unwrap();
            let c = convergents(&cf, q.len());
            for i in 1..c.len() {
                let det = &c[i].0 * &c[i - 1].1 - &c[i - 1].0 * &c[i].1;
                let expected = if i % 2 == 1 { BigInt::one() } else { -BigInt::one() };
                prop_assert_eq!(det, expected);
                if i >= 2 {
                    prop_assert!(c[i].1 > c[i - 1].1);
                }
            }
        }

        #[test]
        fn certified_convergents_are_good(num in 1u64..1_000_000, width in 1u64..1000) {
            let lo = BigRational::new(BigInt::from(num), BigInt::from(1_000_003u64));
            let hi = &lo + BigRational::new(BigInt::from(width), BigInt::from(1u64 << 40));
            if let Some(cf) = certified_cf_of_interval(&lo, &hi) {
                for (p, q) in convergents(&cf, cf.len()) {
                    let x = BigRational::new(p, q.clone());
                    let limit = BigRational::new(BigInt::one(), &q * &q);
                    for end in [&lo, &hi] {
                        prop_assert!((end - &x).abs() < limit);
                    }
                }
                let cyl = cf.cylinder();
                prop_assert!(cyl.lo <= lo && hi <= cyl.hi);
            }
        }
    }
}
