use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::field::{FieldElement, NumberField};
use crate::error::{Error, Result};
use crate::exact::Interval;

fn check_digits(digits: &[u32], field: &NumberField) -> Result<()> {
    let top = field.floor_beta();
    match digits.iter().find(|&&d| d > top) {
        Some(&d) => Err(Error::NotADigit(d.to_string(), top + 1)),
        None => Ok(()),
    }
}

/// `sum_{n >= 1} d_n beta^-n` for a finite digit string `d_1 d_2 ...`.
pub fn word_value(digits: &[u32], field: &Arc<NumberField>) -> Result<FieldElement> {
    check_digits(digits, field)?;
    let inv = FieldElement::beta(field).inv()?;
    let mut acc = FieldElement::zero(field);
    for &d in digits.iter().rev() {
        acc = acc
            .add(&FieldElement::from_int(field, d as i64))?
            .mul(&inv)?;
    }
    Ok(acc)
}

/// Greedy digits and the final remainder `T^N(x)`, with `x = 0.d_1...d_N + beta^-N T^N(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyExpansion {
    pub digits: Vec<u32>,
    pub remainder: FieldElement,
}

/// Renyi's greedy expansion of `x` in `[0, 1)`: `d_n = floor(beta T^(n-1)(x))`.
///
/// Every remainder is checked to lie in `[0, 1)`, which is the tail
/// condition `sum_{n > r} d_n beta^-n < beta^-r` for each prefix length `r`.
pub fn greedy_beta_expansion(x: &FieldElement, n: usize) -> Result<GreedyExpansion> {
    let field = x.field().clone();
    let one = FieldElement::one(&field);
    let in_unit =
        |y: &FieldElement| -> Result<bool> { Ok(y.sign() >= 0 && one.sub(y)?.sign() > 0) };
    if !in_unit(x)? {
        return Err(Error::Precondition(
            "greedy expansion needs 0 <= x < 1".into(),
        ));
    }
    let beta = FieldElement::beta(&field);
    let top = field.floor_beta();
    let mut cur = x.clone();
    let mut digits = Vec::with_capacity(n);
    for _ in 0..n {
        let y = beta.mul(&cur)?;
        // largest c <= floor(beta) with y - c >= 0
        let mut digit = 0;
        for c in (1..=top).rev() {
            if y.sub(&FieldElement::from_int(&field, c as i64))?.sign() >= 0 {
                digit = c;
                break;
            }
        }
        cur = y.sub(&FieldElement::from_int(&field, digit as i64))?;
        if !in_unit(&cur)? {
            return Err(Error::Precondition("greedy remainder left [0, 1)".into()));
        }
        digits.push(digit);
    }
    Ok(GreedyExpansion {
        digits,
        remainder: cur,
    })
}

/// Value of `0.U V V V ...` in base `beta`.
pub fn beta_periodic_value(u: &[u32], v: &[u32], field: &Arc<NumberField>) -> Result<FieldElement> {
    if v.is_empty() {
        return Err(Error::EmptyWord);
    }
    let beta = FieldElement::beta(field);
    let head = word_value(u, field)?;
    let period = word_value(v, field)?;
    let bs = beta.pow(v.len() as i64)?;
    // V-part: beta^-r * val(V) * beta^s / (beta^s - 1)
    let factor = bs.mul(&bs.sub(&FieldElement::one(field))?.inv()?)?;
    let tail = period.mul(&factor)?.mul(&beta.pow(-(u.len() as i64))?)?;
    head.add(&tail)
}

/// Digit `t >= 1` of the written expansion `U V V ...`.
fn periodic_digit(u: &[u32], v: &[u32], t: usize) -> u32 {
    if t <= u.len() {
        u[t - 1]
    } else {
        v[(t - 1 - u.len()) % v.len()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaDistPrimeReport {
    pub j: usize,
    pub r: usize,
    pub s: usize,
    pub l: usize,
    /// Enclosure of `1 / ((s+1)^(l-1) beta^(j+s+l-1))`.
    #[serde(serialize_with = "ser_interval")]
    pub bound: Interval,
    pub depth: usize,
    pub holds: bool,
}

fn ser_interval<S: serde::Serializer>(x: &Interval, s: S) -> std::result::Result<S::Ok, S::Error> {
    use crate::exact::format_rational;
    s.collect_seq([format_rational(&x.lo), format_rational(&x.hi)])
}

/// Certifies `|xi - alpha| > 1 / ((s+1)^(l-1) beta^(j+s+l-1))` for `alpha = 0.U V V ...`
/// and `xi` given by greedy digits that first differ from `alpha`'s at `j > r + s`.
///
/// The greedy tail property gives `xi` in `[val(prefix_D), val(prefix_D) + beta^-D]`,
/// and the comparison is reduced to exact sign tests at growing depth `D`.
pub fn lemma_dist_prime_check(
    u: &[u32],
    v: &[u32],
    field: &Arc<NumberField>,
    xi_digits: &[u32],
    j: usize,
) -> Result<LemmaDistPrimeReport> {
    let (r, s, l) = (u.len(), v.len(), field.degree());
    if j <= r + s {
        return Err(Error::Precondition(format!(
            "need j > r + s, got j = {j}, r + s = {}",
            r + s
        )));
    }
    if xi_digits.len() < j {
        return Err(Error::StreamExhausted {
            needed: j,
            available: xi_digits.len(),
        });
    }
    if let Some(t) = (1..j).find(|&t| xi_digits[t - 1] != periodic_digit(u, v, t)) {
        return Err(Error::Precondition(format!(
            "digits already differ at position {t} < j = {j}"
        )));
    }
    if xi_digits[j - 1] == periodic_digit(u, v, j) {
        return Err(Error::Precondition(format!(
            "digits agree at position j = {j}"
        )));
    }
    let alpha = beta_periodic_value(u, v, field)?;
    let beta = FieldElement::beta(field);
    let scale =
        BigRational::from_integer(num_traits::pow(num_bigint::BigInt::from(s + 1), l - 1)).recip();
    let bound = beta.pow(-((j + s + l - 1) as i64))?.scale(&scale);
    let bound_enclosure = bound
        .enclosure_within(&(bound.enclosure().hi / BigRational::from_integer(BigInt::one() << 40)));

    let mut depth = (j + s + l + 8).min(xi_digits.len());
    loop {
        let head = word_value(&xi_digits[..depth], field)?;
        let diff = head.sub(&alpha)?;
        let tail = beta.pow(-(depth as i64))?;
        // xi - alpha lies in [diff, diff + tail]
        let above = diff.sub(&bound)?.sign() > 0;
        let below = diff.add(&tail)?.add(&bound)?.sign() < 0;
        // certified failure: the whole range sits inside (-bound, bound)
        let inside = diff.add(&bound)?.sign() > 0 && bound.sub(&diff.add(&tail)?)?.sign() > 0;
        if above || below || inside {
            return Ok(LemmaDistPrimeReport {
                j,
                r,
                s,
                l,
                bound: bound_enclosure,
                depth,
                holds: !inside,
            });
        }
        if depth == xi_digits.len() {
            return Err(Error::Undecided(format!(
                "not separated with all {depth} digits"
            )));
        }
        depth = (2 * depth).min(xi_digits.len());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beta::poly::IntPoly;
    use crate::exact::rat;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn golden() -> Arc<NumberField> {
        NumberField::new(IntPoly::from_i64(&[-1, -1, 1])).unwrap()
    }

    const PHI: f64 = 1.618_033_988_749_895;

    #[test]
    fn word_values() {
        let f = golden();
        let one = FieldElement::one(&f);
        let b = FieldElement::beta(&f);
        assert_eq!(word_value(&[1, 1], &f).unwrap(), one);
        assert!(word_value(&[], &f).unwrap().is_zero());
        assert_eq!(word_value(&[1, 0], &f).unwrap(), b.sub(&one).unwrap());
        assert!(matches!(word_value(&[2], &f), Err(Error::NotADigit(..))));
    }

    #[test]
    fn greedy_examples() {
        let f = golden();
        let one = FieldElement::one(&f);
        let x = FieldElement::beta(&f).sub(&one).unwrap();
        assert_eq!(
            greedy_beta_expansion(&x, 4).unwrap().digits,
            vec![1, 0, 0, 0]
        );
        let zero = FieldElement::zero(&f);
        assert_eq!(greedy_beta_expansion(&zero, 5).unwrap().digits, vec![0; 5]);
        assert!(greedy_beta_expansion(&one, 3).is_err());

        let half = FieldElement::from_rational(&f, rat(1, 2));
        let exact = greedy_beta_expansion(&half, 8).unwrap().digits;
        // floating-point greedy run, far from every floor boundary here
        let mut y = 0.5f64;
        let mut oracle = Vec::new();
        for _ in 0..8 {
            y *= PHI;
            let d = y.floor();
            assert!((y - d).abs() > 1e-6 && (y - d - 1.0).abs() > 1e-6);
            oracle.push(d as u32);
            y -= d;
        }
        assert_eq!(exact, oracle);
    }

    #[test]
    fn periodic_values() {
        let f = golden();
        let b = FieldElement::beta(&f);
        let one = FieldElement::one(&f);
        assert_eq!(beta_periodic_value(&[], &[1], &f).unwrap(), b);
        assert_eq!(
            beta_periodic_value(&[1], &[0], &f).unwrap(),
            b.sub(&one).unwrap()
        );
        assert!(matches!(
            beta_periodic_value(&[1], &[], &f),
            Err(Error::EmptyWord)
        ));
        // 0.(100)^inf is greedy-admissible: the expansion comes back
        let x = beta_periodic_value(&[], &[1, 0, 0], &f).unwrap();
        assert_eq!(
            greedy_beta_expansion(&x, 9).unwrap().digits,
            vec![1, 0, 0, 1, 0, 0, 1, 0, 0]
        );
    }

    #[test]
    fn dist_prime_golden() {
        let f = golden();
        let (u, v) = ([1u32], [0u32, 0]);
        // alpha = 0.1000..., xi differs at j = 5
        let xi = [1u32, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0];
        let rep = lemma_dist_prime_check(&u, &v, &f, &xi, 5).unwrap();
        assert!(rep.holds);
        // 1 / (3 beta^8) ~ 0.007
        let target = 1.0 / (3.0 * PHI.powi(8));
        let lo = rep.bound.lo.to_f64().unwrap();
        assert!((lo - target).abs() < 1e-9);
        assert!(lemma_dist_prime_check(&u, &v, &f, &xi, 3).is_err());
        assert!(lemma_dist_prime_check(&u, &v, &f, &xi, 4).is_err());
    }

    #[test]
    fn integer_base_matches_decimal_lemma() {
        let ten = NumberField::new(IntPoly::from_i64(&[-10, 1])).unwrap();
        let (u, v) = ([1u32], [2u32, 3]);
        let xi = [1u32, 2, 3, 2, 3, 2, 3, 2, 9, 9, 9, 9, 9, 9, 9, 9];
        let rep = lemma_dist_prime_check(&u, &v, &ten, &xi, 9).unwrap();
        assert!(rep.holds);
        // (s+1)^0 beta^-(j+s) = 10^-11
        assert_eq!(rep.bound, Interval::point(crate::exact::inv_pow(10, 11)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn greedy_tail_and_value(n in 0i64..1000, d in 1001i64..4000, len in 1usize..24) {
            let f = golden();
            let x = FieldElement::from_rational(&f, rat(n, d));
            let g = greedy_beta_expansion(&x, len).unwrap();
            // no two consecutive ones in golden greedy digits
            prop_assert!(g.digits.windows(2).all(|w| w != [1, 1]));
            let back = word_value(&g.digits, &f).unwrap();
            let gap = x.sub(&back).unwrap();
            let bound = FieldElement::beta(&f).pow(-(len as i64)).unwrap();
            prop_assert!(gap.sign() >= 0);
            prop_assert!(bound.sub(&gap).unwrap().sign() > 0);
        }
    }
}
