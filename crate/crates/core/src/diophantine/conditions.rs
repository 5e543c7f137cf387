use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::{below_power, split, GrowthBracket, GRID};
use crate::exact::{self, Interval};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionRecord {
    pub height: BigRational,
    /// Enclosure of `|xi - alpha_n|`.
    pub error: Interval,
    /// The approximant itself, when distinctness should be checked.
    pub value: Option<BigRational>,
}

impl ConditionRecord {
    pub fn exact(height: BigRational, error: BigRational) -> ConditionRecord {
        ConditionRecord {
            height,
            error: Interval::point(error),
            value: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConditionMode {
    Baker,
    Lemma53,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionParams {
    /// `|xi - p_n/q_n| < q_n^-(2+epsilon)`.
    Baker { epsilon: BigRational },
    /// `H_n < H_{n+1} < H_n^s` and `H_n^-eta' < err_n < H_n^-eta`.
    Lemma53 {
        s: u64,
        eta: BigRational,
        eta_prime: BigRational,
    },
}

impl ConditionParams {
    pub fn mode(&self) -> ConditionMode {
        match self {
            ConditionParams::Baker { .. } => ConditionMode::Baker,
            ConditionParams::Lemma53 { .. } => ConditionMode::Lemma53,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionRow {
    pub index: usize,
    pub condition: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub mode: ConditionMode,
    pub rows: Vec<ConditionRow>,
    /// `log H_{n+1} / log H_n` brackets.
    pub growth: Vec<GrowthBracket>,
    /// `None` when distinctness was not checked (no values supplied).
    pub distinct: Option<bool>,
    pub holds: bool,
    pub conclusion: Option<String>,
}

pub const BAKER_CONCLUSION: &str = "hypotheses of Baker's theorem hold on the scanned range";

fn lemma53_conclusion(eta: &BigRational) -> String {
    format!(
        "not U_t for t < {} on the scanned range",
        exact::format_rational(eta)
    )
}

/// Checks the hypotheses of the Baker-type or Lemma-53-type criterion on a
/// finite ladder. Only the finite-range statements are certified.
pub fn ladder_conditions_report(
    records: &[ConditionRecord],
    params: &ConditionParams,
) -> ConditionReport {
    let one = BigRational::one();
    let mut rows = Vec::new();
    let growth: Vec<GrowthBracket> = records
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].height > one && w[1].height > one)
        .map(|(n, w)| {
            let (lo, hi) = exact::log_ratio_bracket(&w[1].height, &w[0].height, GRID);
            GrowthBracket { n, lo, hi }
        })
        .collect();
    let mut distinct = None;
    match params {
        ConditionParams::Baker { epsilon } => {
            let e = BigRational::from_integer(2.into()) + epsilon;
            for (n, r) in records.iter().enumerate() {
                let holds = r.height > one && below_power(&r.error, &r.height, &e, GRID).holds;
                rows.push(ConditionRow {
                    index: n,
                    condition: "approximation",
                    holds,
                });
                rows.push(ConditionRow {
                    index: n,
                    condition: "height_above_one",
                    holds: r.height > one,
                });
            }
            if records.iter().all(|r| r.value.is_some()) {
                let vals: Vec<&BigRational> =
                    records.iter().filter_map(|r| r.value.as_ref()).collect();
                distinct =
                    Some((0..vals.len()).all(|i| (i + 1..vals.len()).all(|j| vals[i] != vals[j])));
            }
        }
        ConditionParams::Lemma53 { s, eta, eta_prime } => {
            for (n, w) in records.windows(2).enumerate() {
                let (h, h1) = (&w[0].height, &w[1].height);
                let holds = h < h1 && exact::pow_cmp(h1, 1, h, *s) == Ordering::Less;
                rows.push(ConditionRow {
                    index: n,
                    condition: "height_growth",
                    holds,
                });
            }
            let (un, ud) = split(eta);
            let (ln, ld) = split(eta_prime);
            for (n, r) in records.iter().enumerate() {
                let inv = r.height.recip();
                // err < H^-eta  and  err > H^-eta'
                let upper =
                    r.height > one && exact::pow_cmp(&r.error.hi, ud, &inv, un) == Ordering::Less;
                let lower = r.height > one
                    && exact::pow_cmp(&r.error.lo, ld, &inv, ln) == Ordering::Greater;
                rows.push(ConditionRow {
                    index: n,
                    condition: "error_window",
                    holds: upper && lower,
                });
            }
        }
    }
    let holds = !records.is_empty() && rows.iter().all(|r| r.holds) && distinct != Some(false);
    let conclusion = holds.then(|| match params {
        ConditionParams::Baker { .. } => BAKER_CONCLUSION.to_string(),
        ConditionParams::Lemma53 { eta, .. } => lemma53_conclusion(eta),
    });
    ConditionReport {
        mode: params.mode(),
        rows,
        growth,
        distinct,
        holds,
        conclusion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_pow};
    use crate::fixtures;

    fn lemma53(s: u64) -> ConditionParams {
        ConditionParams::Lemma53 {
            s,
            eta: rat(3, 1),
            eta_prime: rat(4, 1),
        }
    }

    #[test]
    fn geometric_ladder() {
        // H_{n+1} = H_n^2 - 1 keeps the growth strict; err = 1 / (2 H^3)
        let mut h = rat(3, 1);
        let mut recs = Vec::new();
        for _ in 0..5 {
            let err = (rat(2, 1) * rat_pow(&h, 3)).recip();
            recs.push(ConditionRecord::exact(h.clone(), err));
            h = &h * &h - rat(1, 1);
        }
        let rep = ladder_conditions_report(&recs, &lemma53(2));
        assert!(rep.holds, "{:?}", rep.rows);
        assert_eq!(
            rep.conclusion.as_deref(),
            Some("not U_t for t < 3 on the scanned range")
        );
    }

    #[test]
    fn equality_is_not_strict() {
        // H_{n+1} = H_n^2 with err = H_n^-3 meets both bounds with equality
        let mut h = rat(3, 1);
        let mut recs = Vec::new();
        for _ in 0..4 {
            recs.push(ConditionRecord::exact(h.clone(), rat_pow(&h, 3).recip()));
            h = &h * &h;
        }
        let rep = ladder_conditions_report(&recs, &lemma53(2));
        assert!(!rep.holds);
        assert!(rep
            .rows
            .iter()
            .filter(|r| r.condition == "height_growth")
            .all(|r| !r.holds));
        assert!(rep
            .rows
            .iter()
            .filter(|r| r.condition == "error_window")
            .all(|r| !r.holds));
        assert!(rep.conclusion.is_none());
    }

    #[test]
    fn non_monotone_heights() {
        let recs = vec![
            ConditionRecord::exact(rat(100, 1), rat(1, 2_000_000)),
            ConditionRecord::exact(rat(50, 1), rat(1, 200_000)),
        ];
        let rep = ladder_conditions_report(&recs, &lemma53(2));
        assert!(!rep.rows[0].holds);
        assert!(!rep.holds);
    }

    #[test]
    fn baker_from_overlap_ladder() {
        let ladder = super::super::overlap_ladder(&fixtures::k3_overlap_morphic(), 2, 5).unwrap();
        let recs: Vec<ConditionRecord> = ladder
            .records
            .iter()
            .map(|r| ConditionRecord {
                height: BigRational::from_integer(r.q.clone().into()),
                error: r.distance.clone(),
                value: Some(r.value.value.clone()),
            })
            .collect();
        let rep = ladder_conditions_report(&recs, &ConditionParams::Baker { epsilon: rat(1, 3) });
        assert!(rep.holds, "{:?}", rep.rows);
        assert_eq!(rep.distinct, Some(true));
        assert_eq!(rep.conclusion.as_deref(), Some(BAKER_CONCLUSION));
        assert!(rep.growth.iter().all(|g| g.hi <= rat(4, 1)));
    }
}
