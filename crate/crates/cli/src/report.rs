use std::fmt::Write as _;
use std::io::Write as _;

use autoreal::beta::BetaLadderReport;
use autoreal::contfrac::QuadraticLadder;
use autoreal::diophantine::{ExponentReport, LadderReport, TmmReport};
use autoreal::exact::format_rational;
use serde_json::{json, Value};

pub struct Report {
    /// `None` for purely informational output.
    holds: Option<bool>,
    human: String,
    json: Value,
}

impl Report {
    pub fn info(human: String, json: Value) -> Report {
        Report {
            holds: None,
            human,
            json,
        }
    }

    /// Output that is a JSON document in either format.
    pub fn document(json: Value) -> Report {
        let human = serde_json::to_string_pretty(&json).expect("serializable");
        Report {
            holds: None,
            human,
            json,
        }
    }

    pub fn check(holds: bool, human: String, mut json: Value) -> Report {
        if let Value::Object(map) = &mut json {
            map.insert("holds".into(), Value::Bool(holds));
        }
        Report {
            holds: Some(holds),
            human,
            json,
        }
    }

    pub fn holds(&self) -> bool {
        self.holds.unwrap_or(true)
    }

    /// Writes to stdout; a closed pipe is not an error.
    pub fn print(&self, json: bool) {
        let text = if json {
            serde_json::to_string_pretty(&self.json).expect("serializable")
        } else {
            self.human.trim_end().to_string()
        };
        let _ = writeln!(std::io::stdout().lock(), "{text}");
    }
}

fn mark(holds: bool) -> &'static str {
    if holds {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn ladder(rep: &LadderReport) -> Report {
    let rows = rep.rows();
    let mut h = String::new();
    let _ = writeln!(
        h,
        "{:?} ladder: base {}, k = {}, d = {}, m = {}, epsilon = {}",
        rep.kind,
        rep.base,
        rep.k,
        rep.d,
        rep.m,
        format_rational(&rep.epsilon)
    );
    for r in &rows {
        let margin = match (&r.margin_num, &r.margin_den) {
            (Some(n), Some(d)) if d == "1" => n.clone(),
            (Some(n), Some(d)) => format!("{n}/{d}"),
            _ => "-".into(),
        };
        let _ = writeln!(
            h,
            "  n={:<3} {:<22} {:<4} margin {margin}",
            r.index,
            r.inequality,
            mark(r.holds)
        );
    }
    for (name, t) in &rep.thresholds {
        let later = &rep.later_violations[name];
        let t = t.map_or("none".to_string(), |t| t.to_string());
        let _ = writeln!(h, "threshold {name}: {t}, later violations {later:?}");
    }
    for w in &rep.warnings {
        let _ = writeln!(h, "warning: {w}");
    }
    let json = json!({
        "rows": rows,
        "thresholds": rep.thresholds,
        "later_violations": rep.later_violations,
        "warnings": rep.warnings,
        "report": rep,
    });
    Report::check(rep.holds(), h, json)
}

pub fn tmm(rep: &TmmReport) -> Report {
    let mut h = String::new();
    let _ = writeln!(
        h,
        "base {}, n = {}: first difference at j = {}",
        rep.base, rep.n, rep.j
    );
    let _ = writeln!(
        h,
        "digit agreement {} (expected {}{})",
        rep.agreement,
        rep.expected_agreement,
        if rep.agreement_matches {
            ""
        } else {
            ", differs"
        }
    );
    let _ = writeln!(
        h,
        "divergence digits: {}",
        mark(rep.divergence_ok && rep.stream_prefix_ok && rep.approximant_prefix_ok)
    );
    let e = 5usize << rep.n;
    let _ = writeln!(h, "lower bound b^-{}: {}", e + 3, mark(rep.lower_ok));
    let _ = writeln!(h, "upper bound b^-{}: {}", e + 2, mark(rep.upper_ok));
    Report::check(
        rep.holds(),
        h,
        serde_json::to_value(rep).expect("serializable"),
    )
}

pub fn exponent(rep: &ExponentReport) -> Report {
    let mut h = String::new();
    let _ = writeln!(h, "base {}, depth {}", rep.base, rep.depth);
    for c in &rep.convergents {
        let upper = c.upper.as_ref().map_or("-".to_string(), format_rational);
        let _ = writeln!(
            h,
            "  #{:<4} q has {:>6} bits  exponent in [{}, {}]{}",
            c.index,
            c.q.bits(),
            format_rational(&c.lower),
            upper,
            if c.certified { "" } else { "  (uncertified)" }
        );
    }
    if let Some(m) = &rep.max_exponent {
        let _ = writeln!(h, "max certified exponent <= {}", format_rational(m));
    }
    Report::info(h, serde_json::to_value(rep).expect("serializable"))
}

pub fn quadratic(rep: &QuadraticLadder) -> Report {
    let mut h = String::new();
    for r in &rep.records {
        let _ = writeln!(
            h,
            "  n={:<3} s={:<6} t={:<6} H={}  H<q_s {}  approx {}",
            r.n,
            r.s_n,
            r.t_n,
            r.height,
            mark(r.height_below_q_s),
            mark(r.approximation)
        );
    }
    if rep.degenerate {
        let _ = writeln!(h, "warning: all approximants coincide");
    }
    Report::check(
        rep.holds(),
        h,
        serde_json::to_value(rep).expect("serializable"),
    )
}

pub fn beta_ladder(rep: &BetaLadderReport) -> Report {
    let mut h = String::new();
    let _ = writeln!(
        h,
        "beta ~ {} root of {}, d = {}, m = {}, epsilon = {}",
        rep.beta, rep.minpoly, rep.d, rep.m, rep.epsilon
    );
    for r in &rep.records {
        let _ = writeln!(
            h,
            "  n={:<3} r={:<5} s={:<5} j={:<6} H has {:>5} bits  approx {}",
            r.n,
            r.r,
            r.s,
            r.j,
            r.height.bits(),
            mark(r.approximation.holds)
        );
    }
    let t = rep.threshold.map_or("none".to_string(), |t| t.to_string());
    let _ = writeln!(
        h,
        "threshold {t}, later violations {:?}",
        rep.later_violations
    );
    let _ = writeln!(
        h,
        "fitted height constant: log2 C ~ {:.3}",
        rep.fitted_constant_log2
    );
    match &rep.conditions.conclusion {
        Some(c) => {
            let _ = writeln!(h, "{c}");
        }
        None => {
            let _ = writeln!(h, "hypotheses not met on the scanned range");
        }
    }
    for w in &rep.warnings {
        let _ = writeln!(h, "warning: {w}");
    }
    Report::check(
        rep.holds(),
        h,
        serde_json::to_value(rep).expect("serializable"),
    )
}
