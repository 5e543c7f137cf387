//! Acceptance checks 1-11. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Runtime limits are pinned below, as are the suite sizes.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::time::{Duration, Instant};

use autoreal::automaton::Dfao;
use autoreal::beta::{
    beta_periodic_value, greedy_beta_expansion, lemma_dist_prime_check, word_value, FieldElement,
};
use autoreal::cobham::to_morphic;
use autoreal::contfrac::{lemma_dist2_check, periodic_cf_quadratic};
use autoreal::digits::TruncationInterval;
use autoreal::diophantine::{
    build_ladder, empirical_exponent, lemma_dist_check, measure_bound, tmm_verify,
};
use autoreal::exact::{self, rat};
use autoreal::fixtures;
use autoreal::words::repetition_report;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};

const DIST_CASES: usize = 10_000;
const DIST2_CASES: usize = 1_000;
const DIST_PRIME_CASES: usize = 1_000;
const GREEDY_CASES: usize = 1_000;
const GREEDY_N: usize = 24;
const RANDOM_AUTOMATA: usize = 20;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn c1_baum_sweet() -> Outcome {
    let start = Instant::now();
    let w = fixtures::baum_sweet().sequence_prefix(21).to_string();
    ensure(w == "110110010100100110010", || format!("got {w}"))?;
    within(start, Duration::from_secs(1))
}

fn c2_thue_morse() -> Outcome {
    let start = Instant::now();
    let tm = fixtures::thue_morse().sequence_prefix(13).to_string();
    ensure(&tm[1..] == "110100110010", || {
        format!("a_1.. = {}", &tm[1..])
    })?;
    let m = fixtures::thue_morse_morphic();
    let zero = m.internal_prefix(1);
    let s3 = m
        .phi()
        .apply(&m.sigma().iterate(&zero, 3).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(s3.to_string() == "01101001", || {
        format!("sigma^3(0) = {s3}")
    })?;
    within(start, Duration::from_secs(1))
}

fn c3_bound_values() -> Outcome {
    let b = measure_bound(2, 2, 2).map_err(|e| e.to_string())?;
    ensure(b == BigUint::from(20u32), || format!("bound {b}"))?;
    let tm = fixtures::thue_morse();
    let kernel = tm.kernel_size().map_err(|e| e.to_string())?;
    ensure(kernel == 2, || format!("kernel size {kernel}"))?;
    let d = fixtures::thue_morse_morphic().internal_alphabet_size();
    ensure(d == 2, || format!("internal alphabet size {d}"))
}

fn c4_tmm() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for b in [2u32, 3, 10] {
        for n in 2..=5usize {
            let r = tmm_verify(b, n).map_err(|e| e.to_string())?;
            let mut bad = Vec::new();
            if !r.agreement_matches {
                bad.push(format!(
                    "agreement {} != {}",
                    r.agreement, r.expected_agreement
                ));
            }
            if !(r.stream_prefix_ok && r.approximant_prefix_ok && r.divergence_ok) {
                bad.push("divergence digits".to_string());
            }
            if !r.lower_ok {
                bad.push("lower bound".to_string());
            }
            if !r.upper_ok {
                bad.push("upper bound".to_string());
            }
            if !bad.is_empty() {
                failures.push(format!("(b={b}, n={n}): {}", bad.join(", ")));
            }
        }
    }
    within(start, Duration::from_secs(30))?;
    ensure(failures.is_empty(), || failures.join("; "))
}

fn c5_repetitions() -> Outcome {
    let start = Instant::now();
    let w = fixtures::thue_morse_morphic().internal_prefix(1 << 14);
    let r = repetition_report(&w, 2, 2);
    ensure(r.violation_count == 0, || {
        format!(
            "{} prefix powers reach ratio 4 (max {})",
            r.violation_count, r.max_ratio
        )
    })?;
    ensure(r.triple_violation_count == 0, || {
        format!(
            "{} admissible triples with l >= 4h",
            r.triple_violation_count
        )
    })?;
    ensure(r.admissible_count > 0, || {
        "no admissible triples found".into()
    })?;
    within(start, Duration::from_secs(60))
}

fn c6_lemma_dist() -> Outcome {
    let start = Instant::now();
    let mut rng = common::rng(6);
    for case in 0..DIST_CASES {
        let inst = common::dist_instance(&mut rng);
        let b = inst.x.base;
        let rep = lemma_dist_check(&inst.x, &inst.stream, inst.j, inst.stream.len())
            .map_err(|e| format!("case {case}: {e}"))?;
        ensure(rep.holds, || format!("case {case}: not certified"))?;
        let expected = exact::inv_pow(b, inst.j + inst.x.s());
        ensure(rep.bound == expected, || {
            format!("case {case}: bound {}", rep.bound)
        })?;
        let zeros = TruncationInterval::from_digits(b, &inst.stream)
            .map_err(|e| e.to_string())?
            .lo;
        let ones = &zeros + exact::inv_pow(b, inst.stream.len());
        for xi in [zeros, ones] {
            let d = (&xi - &inst.x.value).abs();
            ensure(d > expected, || {
                format!("case {case}: extremal continuation at distance {d}")
            })?;
        }
    }
    within(start, Duration::from_secs(60))
}

fn c7_mesir_ladder() -> Outcome {
    let m = to_morphic(&fixtures::baum_sweet()).map_err(|e| e.to_string())?;
    let rep = build_ladder(&m, 2, 8, &rat(1, 4)).map_err(|e| e.to_string())?;
    ensure(rep.records.len() == 9, || {
        format!("{} records", rep.records.len())
    })?;
    for r in &rep.records {
        for name in ["prefix_agreement", "approximation_order"] {
            let ok = r.checks.get(name).is_some_and(|c| c.holds);
            ensure(ok, || format!("n = {}: {name} not certified", r.n))?;
        }
    }
    for name in ["denominator_growth", "kernel_lower_bound"] {
        let t = rep.thresholds.get(name).copied().flatten();
        ensure(t.is_some(), || format!("{name}: no threshold in range"))?;
        let later = rep.later_violations.get(name).map_or(0, Vec::len);
        ensure(later == 0, || {
            format!("{name}: {later} violations after the threshold")
        })?;
    }
    Ok(())
}

fn c8_exponent() -> Outcome {
    let start = Instant::now();
    let rep = empirical_exponent(&fixtures::thue_morse(), 2, 10_000).map_err(|e| e.to_string())?;
    let certified: Vec<_> = rep.convergents.iter().filter(|c| c.certified).collect();
    ensure(!certified.is_empty(), || "no certified convergents".into())?;
    for c in &certified {
        ensure(c.lower >= rat(2, 1), || {
            format!("convergent {} has exponent below 2", c.index)
        })?;
    }
    let max = rep.max_exponent.clone().ok_or("no maximum")?;
    ensure(max <= rat(5, 1), || format!("max exponent {max}"))?;
    within(start, Duration::from_secs(120))
}

fn c9_quadratic() -> Outcome {
    let mut q = periodic_cf_quadratic(&[BigUint::one()]).map_err(|e| e.to_string())?;
    let expected: Vec<BigInt> = vec![(-1).into(), 1.into(), 1.into()];
    ensure(q.poly == expected, || format!("polynomial {:?}", q.poly))?;
    let cf = q.cf_prefix(30);
    ensure(
        cf.a0 == BigInt::from(0) && cf.quotients.iter().all(One::is_one),
        || format!("re-expansion {cf:?}"),
    )?;

    let mut rng = common::rng(9);
    use rand::Rng;
    for case in 0..DIST2_CASES {
        let m = rng.gen_range(2..=6u64);
        let n = rng.gen_range(0..12usize);
        let shared = common::bounded_cf(&mut rng, m, n);
        let la = 1 + rng.gen_range(0..8);
        let mut a = common::bounded_cf(&mut rng, m, la);
        let lb = 1 + rng.gen_range(0..8);
        let mut b = common::bounded_cf(&mut rng, m, lb);
        if a[0] == b[0] {
            b[0] = if a[0] == m { 1 } else { a[0] + 1 };
        }
        a.splice(0..0, shared.iter().copied());
        b.splice(0..0, shared);
        let (alpha, xi) = (common::cf(&a), common::cf(&b));
        let rep = lemma_dist2_check(&alpha, &xi, &BigUint::from(m))
            .map_err(|e| format!("case {case}: {e}"))?;
        ensure(rep.n == n, || {
            format!("case {case}: agreement {} != {n}", rep.n)
        })?;
        ensure(rep.holds, || {
            format!(
                "case {case}: distance {} below {}",
                rep.distance_lower, rep.bound
            )
        })?;
    }
    Ok(())
}

fn c10_beta() -> Outcome {
    let start = Instant::now();
    let f = common::golden();
    let one = FieldElement::one(&f);
    let v = word_value(&[1, 1], &f).map_err(|e| e.to_string())?;
    ensure(v == one, || format!("word_value(11) = {:?}", v.coeffs()))?;
    let b = beta_periodic_value(&[], &[1], &f).map_err(|e| e.to_string())?;
    ensure(b == FieldElement::beta(&f), || {
        format!("0.(1) = {:?}", b.coeffs())
    })?;

    let mut rng = common::rng(10);
    for case in 0..GREEDY_CASES {
        let x = common::golden_unit_element(&mut rng, &f);
        let g = greedy_beta_expansion(&x, GREEDY_N).map_err(|e| format!("case {case}: {e}"))?;
        for r in 0..=GREEDY_N {
            let gap = x
                .sub(&word_value(&g.digits[..r], &f).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let limit = FieldElement::beta(&f)
                .pow(-(r as i64))
                .map_err(|e| e.to_string())?;
            ensure(gap.sign() >= 0, || {
                format!("case {case}: negative tail at r = {r}")
            })?;
            ensure(
                limit.sub(&gap).map_err(|e| e.to_string())?.sign() > 0,
                || format!("case {case}: tail at r = {r} reaches beta^-r"),
            )?;
        }
    }
    for case in 0..DIST_PRIME_CASES {
        let inst = common::dist_prime_instance(&mut rng);
        let rep = lemma_dist_prime_check(&inst.u, &inst.v, &f, &inst.xi, inst.j)
            .map_err(|e| format!("case {case}: {e}"))?;
        ensure(rep.holds, || {
            format!(
                "case {case}: U = {:?}, V = {:?}, j = {}, xi = {:?}",
                inst.u, inst.v, inst.j, inst.xi
            )
        })?;
    }
    within(start, Duration::from_secs(120))
}

fn c11_oracles() -> Outcome {
    let mut set: Vec<(String, Dfao)> = vec![
        ("thue-morse".into(), fixtures::thue_morse()),
        ("baum-sweet".into(), fixtures::baum_sweet()),
    ];
    let mut rng = common::rng(11);
    use rand::Rng;
    for i in 0..RANDOM_AUTOMATA {
        let states = rng.gen_range(1..=5);
        let outputs = rng.gen_range(2..=3);
        set.push((
            format!("random #{i}"),
            common::random_dfao(&mut rng, 2, states, outputs),
        ));
    }
    for (name, a) in &set {
        let fast = a.kernel_size().map_err(|e| format!("{name}: {e}"))?;
        let slow = common::brute_force_kernel(a, 8, 256);
        ensure(fast == slow, || {
            format!("{name}: kernel {fast} by minimization, {slow} by counting")
        })?;
        let rev = a.reverse_reading().map_err(|e| format!("{name}: {e}"))?;
        for n in 0..1u64 << 12 {
            ensure(rev.eval_name(n) == a.eval_name(n), || {
                format!("{name}: reversal differs at n = {n}")
            })?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("Baum-Sweet prefix", c1_baum_sweet),
        ("Thue-Morse digits and sigma^3(0)", c2_thue_morse),
        ("bound and kernel values", c3_bound_values),
        ("Thue-Morse-Mahler instantiation", c4_tmm),
        ("prefix repetitions and admissible triples", c5_repetitions),
        ("digit lemma property suite", c6_lemma_dist),
        ("Baum-Sweet ladder", c7_mesir_ladder),
        ("empirical exponent", c8_exponent),
        ("quadratic approximants and CF lemma", c9_quadratic),
        ("beta-field identities and suites", c10_beta),
        ("kernel and reversal oracles", c11_oracles),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({t:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({t:.2?}): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
