//! Seeded generators shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use autoreal::automaton::{Convention, Dfao};
use autoreal::beta::{FieldElement, IntPoly, NumberField};
use autoreal::contfrac::CfWord;
use autoreal::digits::{periodic_value, PeriodicRational};
use autoreal::words::{Alphabet, Letter};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn golden() -> Arc<NumberField> {
    NumberField::new(IntPoly::from_i64(&[-1, -1, 1])).unwrap()
}

/// A random zero-invariant `k`-automaton, LSB first, with at most `states`
/// states and outputs in `0..outputs`. Draws that are not zero-invariant are
/// rejected; the start state's output is repaired as the library does.
pub fn random_dfao(rng: &mut ChaCha8Rng, k: u32, states: usize, outputs: u32) -> Dfao {
    loop {
        let names = Alphabet::new((0..states).map(|q| format!("q{q}"))).unwrap();
        let out = Alphabet::digits(outputs);
        let delta = (0..states)
            .map(|_| (0..k).map(|_| rng.gen_range(0..states)).collect())
            .collect();
        let output = (0..states)
            .map(|_| Letter(rng.gen_range(0..outputs)))
            .collect();
        let a = Dfao::new(k, names, delta, 0, out, output, Convention::LsbFirst).unwrap();
        if let Ok(a) = a.normalize_zero_invariance() {
            return a;
        }
    }
}

/// Kernel size counted directly from `eval`: distinct subsequences
/// `n -> a(k^i n + j)` compared on `n < len`, for `i <= depth`.
pub fn brute_force_kernel(a: &Dfao, depth: u32, len: u64) -> usize {
    let k = a.k() as u64;
    let mut seen = BTreeSet::new();
    for i in 0..=depth {
        let ki = k.pow(i);
        for j in 0..ki {
            let row: Vec<String> = (0..len)
                .map(|n| a.eval_name(ki * n + j).to_string())
                .collect();
            seen.insert(row);
        }
    }
    seen.len()
}

/// One instance of the digit lemma: a periodic rational, a stream that first
/// differs from it at `j`, and its two extremal continuations' values.
pub struct DistInstance {
    pub x: PeriodicRational,
    pub stream: Vec<u32>,
    pub j: usize,
}

pub fn dist_instance(rng: &mut ChaCha8Rng) -> DistInstance {
    let b = rng.gen_range(2..=16u32);
    let r = rng.gen_range(0..=6);
    let s = rng.gen_range(1..=6);
    let u: Vec<u32> = (0..r).map(|_| rng.gen_range(0..b)).collect();
    let v: Vec<u32> = (0..s).map(|_| rng.gen_range(0..b)).collect();
    let x = periodic_value(&u, &v, b).unwrap();
    let j = x.r() + rng.gen_range(1..=x.s() + 12);
    let mut stream: Vec<u32> = (1..j).map(|t| x.digit(t)).collect();
    stream.push((x.digit(j) + rng.gen_range(1..b)) % b);
    let tail = rng.gen_range(0..12);
    stream.extend((0..tail).map(|_| rng.gen_range(0..b)));
    DistInstance { x, stream, j }
}

/// Random continued fraction `[0; a_1, ..., a_len]` with `1 <= a_i <= m`.
pub fn bounded_cf(rng: &mut ChaCha8Rng, m: u64, len: usize) -> Vec<u64> {
    (0..len).map(|_| rng.gen_range(1..=m)).collect()
}

pub fn cf(q: &[u64]) -> CfWord {
    CfWord::fractional(q).unwrap()
}

/// Binary word with no factor `11`, starting after `prev`.
pub fn golden_admissible(rng: &mut ChaCha8Rng, prev: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    let mut last = prev;
    for _ in 0..len {
        let d = if last == 1 { 0 } else { rng.gen_range(0..2) };
        out.push(d);
        last = d;
    }
    out
}

pub fn has_11(w: &[u32]) -> bool {
    w.windows(2).any(|p| p == [1, 1])
}

/// Golden-field instance of the beta digit lemma: `alpha = 0.U V V ...` and
/// greedy-admissible digits of `xi` that first differ from it at `j > r + s`.
pub struct DistPrimeInstance {
    pub u: Vec<u32>,
    pub v: Vec<u32>,
    pub xi: Vec<u32>,
    pub j: usize,
}

pub fn dist_prime_instance(rng: &mut ChaCha8Rng) -> DistPrimeInstance {
    loop {
        let r = rng.gen_range(0..=4);
        let s = rng.gen_range(1..=4);
        let u = golden_admissible(rng, 0, r);
        let v = golden_admissible(rng, 0, s);
        let j = r + s + rng.gen_range(1..=2 * s + 6);
        let digit = |t: usize| if t <= r { u[t - 1] } else { v[(t - 1 - r) % s] };
        // alpha's own expansion must be admissible too
        let alpha: Vec<u32> = (1..=r + 3 * s + 2).map(digit).collect();
        if has_11(&alpha) || v.iter().all(|&d| d == 0) {
            continue;
        }
        let mut xi: Vec<u32> = (1..j).map(digit).collect();
        xi.push(1 - digit(j));
        let len = 40 + rng.gen_range(0..24);
        let tail = golden_admissible(rng, xi[j - 1], len);
        xi.extend(tail);
        if has_11(&xi) {
            continue;
        }
        return DistPrimeInstance { u, v, xi, j };
    }
}

/// Random `x = (a + b beta) / c` in `[0, 1)` of the golden field.
pub fn golden_unit_element(rng: &mut ChaCha8Rng, field: &Arc<NumberField>) -> FieldElement {
    loop {
        let a = rng.gen_range(-200i64..=200);
        let b = rng.gen_range(-200i64..=200);
        let c = rng.gen_range(1i64..=400);
        let x = FieldElement::from_int(field, a)
            .add(&FieldElement::beta(field).scale(&autoreal::exact::rat(b, 1)))
            .unwrap()
            .scale(&autoreal::exact::rat(1, c));
        let one = FieldElement::one(field);
        if x.sign() >= 0 && one.sub(&x).unwrap().sign() > 0 {
            return x;
        }
    }
}
