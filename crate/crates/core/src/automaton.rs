//! Deterministic finite automata with output reading base-`k` digits.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

/// Order in which the digits of `n` are fed to the automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Convention {
    LsbFirst,
    MsbFirst,
}

impl Convention {
    pub fn opposite(self) -> Convention {
        match self {
            Convention::LsbFirst => Convention::MsbFirst,
            Convention::MsbFirst => Convention::LsbFirst,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::LsbFirst => "LSB_FIRST",
            Convention::MsbFirst => "MSB_FIRST",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Default bound on the number of states accepted by [`Dfao::reverse_reading`].
pub const REVERSAL_GUARD: usize = 12;

/// Cap on the transition-monoid exploration during reversal.
const MONOID_CAP: usize = 1 << 20;

/// A `k`-automaton with output.
#[derive(Clone)]
pub struct Dfao {
    k: u32,
    states: Arc<Alphabet>,
    delta: Vec<Vec<usize>>,
    q0: usize,
    outputs: Arc<Alphabet>,
    output: Vec<Letter>,
    convention: Convention,
    reversed: OnceLock<Arc<Dfao>>,
}

impl PartialEq for Dfao {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
            && self.states == other.states
            && self.delta == other.delta
            && self.q0 == other.q0
            && self.outputs == other.outputs
            && self.output == other.output
            && self.convention == other.convention
    }
}

impl Eq for Dfao {}

impl fmt::Debug for Dfao {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dfao")
            .field("k", &self.k)
            .field("states", &self.states)
            .field("delta", &self.delta)
            .field("q0", &self.q0)
            .field(
                "output",
                &self
                    .output
                    .iter()
                    .map(|l| self.outputs.name(*l))
                    .collect::<Vec<_>>(),
            )
            .field("convention", &self.convention)
            .finish()
    }
}

impl Dfao {
    /// `delta[q][d]` is the successor of state `q` on digit `d`.
    pub fn new(
        k: u32,
        states: Arc<Alphabet>,
        delta: Vec<Vec<usize>>,
        q0: usize,
        outputs: Arc<Alphabet>,
        output: Vec<Letter>,
        convention: Convention,
    ) -> Result<Dfao> {
        if k < 2 {
            return Err(Error::InvalidBase(k));
        }
        let n = states.len();
        if delta.len() != n || output.len() != n {
            return Err(Error::InvalidAutomaton(format!(
                "{} states but {} transition rows and {} outputs",
                n,
                delta.len(),
                output.len()
            )));
        }
        if q0 >= n {
            return Err(Error::InvalidAutomaton("start state out of range".into()));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != k as usize {
                return Err(Error::InvalidAutomaton(format!(
                    "state `{}` has {} transitions, expected {k}",
                    states.name(Letter(q as u32)),
                    row.len()
                )));
            }
            if row.iter().any(|&t| t >= n) {
                return Err(Error::InvalidAutomaton(
                    "transition to unknown state".into(),
                ));
            }
        }
        if output.iter().any(|l| l.index() >= outputs.len()) {
            return Err(Error::InvalidAutomaton(
                "output outside output alphabet".into(),
            ));
        }
        Ok(Dfao {
            k,
            states,
            delta,
            q0,
            outputs,
            output,
            convention,
            reversed: OnceLock::new(),
        })
    }

    /// One-state automaton with constant output.
    pub fn constant(k: u32, value: &str, convention: Convention) -> Result<Dfao> {
        Dfao::new(
            k,
            Alphabet::new(["q0"])?,
            vec![vec![0; k as usize]],
            0,
            Alphabet::new([value])?,
            vec![Letter(0)],
            convention,
        )
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn states(&self) -> &Arc<Alphabet> {
        &self.states
    }

    pub fn start(&self) -> usize {
        self.q0
    }

    pub fn transition(&self, q: usize, d: u32) -> usize {
        self.delta[q][d as usize]
    }

    pub fn output_alphabet(&self) -> &Arc<Alphabet> {
        &self.outputs
    }

    pub fn output_of(&self, q: usize) -> Letter {
        self.output[q]
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn state_name(&self, q: usize) -> &str {
        self.states.name(Letter(q as u32))
    }

    /// Base-`k` digits of `n`, least significant first; `[0]` for `n = 0`.
    pub fn digits_lsb(&self, mut n: u64) -> Vec<u32> {
        let k = self.k as u64;
        let mut out = Vec::with_capacity(64);
        loop {
            out.push((n % k) as u32);
            n /= k;
            if n == 0 {
                break;
            }
        }
        out
    }

    /// State reached from `q` after reading `digits` in order.
    pub fn run_from(&self, q: usize, digits: &[u32]) -> usize {
        digits.iter().fold(q, |s, &d| self.delta[s][d as usize])
    }

    pub fn eval(&self, n: u64) -> Letter {
        let mut digits = self.digits_lsb(n);
        if self.convention == Convention::MsbFirst {
            digits.reverse();
        }
        self.output[self.run_from(self.q0, &digits)]
    }

    pub fn eval_name(&self, n: u64) -> &str {
        self.outputs.name(self.eval(n))
    }

    /// `(eval(0), ..., eval(len-1))`.
    pub fn sequence_prefix(&self, len: usize) -> Word {
        let letters = (0..len as u64).map(|n| self.eval(n)).collect();
        Word::from_trusted(self.outputs.clone(), letters)
    }

    fn reachable_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.q0];
        seen[self.q0] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for &t in &self.delta[q] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// States reached from the start state by at least one digit.
    fn reachable_nonempty(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue: VecDeque<usize> = self.delta[self.q0].iter().copied().collect();
        while let Some(q) = queue.pop_front() {
            if seen[q] {
                continue;
            }
            seen[q] = true;
            queue.extend(self.delta[q].iter().copied().filter(|&t| !seen[t]));
        }
        seen
    }

    /// Number of states reachable from the start state.
    pub fn reachable_count(&self) -> usize {
        self.reachable_order().len()
    }

    /// Makes appending the digit 0 at the most significant end output-neutral.
    ///
    /// Every state reached by a non-empty input must keep its output along the
    /// zero path. The start state is only read by the empty input (never a
    /// canonical representation), so its output is repaired when needed.
    pub fn normalize_zero_invariance(&self) -> Result<Dfao> {
        if self.convention != Convention::LsbFirst {
            return Err(Error::WrongConvention {
                expected: "LSB_FIRST",
            });
        }
        let nonempty = self.reachable_nonempty();
        for q in 0..self.num_states() {
            if nonempty[q] && self.output[self.delta[q][0]] != self.output[q] {
                return Err(Error::NotZeroInvariant {
                    state: self.state_name(q).to_string(),
                });
            }
        }
        let mut out = self.clone();
        out.reversed = OnceLock::new();
        let zero_out = self.output[self.delta[self.q0][0]];
        if out.output[self.q0] != zero_out {
            out.output[self.q0] = zero_out;
        }
        Ok(out.restrict_reachable())
    }

    /// True when every state reached by a non-empty input keeps its output
    /// along the zero path and the start state agrees with its 0-successor.
    pub fn is_zero_invariant(&self) -> bool {
        let nonempty = self.reachable_nonempty();
        self.output[self.delta[self.q0][0]] == self.output[self.q0]
            && (0..self.num_states())
                .all(|q| !nonempty[q] || self.output[self.delta[q][0]] == self.output[q])
    }

    fn restrict_reachable(&self) -> Dfao {
        let order = self.reachable_order();
        if order.len() == self.num_states() {
            return self.clone();
        }
        let mut index = vec![usize::MAX; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            index[q] = i;
        }
        let states = Alphabet::new(order.iter().map(|&q| self.state_name(q).to_string()))
            .expect("distinct names");
        let delta = order
            .iter()
            .map(|&q| self.delta[q].iter().map(|&t| index[t]).collect())
            .collect();
        let output = order.iter().map(|&q| self.output[q]).collect();
        Dfao::new(
            self.k,
            states,
            delta,
            0,
            self.outputs.clone(),
            output,
            self.convention,
        )
        .expect("valid restriction")
    }

    /// Output-equivalence classes of all states (Moore refinement to a fixpoint).
    /// Returns `class[q]` and the number of classes.
    pub fn moore_classes(&self) -> (Vec<usize>, usize) {
        let n = self.num_states();
        let mut class: Vec<usize> = self.output.iter().map(|l| l.index()).collect();
        let mut count = renumber(&mut class);
        loop {
            let mut keys: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = vec![0; n];
            for q in 0..n {
                let mut key = Vec::with_capacity(self.k as usize + 1);
                key.push(class[q]);
                key.extend(self.delta[q].iter().map(|&t| class[t]));
                let fresh = keys.len();
                next[q] = *keys.entry(key).or_insert(fresh);
            }
            let new_count = keys.len();
            class = next;
            if new_count == count {
                return (class, count);
            }
            count = new_count;
        }
    }

    /// Minimal automaton computing the same function on all inputs. States
    /// are numbered in breadth-first order from the start state and keep the
    /// name of the first member of their class met in that order.
    pub fn minimize(&self) -> Dfao {
        let reach = self.restrict_reachable();
        let (class, count) = reach.moore_classes();
        let mut rep = vec![usize::MAX; count];
        let mut order = Vec::with_capacity(count);
        let mut queue = VecDeque::from([reach.q0]);
        let mut seen = vec![false; reach.num_states()];
        seen[reach.q0] = true;
        while let Some(q) = queue.pop_front() {
            if rep[class[q]] == usize::MAX {
                rep[class[q]] = q;
                order.push(class[q]);
            }
            for &t in &reach.delta[q] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        let mut index = vec![0; count];
        for (i, &c) in order.iter().enumerate() {
            index[c] = i;
        }
        let states = Alphabet::new(order.iter().map(|&c| reach.state_name(rep[c]).to_string()))
            .expect("distinct names");
        let delta = order
            .iter()
            .map(|&c| {
                reach.delta[rep[c]]
                    .iter()
                    .map(|&t| index[class[t]])
                    .collect()
            })
            .collect();
        let output = order.iter().map(|&c| reach.output[rep[c]]).collect();
        Dfao::new(
            reach.k,
            states,
            delta,
            0,
            reach.outputs.clone(),
            output,
            reach.convention,
        )
        .expect("valid quotient")
    }

    /// Automaton with the opposite reading convention computing the same
    /// sequence, using the default state guard. The result is cached.
    pub fn reverse_reading(&self) -> Result<Arc<Dfao>> {
        if let Some(r) = self.reversed.get() {
            return Ok(r.clone());
        }
        let r = Arc::new(self.reverse_reading_with_guard(REVERSAL_GUARD)?);
        Ok(self.reversed.get_or_init(|| r).clone())
    }

    /// Reversal through the transition monoid: after reading `v` the new
    /// machine sits at the map `q -> delta(q, reverse(v))`, so reading `d`
    /// turns `f` into `f . delta(., d)`. The result is minimized.
    pub fn reverse_reading_with_guard(&self, guard: usize) -> Result<Dfao> {
        let source = self.restrict_reachable();
        let n = source.num_states();
        if n > guard {
            return Err(Error::ReversalGuard { states: n, guard });
        }
        let identity: Vec<u16> = (0..n as u16).collect();
        let mut ids: HashMap<Vec<u16>, usize> = HashMap::from([(identity.clone(), 0)]);
        let mut maps = vec![identity];
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < maps.len() {
            let mut row = Vec::with_capacity(source.k as usize);
            for d in 0..source.k as usize {
                let next: Vec<u16> = (0..n).map(|q| maps[i][source.delta[q][d]]).collect();
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        if maps.len() >= MONOID_CAP {
                            return Err(Error::ReversalGuard { states: n, guard });
                        }
                        let id = maps.len();
                        ids.insert(next.clone(), id);
                        maps.push(next);
                        id
                    }
                };
                row.push(id);
            }
            delta.push(row);
            i += 1;
        }
        let output = maps
            .iter()
            .map(|f| source.output[f[source.q0] as usize])
            .collect();
        let states = Alphabet::new((0..maps.len()).map(|i| format!("s{i}")))?;
        let raw = Dfao::new(
            source.k,
            states,
            delta,
            0,
            source.outputs.clone(),
            output,
            source.convention.opposite(),
        )?;
        Ok(raw.minimize().renamed_sequential())
    }

    /// Same automaton with states renamed `s0, s1, ...` in their current order.
    pub fn renamed_sequential(&self) -> Dfao {
        let mut out = self.clone();
        out.states =
            Alphabet::new((0..self.num_states()).map(|i| format!("s{i}"))).expect("distinct names");
        out.reversed = OnceLock::new();
        out
    }

    /// Same automaton with new state names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Dfao> {
        if names.len() != self.num_states() {
            return Err(Error::InvalidAutomaton(
                "wrong number of state names".into(),
            ));
        }
        let mut out = self.clone();
        out.states = Alphabet::new(names)?;
        out.reversed = OnceLock::new();
        Ok(out)
    }

    /// The equivalent LSB-first automaton (reversing if needed).
    pub fn to_lsb(&self) -> Result<Dfao> {
        match self.convention {
            Convention::LsbFirst => Ok(self.clone()),
            Convention::MsbFirst => Ok((*self.reverse_reading()?).clone()),
        }
    }

    /// The equivalent MSB-first automaton (reversing if needed).
    pub fn to_msb(&self) -> Result<Dfao> {
        match self.convention {
            Convention::MsbFirst => Ok(self.clone()),
            Convention::LsbFirst => Ok((*self.reverse_reading()?).clone()),
        }
    }

    /// Cardinality of the `k`-kernel together with minimal `(i, j)` witnesses.
    ///
    /// Under zero invariance the kernel sequence `(a_{k^i n + j})` is the
    /// sequence read from `delta(q0, w)` with `w` the `i` low digits of `j`, so
    /// kernel elements correspond to classes of reachable states.
    pub fn kernel(&self) -> Result<KernelResult> {
        let lsb = self.to_lsb()?.normalize_zero_invariance()?;
        let (class, _) = lsb.moore_classes();
        let n = lsb.num_states();
        let k = BigUint::from(lsb.k);

        // level-by-level search of the smallest j reaching each state with i digits
        let mut found: BTreeMap<usize, (usize, BigUint)> = BTreeMap::new();
        let reachable = lsb.reachable_order();
        let wanted: std::collections::BTreeSet<usize> =
            reachable.iter().map(|&q| class[q]).collect();
        let mut level: Vec<Option<BigUint>> = vec![None; n];
        level[lsb.q0] = Some(BigUint::zero());
        let mut power = BigUint::from(1u32);
        let mut i = 0;
        let mut seen_levels: HashMap<Vec<bool>, ()> = HashMap::new();
        loop {
            let mut members: Vec<(usize, &BigUint)> = level
                .iter()
                .enumerate()
                .filter_map(|(q, j)| j.as_ref().map(|j| (q, j)))
                .collect();
            members.sort_by(|a, b| a.1.cmp(b.1));
            for (q, j) in members {
                found.entry(class[q]).or_insert_with(|| (i, j.clone()));
            }
            if found.len() == wanted.len() {
                break;
            }
            let signature: Vec<bool> = level.iter().map(Option::is_some).collect();
            if seen_levels.insert(signature, ()).is_some() {
                break;
            }
            let mut next: Vec<Option<BigUint>> = vec![None; n];
            for d in 0..lsb.k {
                for q in 0..n {
                    if let Some(j) = &level[q] {
                        let t = lsb.delta[q][d as usize];
                        let cand = j + &power * d;
                        if next[t].as_ref().is_none_or(|cur| cand < *cur) {
                            next[t] = Some(cand);
                        }
                    }
                }
            }
            level = next;
            power *= &k;
            i += 1;
        }

        let mut reps: Vec<(usize, (usize, BigUint))> = found.into_iter().collect();
        reps.sort_by(|a, b| a.1.cmp(&b.1));
        let mut renumber_class = HashMap::new();
        for (idx, (c, _)) in reps.iter().enumerate() {
            renumber_class.insert(*c, idx);
        }
        let class_of_state = reachable
            .iter()
            .map(|&q| (lsb.state_name(q).to_string(), renumber_class[&class[q]]))
            .collect();
        Ok(KernelResult {
            m: reps.len(),
            representatives: reps
                .into_iter()
                .map(|(_, (i, j))| KernelRep { i, j })
                .collect(),
            class_of_state,
        })
    }

    pub fn kernel_size(&self) -> Result<usize> {
        Ok(self.kernel()?.m)
    }

    pub fn to_json(&self) -> DfaoJson {
        DfaoJson {
            k: self.k,
            states: self.states.names().to_vec(),
            delta: (0..self.num_states())
                .map(|q| {
                    (
                        self.state_name(q).to_string(),
                        self.delta[q]
                            .iter()
                            .map(|&t| self.state_name(t).to_string())
                            .collect(),
                    )
                })
                .collect(),
            q0: self.state_name(self.q0).to_string(),
            output: (0..self.num_states())
                .map(|q| {
                    (
                        self.state_name(q).to_string(),
                        self.outputs.name(self.output[q]).to_string(),
                    )
                })
                .collect(),
            outputs: Some(self.outputs.names().to_vec()),
            convention: self.convention,
        }
    }

    pub fn from_json(json: &DfaoJson) -> Result<Dfao> {
        let states = Alphabet::new(json.states.iter().cloned())?;
        let lookup = |name: &str| {
            states
                .letter(name)
                .map(Letter::index)
                .ok_or_else(|| Error::InvalidAutomaton(format!("unknown state `{name}`")))
        };
        for key in json.delta.keys().chain(json.output.keys()) {
            lookup(key)?;
        }
        let mut delta = Vec::with_capacity(states.len());
        let mut out_names = Vec::with_capacity(states.len());
        for name in states.names() {
            let row = json
                .delta
                .get(name)
                .ok_or_else(|| Error::InvalidAutomaton(format!("no transitions for `{name}`")))?;
            delta.push(row.iter().map(|t| lookup(t)).collect::<Result<Vec<_>>>()?);
            out_names.push(
                json.output
                    .get(name)
                    .ok_or_else(|| Error::InvalidAutomaton(format!("no output for `{name}`")))?
                    .clone(),
            );
        }
        let outputs = match &json.outputs {
            Some(list) => Alphabet::new(list.iter().cloned())?,
            None => {
                let mut list: Vec<String> = Vec::new();
                for o in &out_names {
                    if !list.contains(o) {
                        list.push(o.clone());
                    }
                }
                list.sort_by(|a, b| natural_key(a).cmp(&natural_key(b)));
                Alphabet::new(list)?
            }
        };
        let output = out_names
            .iter()
            .map(|o| {
                outputs
                    .letter(o)
                    .ok_or_else(|| Error::LetterOutsideAlphabet {
                        letter: o.clone(),
                        context: "automaton outputs".into(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        let q0 = lookup(&json.q0)?;
        Dfao::new(json.k, states, delta, q0, outputs, output, json.convention)
    }

    pub fn parse_json(text: &str) -> Result<Dfao> {
        let json: DfaoJson = serde_json::from_str(text)?;
        Dfao::from_json(&json)
    }
}

/// Orders numeric names numerically, then everything else lexicographically.
fn natural_key(s: &str) -> (u8, u64, &str) {
    match s.parse::<u64>() {
        Ok(v) => (0, v, s),
        Err(_) => (1, 0, s),
    }
}

fn renumber(class: &mut [usize]) -> usize {
    let mut map = HashMap::new();
    for c in class.iter_mut() {
        let fresh = map.len();
        *c = *map.entry(*c).or_insert(fresh);
    }
    map.len()
}

/// Serialized automaton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DfaoJson {
    pub k: u32,
    pub states: Vec<String>,
    pub delta: BTreeMap<String, Vec<String>>,
    pub q0: String,
    pub output: BTreeMap<String, String>,
    /// Output alphabet; derived from `output` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<String>>,
    #[serde(default = "default_convention")]
    pub convention: Convention,
}

fn default_convention() -> Convention {
    Convention::LsbFirst
}

/// Kernel element witnessed by the subsequence `n -> a(k^i n + j)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct KernelRep {
    pub i: usize,
    #[serde(serialize_with = "ser_biguint")]
    pub j: BigUint,
}

fn ser_biguint<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelResult {
    pub m: usize,
    pub representatives: Vec<KernelRep>,
    /// Kernel class of every reachable state of the normalized LSB-first machine.
    pub class_of_state: BTreeMap<String, usize>,
}

pub fn eval(a: &Dfao, n: u64) -> Letter {
    a.eval(n)
}

pub fn sequence_prefix(a: &Dfao, len: usize) -> Word {
    a.sequence_prefix(len)
}

pub fn minimize(a: &Dfao) -> Dfao {
    a.minimize()
}

pub fn reverse_reading(a: &Dfao) -> Result<Arc<Dfao>> {
    a.reverse_reading()
}

pub fn kernel_size(a: &Dfao) -> Result<KernelResult> {
    a.kernel()
}
