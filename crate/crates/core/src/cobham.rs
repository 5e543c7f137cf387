//! Morphic representations `(phi, sigma, i)` of automatic sequences.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::automaton::{Convention, Dfao};
use crate::error::{Error, Result};
use crate::words::{Alphabet, ImageJson, Letter, Morphism, Word};

/// Default depth of the bounded searches in [`MorphicRepr::structural_hypotheses`].
pub const STRUCTURAL_SCAN_DEPTH: usize = 1 << 14;

/// A `k`-uniform morphism `sigma` prolongable at `start`, and a coding `phi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphicRepr {
    k: u32,
    sigma: Morphism,
    phi: Morphism,
    start: Letter,
}

impl MorphicRepr {
    pub fn new(k: u32, sigma: Morphism, phi: Morphism, start: Letter) -> Result<MorphicRepr> {
        if k < 2 {
            return Err(Error::InvalidBase(k));
        }
        if !sigma.is_endomorphism() {
            return Err(Error::InvalidMorphism(
                "sigma must map the internal alphabet to itself".into(),
            ));
        }
        if sigma.uniform_length() != Some(k as usize) {
            return Err(Error::InvalidMorphism(format!("sigma is not {k}-uniform")));
        }
        if !phi.is_coding() {
            return Err(Error::InvalidMorphism("phi must be a coding".into()));
        }
        if **phi.source() != **sigma.source() {
            return Err(Error::InvalidMorphism(
                "phi and sigma have different internal alphabets".into(),
            ));
        }
        sigma.check_prolongable(start)?;
        Ok(MorphicRepr {
            k,
            sigma,
            phi,
            start,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn sigma(&self) -> &Morphism {
        &self.sigma
    }

    pub fn phi(&self) -> &Morphism {
        &self.phi
    }

    pub fn start(&self) -> Letter {
        self.start
    }

    pub fn internal_alphabet(&self) -> &Arc<Alphabet> {
        self.sigma.source()
    }

    pub fn output_alphabet(&self) -> &Arc<Alphabet> {
        self.phi.target()
    }

    /// Output letter `phi(l)` of an internal letter.
    pub fn code(&self, l: Letter) -> Letter {
        self.phi.image_letters(l)[0]
    }

    /// First `len` letters of the internal fixed point `sigma^inf(start)`.
    pub fn internal_prefix(&self, len: usize) -> Word {
        self.sigma
            .fixed_point_prefix(self.start, len)
            .expect("prolongability checked at construction")
    }

    /// First `len` letters of `phi(sigma^inf(start))`.
    pub fn sequence_prefix(&self, len: usize) -> Word {
        let internal = self.internal_prefix(len);
        Word::from_trusted(
            self.phi.target().clone(),
            internal.letters().iter().map(|&l| self.code(l)).collect(),
        )
    }

    /// Number of internal letters occurring in `sigma^inf(start)`.
    pub fn internal_alphabet_size(&self) -> usize {
        let mut seen = vec![false; self.internal_alphabet().len()];
        let mut stack = vec![self.start];
        seen[self.start.index()] = true;
        let mut count = 1;
        while let Some(l) = stack.pop() {
            for &t in self.sigma.image_letters(l) {
                if !seen[t.index()] {
                    seen[t.index()] = true;
                    count += 1;
                    stack.push(t);
                }
            }
        }
        count
    }

    /// MSB-first automaton with `delta(q, r)` the `r`-th letter of `sigma(q)`.
    pub fn to_automaton(&self) -> Dfao {
        let states = self.internal_alphabet().clone();
        let delta = states
            .letters()
            .map(|q| {
                self.sigma
                    .image_letters(q)
                    .iter()
                    .map(|t| t.index())
                    .collect()
            })
            .collect();
        let output = states.letters().map(|q| self.code(q)).collect();
        Dfao::new(
            self.k,
            states,
            delta,
            self.start.index(),
            self.output_alphabet().clone(),
            output,
            Convention::MsbFirst,
        )
        .expect("uniform morphism gives a total transition table")
    }

    /// Bounded searches for the structural hypotheses of the overlap and
    /// continued-fraction constructions on the internal fixed point.
    pub fn structural_hypotheses(&self, depth: usize) -> StructuralHypotheses {
        let w = self.internal_prefix(depth.max(2));
        let internal_overlap = w.find_overlap_prefix();
        let first_letter_repeats = w.letters()[1..]
            .iter()
            .position(|&l| l == self.start)
            .map(|p| w.slice(1..p + 1));
        StructuralHypotheses {
            depth: w.len(),
            internal_overlap,
            first_letter_repeats,
        }
    }

    pub fn to_json(&self) -> MorphicJson {
        let internal = self.internal_alphabet();
        let single = internal.names().iter().all(|n| n.chars().count() == 1);
        let encode = |w: &Word| {
            if single {
                ImageJson::Text(w.to_string())
            } else {
                ImageJson::Letters(
                    w.letters()
                        .iter()
                        .map(|l| w.alphabet().name(*l).to_string())
                        .collect(),
                )
            }
        };
        MorphicJson {
            k: self.k,
            sigma: internal
                .letters()
                .map(|l| (internal.name(l).to_string(), encode(&self.sigma.image(l))))
                .collect(),
            phi: internal
                .letters()
                .map(|l| {
                    (
                        internal.name(l).to_string(),
                        self.output_alphabet().name(self.code(l)).to_string(),
                    )
                })
                .collect(),
            start: internal.name(self.start).to_string(),
            internal: Some(internal.names().to_vec()),
            outputs: Some(self.output_alphabet().names().to_vec()),
        }
    }

    pub fn from_json(json: &MorphicJson) -> Result<MorphicRepr> {
        let names = match &json.internal {
            Some(list) => list.clone(),
            None => natural_order(json.sigma.keys().cloned().collect()),
        };
        let internal = Alphabet::new(names)?;
        for key in json.sigma.keys().chain(json.phi.keys()) {
            if internal.letter(key).is_none() {
                return Err(Error::LetterOutsideAlphabet {
                    letter: key.clone(),
                    context: "internal alphabet".into(),
                });
            }
        }
        let outputs = match &json.outputs {
            Some(list) => Alphabet::new(list.iter().cloned())?,
            None => {
                let mut list: Vec<String> = json.phi.values().cloned().collect();
                list.sort();
                list.dedup();
                Alphabet::new(natural_order(list))?
            }
        };
        let mut images = Vec::with_capacity(internal.len());
        let mut codes = Vec::with_capacity(internal.len());
        for name in internal.names() {
            let img = json.sigma.get(name).ok_or_else(|| {
                Error::InvalidMorphism(format!("sigma has no image for `{name}`"))
            })?;
            images.push(img.to_word(&internal)?);
            let code = json
                .phi
                .get(name)
                .ok_or_else(|| Error::InvalidMorphism(format!("phi has no image for `{name}`")))?;
            let letter = outputs
                .letter(code)
                .ok_or_else(|| Error::LetterOutsideAlphabet {
                    letter: code.clone(),
                    context: "output alphabet".into(),
                })?;
            codes.push(Word::from_trusted(outputs.clone(), vec![letter]));
        }
        let sigma = Morphism::new(
            internal.clone(),
            internal.clone(),
            images,
            Some(json.k as usize),
        )?;
        let phi = Morphism::new(internal.clone(), outputs, codes, Some(1))?;
        let start = internal
            .letter(&json.start)
            .ok_or_else(|| Error::LetterOutsideAlphabet {
                letter: json.start.clone(),
                context: "internal alphabet".into(),
            })?;
        MorphicRepr::new(json.k, sigma, phi, start)
    }

    pub fn parse_json(text: &str) -> Result<MorphicRepr> {
        let json: MorphicJson = serde_json::from_str(text)?;
        MorphicRepr::from_json(&json)
    }
}

/// Sorts numeric names numerically and the rest lexicographically after them.
pub(crate) fn natural_order(mut names: Vec<String>) -> Vec<String> {
    names.sort_by(|a, b| match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => std::cmp::Ordering::Less,
        (Err(_), Ok(_)) => std::cmp::Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    });
    names
}

/// Serialized morphic representation:
/// `{"k": 2, "sigma": {"0": "01", "1": "10"}, "phi": {"0": "0", "1": "1"}, "start": "0"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphicJson {
    pub k: u32,
    pub sigma: BTreeMap<String, ImageJson>,
    pub phi: BTreeMap<String, String>,
    pub start: String,
    /// Internal alphabet order; sorted keys of `sigma` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub internal: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<String>>,
}

/// Outcome of the bounded searches; `None` means "not found up to `depth`".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralHypotheses {
    pub depth: usize,
    /// Shortest `W` with `W W a` a prefix of the internal word.
    pub internal_overlap: Option<Word>,
    /// `U` with `start U start` a prefix of the internal word.
    pub first_letter_repeats: Option<Word>,
}

/// Morphic representation of the sequence computed by `a`.
///
/// The automaton is turned MSB-first and minimized; when its start state is
/// not fixed by the digit 0 a fresh start state looping on 0 is added.
/// Internal letters are named after their outputs when the coding is
/// injective, and `s0, s1, ...` otherwise.
pub fn to_morphic(a: &Dfao) -> Result<MorphicRepr> {
    let msb = a.to_msb()?.minimize();
    let q0 = msb.start();
    let repaired = if msb.transition(q0, 0) == q0 {
        msb
    } else {
        let n = msb.num_states();
        let mut delta: Vec<Vec<usize>> = (0..n)
            .map(|q| (0..msb.k()).map(|d| msb.transition(q, d)).collect())
            .collect();
        let mut fresh = delta[q0].clone();
        fresh[0] = n;
        delta.push(fresh);
        let mut output: Vec<Letter> = (0..n).map(|q| msb.output_of(q)).collect();
        output.push(msb.output_of(msb.transition(q0, 0)));
        let names = (0..=n).map(|i| format!("s{i}"));
        Dfao::new(
            msb.k(),
            Alphabet::new(names)?,
            delta,
            n,
            msb.output_alphabet().clone(),
            output,
            Convention::MsbFirst,
        )?
        .minimize()
    };
    let n = repaired.num_states();
    let outs: Vec<Letter> = (0..n).map(|q| repaired.output_of(q)).collect();
    let mut distinct = outs.clone();
    distinct.sort();
    distinct.dedup();
    let names: Vec<String> = if distinct.len() == n {
        outs.iter()
            .map(|&l| repaired.output_alphabet().name(l).to_string())
            .collect()
    } else {
        (0..n).map(|i| format!("s{i}")).collect()
    };
    let internal = Alphabet::new(names)?;
    let images = (0..n)
        .map(|q| {
            let letters = (0..repaired.k())
                .map(|d| Letter(repaired.transition(q, d) as u32))
                .collect();
            Word::new(internal.clone(), letters)
        })
        .collect::<Result<Vec<_>>>()?;
    let codes = outs
        .iter()
        .map(|&l| Word::new(repaired.output_alphabet().clone(), vec![l]))
        .collect::<Result<Vec<_>>>()?;
    let k = repaired.k();
    let sigma = Morphism::new(internal.clone(), internal.clone(), images, Some(k as usize))?;
    let phi = Morphism::new(internal, repaired.output_alphabet().clone(), codes, Some(1))?;
    MorphicRepr::new(k, sigma, phi, Letter(repaired.start() as u32))
}

pub fn to_automaton(m: &MorphicRepr) -> Dfao {
    m.to_automaton()
}

pub fn internal_alphabet_size(m: &MorphicRepr) -> usize {
    m.internal_alphabet_size()
}

pub fn structural_hypotheses(m: &MorphicRepr, depth: usize) -> StructuralHypotheses {
    m.structural_hypotheses(depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn thue_morse_to_morphic() {
        let m = to_morphic(&fixtures::thue_morse()).unwrap();
        assert_eq!(m.internal_alphabet_size(), 2);
        assert_eq!(m.k(), 2);
        let json = m.to_json();
        assert_eq!(
            serde_json::to_value(&json.sigma).unwrap(),
            serde_json::json!({"0": "01", "1": "10"})
        );
        assert_eq!(
            serde_json::to_value(&json.phi).unwrap(),
            serde_json::json!({"0": "0", "1": "1"})
        );
        assert_eq!(m, fixtures::thue_morse_morphic());
    }

    #[test]
    fn round_trip_preserves_sequence() {
        for a in [fixtures::baum_sweet(), fixtures::thue_morse()] {
            let m = to_morphic(&a).unwrap();
            let expected = a.sequence_prefix(4096);
            assert_eq!(m.sequence_prefix(4096), expected);
            let back = m.to_automaton();
            assert_eq!(back.sequence_prefix(4096), expected);
            assert_eq!(m.internal_alphabet_size(), back.reachable_count());
        }
    }

    #[test]
    fn baum_sweet_internal_alphabet() {
        // the minimal MSB-first machine has four states and fixes its start on 0
        let m = to_morphic(&fixtures::baum_sweet()).unwrap();
        assert_eq!(m.internal_alphabet_size(), 4);
    }

    #[test]
    fn constant_sequence() {
        let a = Dfao::constant(3, "5", Convention::LsbFirst).unwrap();
        let m = to_morphic(&a).unwrap();
        assert_eq!(m.internal_alphabet_size(), 1);
        assert_eq!(m.sigma().image(m.start()).len(), 3);
        assert_eq!(m.sequence_prefix(10).to_string(), "5555555555");
        assert_eq!(m.to_automaton().num_states(), 1);
    }

    #[test]
    fn uniform_scaling() {
        let m = fixtures::k3_overlap_morphic();
        let w = m.internal_prefix(7);
        for n in 0..5 {
            assert_eq!(
                m.sigma().iterate(&w, n).unwrap().len(),
                3usize.pow(n as u32) * 7
            );
        }
    }

    #[test]
    fn hypotheses() {
        let tm = fixtures::thue_morse_morphic().structural_hypotheses(STRUCTURAL_SCAN_DEPTH);
        assert!(tm.internal_overlap.is_none());
        assert_eq!(tm.depth, STRUCTURAL_SCAN_DEPTH);
        assert_eq!(tm.first_letter_repeats.unwrap().to_string(), "11");
        let k3 = fixtures::k3_overlap_morphic();
        assert!(k3.internal_prefix(7).to_string() == "0010010");
        assert_eq!(
            k3.structural_hypotheses(1024)
                .internal_overlap
                .unwrap()
                .to_string(),
            "001"
        );
    }

    #[test]
    fn rejects_invalid() {
        let not_uniform =
            r#"{"k":2,"sigma":{"0":"01","1":"1"},"phi":{"0":"0","1":"1"},"start":"0"}"#;
        assert!(MorphicRepr::parse_json(not_uniform).is_err());
        let not_prolongable =
            r#"{"k":2,"sigma":{"0":"10","1":"10"},"phi":{"0":"0","1":"1"},"start":"0"}"#;
        assert!(matches!(
            MorphicRepr::parse_json(not_prolongable),
            Err(Error::NotProlongable(_))
        ));
        let no_code = r#"{"k":2,"sigma":{"0":"01","1":"10"},"phi":{"0":"0"},"start":"0"}"#;
        assert!(MorphicRepr::parse_json(no_code).is_err());
    }
}
