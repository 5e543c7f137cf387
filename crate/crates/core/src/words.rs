//! Finite words, morphisms and the prefix-repetition analysis used by the
//! approximant constructions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact;

/// Index of a letter inside its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered finite set of opaque letter names.
#[derive(Clone)]
pub struct Alphabet {
    names: Vec<String>,
    lookup: HashMap<String, Letter>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Arc<Alphabet>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("empty alphabet".into()));
        }
        if names.len() > u32::MAX as usize {
            return Err(Error::InvalidAlphabet("too many letters".into()));
        }
        let mut lookup = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidAlphabet("empty letter name".into()));
            }
            if lookup.insert(name.clone(), Letter(i as u32)).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate letter `{name}`")));
            }
        }
        Ok(Arc::new(Alphabet { names, lookup }))
    }

    /// The digit alphabet `{0, 1, ..., base-1}`.
    pub fn digits(base: u32) -> Arc<Alphabet> {
        Alphabet::new((0..base.max(1)).map(|d| d.to_string())).expect("digit names are distinct")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.names.len() as u32).map(Letter)
    }

    /// Numeric value of a letter whose name is a non-negative decimal integer.
    pub fn digit_value(&self, letter: Letter) -> Option<u32> {
        self.name(letter).parse().ok()
    }

    fn single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Splits `text` into letters: one character per letter when every name is a
    /// single character, otherwise whitespace/comma separated names.
    pub fn parse_letters(&self, text: &str) -> Result<Vec<Letter>> {
        let lookup = |tok: &str| {
            self.letter(tok)
                .ok_or_else(|| Error::LetterOutsideAlphabet {
                    letter: tok.to_string(),
                    context: format!("{:?}", self.names),
                })
        };
        if self.single_char() {
            let mut buf = [0u8; 4];
            text.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| lookup(c.encode_utf8(&mut buf)))
                .collect()
        } else {
            text.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(lookup)
                .collect()
        }
    }
}

/// Finite word over an alphabet.
#[derive(Clone, PartialEq, Eq)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(alphabet: Arc<Alphabet>, letters: Vec<Letter>) -> Result<Word> {
        if let Some(bad) = letters.iter().find(|l| l.index() >= alphabet.len()) {
            return Err(Error::LetterOutsideAlphabet {
                letter: format!("#{}", bad.0),
                context: format!("{:?}", alphabet.names),
            });
        }
        Ok(Word { alphabet, letters })
    }

    pub(crate) fn from_trusted(alphabet: Arc<Alphabet>, letters: Vec<Letter>) -> Word {
        Word { alphabet, letters }
    }

    pub fn empty(alphabet: Arc<Alphabet>) -> Word {
        Word {
            alphabet,
            letters: Vec::new(),
        }
    }

    pub fn parse(alphabet: &Arc<Alphabet>, text: &str) -> Result<Word> {
        let letters = alphabet.parse_letters(text)?;
        Ok(Word {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    /// Word over the digit alphabet of `base`.
    pub fn from_digits(base: u32, digits: &[u32]) -> Result<Word> {
        if let Some(&d) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::NotADigit(d.to_string(), base));
        }
        Ok(Word {
            alphabet: Alphabet::digits(base),
            letters: digits.iter().map(|&d| Letter(d)).collect(),
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            letters: self.letters[..n.min(self.letters.len())].to_vec(),
        }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            letters: self.letters[range].to_vec(),
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        let tail = other.translate(&self.alphabet)?;
        let mut letters = self.letters.clone();
        letters.extend(tail);
        Ok(Word {
            alphabet: self.alphabet.clone(),
            letters,
        })
    }

    /// Letters re-indexed into `target` by name.
    pub fn translate(&self, target: &Arc<Alphabet>) -> Result<Vec<Letter>> {
        if Arc::ptr_eq(&self.alphabet, target) || *self.alphabet == **target {
            return Ok(self.letters.clone());
        }
        let map: Vec<Option<Letter>> = self
            .alphabet
            .names
            .iter()
            .map(|n| target.letter(n))
            .collect();
        self.letters
            .iter()
            .map(|l| {
                map[l.index()].ok_or_else(|| Error::LetterOutsideAlphabet {
                    letter: self.alphabet.name(*l).to_string(),
                    context: format!("{:?}", target.names),
                })
            })
            .collect()
    }

    /// Digit values of the letters (names must be decimal integers below `base`).
    pub fn to_digits(&self, base: u32) -> Result<Vec<u32>> {
        let values: Vec<Option<u32>> = self
            .alphabet
            .letters()
            .map(|l| self.alphabet.digit_value(l))
            .collect();
        self.letters
            .iter()
            .map(|l| match values[l.index()] {
                Some(v) if v < base => Ok(v),
                _ => Err(Error::NotADigit(self.alphabet.name(*l).to_string(), base)),
            })
            .collect()
    }

    /// `W^x = W^floor(x) W'` with `W'` the prefix of length `ceil(frac(x)|W|)`.
    pub fn fractional_power(&self, x: &BigRational) -> Result<Word> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        if *x < BigRational::one() {
            return Err(Error::ExponentBelowOne(exact::format_rational(x)));
        }
        let whole = exact::floor(x);
        let frac = x - BigRational::from_integer(whole.clone());
        let extra = exact::ceil(&(frac * BigRational::from_integer(BigInt::from(self.len()))));
        let whole = whole
            .to_usize()
            .ok_or_else(|| Error::Precondition("exponent too large".into()))?;
        let extra = exact::to_usize(&extra).unwrap_or(0);
        let mut letters = Vec::with_capacity(whole * self.len() + extra);
        for _ in 0..whole {
            letters.extend_from_slice(&self.letters);
        }
        letters.extend_from_slice(&self.letters[..extra]);
        Ok(Word {
            alphabet: self.alphabet.clone(),
            letters,
        })
    }

    /// Shortest non-empty `W` such that `W W a` (with `a` the first letter of
    /// `W`) is a prefix of this word.
    pub fn find_overlap_prefix(&self) -> Option<Word> {
        let w = &self.letters;
        (1..)
            .take_while(|p| 2 * p < w.len())
            .find(|&p| (0..=p).all(|i| w[i] == w[i + p]))
            .map(|p| self.prefix(p))
    }

    /// Decomposes a prefix as `U a V a` with `|U| + |V| <= d - 1`, choosing the
    /// earliest second occurrence, then the earliest first occurrence.
    pub fn find_second_occurrence_prefix(&self, d: usize) -> Result<(Word, Letter, Word)> {
        if self.len() < d + 1 {
            return Err(Error::PrefixTooShort {
                needed: d + 1,
                available: self.len(),
            });
        }
        let w = &self.letters;
        for j in 1..=d {
            if let Some(i) = (0..j).find(|&i| w[i] == w[j]) {
                return Ok((self.slice(0..i), w[i], self.slice(i + 1..j)));
            }
        }
        Err(Error::NoRepeatedLetter(d + 1))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let single = self.alphabet.single_char();
        for (i, l) in self.letters.iter().enumerate() {
            if !single && i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.alphabet.name(*l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

/// Monoid morphism given by the images of the letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Arc<Alphabet>,
    target: Arc<Alphabet>,
    images: Vec<Vec<Letter>>,
    uniform: Option<usize>,
}

impl Morphism {
    /// `images[i]` is the image of the `i`-th source letter. When `uniform` is
    /// given, every image must have exactly that length.
    pub fn new(
        source: Arc<Alphabet>,
        target: Arc<Alphabet>,
        images: Vec<Word>,
        uniform: Option<usize>,
    ) -> Result<Morphism> {
        if images.len() != source.len() {
            return Err(Error::InvalidMorphism(format!(
                "{} images for {} source letters",
                images.len(),
                source.len()
            )));
        }
        let images = images
            .iter()
            .map(|w| w.translate(&target))
            .collect::<Result<Vec<_>>>()?;
        if let Some(k) = uniform {
            if let Some((i, img)) = images.iter().enumerate().find(|(_, img)| img.len() != k) {
                return Err(Error::InvalidMorphism(format!(
                    "declared {k}-uniform but image of `{}` has length {}",
                    source.name(Letter(i as u32)),
                    img.len()
                )));
            }
        }
        Ok(Morphism {
            source,
            target,
            images,
            uniform,
        })
    }

    /// Builds an endomorphism or morphism from `(letter, image text)` pairs.
    pub fn from_pairs(
        source: &Arc<Alphabet>,
        target: &Arc<Alphabet>,
        pairs: &[(&str, &str)],
    ) -> Result<Morphism> {
        let mut images = vec![None; source.len()];
        for (letter, image) in pairs {
            let l = source
                .letter(letter)
                .ok_or_else(|| Error::LetterOutsideAlphabet {
                    letter: letter.to_string(),
                    context: "morphism source".into(),
                })?;
            images[l.index()] = Some(Word::parse(target, image)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| {
                    Error::InvalidMorphism(format!(
                        "no image for `{}`",
                        source.name(Letter(i as u32))
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(source.clone(), target.clone(), images, None)
    }

    pub fn source(&self) -> &Arc<Alphabet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Alphabet> {
        &self.target
    }

    pub fn image(&self, letter: Letter) -> Word {
        Word::from_trusted(self.target.clone(), self.images[letter.index()].clone())
    }

    pub(crate) fn image_letters(&self, letter: Letter) -> &[Letter] {
        &self.images[letter.index()]
    }

    /// Common image length, if all images have the same length.
    pub fn uniform_length(&self) -> Option<usize> {
        let first = self.images.first()?.len();
        self.images
            .iter()
            .all(|i| i.len() == first)
            .then_some(first)
    }

    pub fn declared_uniform(&self) -> Option<usize> {
        self.uniform
    }

    pub fn is_coding(&self) -> bool {
        self.uniform_length() == Some(1)
    }

    pub fn is_endomorphism(&self) -> bool {
        *self.source == *self.target
    }

    pub fn is_non_erasing(&self) -> bool {
        self.images.iter().all(|i| !i.is_empty())
    }

    /// Image of a word: the concatenation of the letter images, in order.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let letters = w.translate(&self.source)?;
        Ok(Word::from_trusted(
            self.target.clone(),
            self.apply_letters(&letters),
        ))
    }

    pub(crate) fn apply_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(letters.len() * self.uniform_length().unwrap_or(2));
        for l in letters {
            out.extend_from_slice(&self.images[l.index()]);
        }
        out
    }

    /// `self^n(w)` for an endomorphism.
    pub fn iterate(&self, w: &Word, n: usize) -> Result<Word> {
        if !self.is_endomorphism() {
            return Err(Error::InvalidMorphism(
                "iteration needs an endomorphism".into(),
            ));
        }
        let mut letters = w.translate(&self.source)?;
        for _ in 0..n {
            letters = self.apply_letters(&letters);
        }
        Ok(Word::from_trusted(self.source.clone(), letters))
    }

    pub fn check_prolongable(&self, a: Letter) -> Result<()> {
        let name = || self.source.name(a).to_string();
        if !self.is_endomorphism() || a.index() >= self.source.len() {
            return Err(Error::NotProlongable(name()));
        }
        let img = &self.images[a.index()];
        if img.len() < 2 || img[0] != a || !self.is_non_erasing() {
            return Err(Error::NotProlongable(name()));
        }
        Ok(())
    }

    /// First `n_letters` letters of the fixed point `self^inf(a)`.
    pub fn fixed_point_prefix(&self, a: Letter, n_letters: usize) -> Result<Word> {
        self.check_prolongable(a)?;
        let mut out: Vec<Letter> = self.images[a.index()].clone();
        let mut cursor = 1;
        while out.len() < n_letters {
            let next = out[cursor];
            out.extend_from_slice(&self.images[next.index()]);
            cursor += 1;
        }
        out.truncate(n_letters);
        Ok(Word::from_trusted(self.source.clone(), out))
    }

    pub fn to_json(&self) -> MorphismJson {
        let single = self.target.single_char();
        let images = self
            .source
            .letters()
            .map(|l| {
                let img = &self.images[l.index()];
                let value = if single {
                    ImageJson::Text(img.iter().map(|x| self.target.name(*x)).collect())
                } else {
                    ImageJson::Letters(
                        img.iter()
                            .map(|x| self.target.name(*x).to_string())
                            .collect(),
                    )
                };
                (self.source.name(l).to_string(), value)
            })
            .collect();
        MorphismJson {
            source: self.source.names.clone(),
            target: self.target.names.clone(),
            images,
            uniform: self.uniform.or(self.uniform_length()),
        }
    }

    pub fn from_json(json: &MorphismJson) -> Result<Morphism> {
        let source = Alphabet::new(json.source.iter().cloned())?;
        let target = Alphabet::new(json.target.iter().cloned())?;
        for key in json.images.keys() {
            if source.letter(key).is_none() {
                return Err(Error::LetterOutsideAlphabet {
                    letter: key.clone(),
                    context: "morphism source".into(),
                });
            }
        }
        let images = source
            .letters()
            .map(|l| {
                let name = source.name(l);
                let img = json
                    .images
                    .get(name)
                    .ok_or_else(|| Error::InvalidMorphism(format!("no image for `{name}`")))?;
                img.to_word(&target)
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(source, target, images, json.uniform)
    }

    pub fn parse_json(text: &str) -> Result<Morphism> {
        let json: MorphismJson = serde_json::from_str(text)?;
        Morphism::from_json(&json)
    }
}

/// Serialized morphism: `{"source": [...], "target": [...], "images": {"0": "01"}, "uniform": 2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub images: BTreeMap<String, ImageJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uniform: Option<usize>,
}

/// An image is either a string of single-character letters or a list of names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ImageJson {
    Text(String),
    Letters(Vec<String>),
}

impl ImageJson {
    pub fn to_word(&self, alphabet: &Arc<Alphabet>) -> Result<Word> {
        match self {
            ImageJson::Text(s) => Word::parse(alphabet, s),
            ImageJson::Letters(names) => {
                let letters = names
                    .iter()
                    .map(|n| {
                        alphabet
                            .letter(n)
                            .ok_or_else(|| Error::LetterOutsideAlphabet {
                                letter: n.clone(),
                                context: format!("{:?}", alphabet.names),
                            })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Word::from_trusted(alphabet.clone(), letters))
            }
        }
    }
}

pub fn apply_morphism(m: &Morphism, w: &Word) -> Result<Word> {
    m.apply(w)
}

pub fn fixed_point_prefix(m: &Morphism, a: Letter, n_letters: usize) -> Result<Word> {
    m.fixed_point_prefix(a, n_letters)
}

/// One maximal repetition `U V^s` found at the start of a word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepetitionWitness {
    pub u_len: usize,
    pub v_len: usize,
    /// Exponent `s` with `|U V^s| = u_len + s * v_len`.
    #[serde(serialize_with = "ser_rational")]
    pub s: BigRational,
    /// The repetition reaches the end of the scanned prefix, so `s` is only a lower bound.
    pub truncated: bool,
}

impl RepetitionWitness {
    pub fn repeated_len(&self) -> usize {
        (BigRational::from_integer(self.u_len.into())
            + &self.s * BigRational::from_integer(self.v_len.into()))
        .to_integer()
        .to_usize()
        .unwrap_or(0)
    }
}

/// `(h, p, l)` with `1 <= p <= h <= l`, `u[n-p] = u[n]` for `h <= n < l`, and `u[l-p] != u[l]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AdmissibleTriple {
    pub h: usize,
    pub p: usize,
    pub l: usize,
}

/// Result of [`repetition_report`].
#[derive(Debug, Clone, Serialize)]
pub struct RepetitionReport {
    pub prefix_length: usize,
    /// `k^m`, the bound every ratio must stay below.
    pub bound: u64,
    #[serde(serialize_with = "ser_rational")]
    pub max_ratio: BigRational,
    pub witnesses: Vec<RepetitionWitness>,
    pub violations: Vec<RepetitionWitness>,
    pub violation_count: u64,
    /// Number of admissible triples with `l` inside the prefix.
    pub admissible_count: u64,
    /// Largest `l / h` over all admissible triples.
    #[serde(serialize_with = "ser_rational")]
    pub max_triple_ratio: BigRational,
    /// Admissible triples attaining `max_triple_ratio` (each with the smallest valid `h`).
    pub admissible_triples: Vec<AdmissibleTriple>,
    pub triple_violations: Vec<AdmissibleTriple>,
    pub triple_violation_count: u64,
}

const MAX_LISTED: usize = 64;

impl RepetitionReport {
    pub fn holds(&self) -> bool {
        self.violation_count == 0 && self.triple_violation_count == 0
    }
}

fn ser_rational<S: serde::Serializer>(
    x: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&exact::format_rational(x))
}

/// Scans every `(|U|, |V|)` with `|UV| <= L/2` and every admissible triple with
/// `l < L` on the prefix `w`, measuring them against `k^m`.
///
/// Admissible triples are enumerated per `(p, l)`; for fixed `(p, l)` the valid
/// `h` form an interval and only the smallest `h` (the binding one for
/// `l < h k^m`) is examined, while all of them are counted.
pub fn repetition_report(w: &Word, k: u32, m: u32) -> RepetitionReport {
    let letters = w.letters();
    let len = letters.len();
    let bound = (k as u64).saturating_pow(m);
    let bound_rat = BigRational::from_integer(BigInt::from(bound));

    // Prefix repetitions: for each period v, the first mismatch at or after i.
    let mut best: (usize, usize) = (0, 1); // ratio numerator / denominator
    let mut witnesses = Vec::new();
    let mut violations = Vec::new();
    let mut violation_count = 0u64;
    let mut next_mismatch = vec![len; len + 1];
    for v in 1..=len / 2 {
        next_mismatch[len] = len;
        for i in (v..len).rev() {
            next_mismatch[i] = if letters[i] != letters[i - v] {
                i
            } else {
                next_mismatch[i + 1]
            };
        }
        for u in 0..=(len / 2 - v) {
            let end = next_mismatch[u + v];
            let period = u + v;
            let witness = || RepetitionWitness {
                u_len: u,
                v_len: v,
                s: BigRational::new(BigInt::from(end - u), BigInt::from(v)),
                truncated: end == len,
            };
            if end as u128 >= bound as u128 * period as u128 {
                violation_count += 1;
                if violations.len() < MAX_LISTED {
                    violations.push(witness());
                }
            }
            let cmp = (end as u128 * best.1 as u128).cmp(&(best.0 as u128 * period as u128));
            match cmp {
                std::cmp::Ordering::Greater => {
                    best = (end, period);
                    witnesses.clear();
                    witnesses.push(witness());
                }
                std::cmp::Ordering::Equal if witnesses.len() < MAX_LISTED => {
                    witnesses.push(witness())
                }
                _ => {}
            }
        }
    }
    let max_ratio = if best.0 == 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::from(best.0), BigInt::from(best.1))
    };

    // Admissible triples.
    let mut admissible_count = 0u64;
    let mut best_triple: (usize, usize) = (0, 1);
    let mut tight = Vec::new();
    let mut triple_violations = Vec::new();
    let mut triple_violation_count = 0u64;
    for p in 1..len {
        let mut last_mismatch: Option<usize> = None;
        for l in p..len {
            if letters[l] == letters[l - p] {
                continue;
            }
            let h = match last_mismatch {
                Some(prev) => (prev + 1).max(p),
                None => p,
            };
            last_mismatch = Some(l);
            admissible_count += (l - h + 1) as u64;
            let triple = AdmissibleTriple { h, p, l };
            if l as u128 >= h as u128 * bound as u128 {
                triple_violation_count += 1;
                if triple_violations.len() < MAX_LISTED {
                    triple_violations.push(triple);
                }
            }
            match (l as u128 * best_triple.1 as u128).cmp(&(best_triple.0 as u128 * h as u128)) {
                std::cmp::Ordering::Greater => {
                    best_triple = (l, h);
                    tight.clear();
                    tight.push(triple);
                }
                std::cmp::Ordering::Equal if tight.len() < MAX_LISTED => tight.push(triple),
                _ => {}
            }
        }
    }
    let max_triple_ratio = if best_triple.0 == 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::from(best_triple.0), BigInt::from(best_triple.1))
    };
    debug_assert!(violation_count == 0 || max_ratio >= bound_rat);

    RepetitionReport {
        prefix_length: len,
        bound,
        max_ratio,
        witnesses,
        violations,
        violation_count,
        admissible_count,
        max_triple_ratio,
        admissible_triples: tight,
        triple_violations,
        triple_violation_count,
    }
}

/// Every admissible triple with `l < |w|`, by direct use of the definition.
/// Quadratic in the number of triples; meant for short words.
pub fn admissible_triples(w: &Word) -> Vec<AdmissibleTriple> {
    let u = w.letters();
    let mut out = Vec::new();
    for l in 1..u.len() {
        for p in 1..=l {
            if u[l - p] == u[l] {
                continue;
            }
            for h in p..=l {
                if (h..l).all(|n| u[n - p] == u[n]) {
                    out.push(AdmissibleTriple { h, p, l });
                }
            }
        }
    }
    out
}
