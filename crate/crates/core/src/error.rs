use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("letter `{letter}` is not in the alphabet {context}")]
    LetterOutsideAlphabet { letter: String, context: String },
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("morphism is not prolongable at `{0}`")]
    NotProlongable(String),
    #[error("invalid exponent {0}: fractional powers need x >= 1")]
    ExponentBelowOne(String),
    #[error("operation needs a non-empty word")]
    EmptyWord,
    #[error("prefix too short: need {needed} letters, have {available}")]
    PrefixTooShort { needed: usize, available: usize },
    #[error("no repeated letter in the first {0} letters")]
    NoRepeatedLetter(usize),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("automaton must use the {expected} reading convention")]
    WrongConvention { expected: &'static str },
    #[error("automaton is not zero-invariant: state `{state}` changes output along its zero path")]
    NotZeroInvariant { state: String },
    #[error("reversal size guard exceeded: {states} states > guard {guard}")]
    ReversalGuard { states: usize, guard: usize },
    #[error("letter `{0}` is not a digit below the base {1}")]
    NotADigit(String, u32),
    #[error("invalid base {0}")]
    InvalidBase(u32),
    #[error("digit stream exhausted: {needed} digits requested, {available} available")]
    StreamExhausted { needed: usize, available: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("could not certify: {0}")]
    Undecided(String),
    #[error("the target looks rational: {0}")]
    RationalTarget(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("elements belong to different number fields")]
    MixedFields,
    #[error("hypothesis not found within depth {depth}: {what}")]
    HypothesisNotFound { what: &'static str, depth: usize },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
