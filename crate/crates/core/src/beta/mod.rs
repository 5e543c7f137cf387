//! Expansions in a Pisot base: exact arithmetic in `Q(beta)`, greedy
//! expansions and the approximation ladder.

mod classify;
mod expansion;
mod field;
mod ladder;
mod poly;

pub use classify::{
    classify_pisot_salem, complex_roots, Classification, PisotCertificate, DEFAULT_TOLERANCE,
};
pub use expansion::{
    beta_periodic_value, greedy_beta_expansion, lemma_dist_prime_check, word_value,
    GreedyExpansion, LemmaDistPrimeReport,
};
pub use field::{FieldElement, NumberField};
pub use ladder::{
    annihilating_polynomial, bareiss_det, beta_ladder, beta_ladder_with, resultant,
    BetaLadderConfig, BetaLadderReport, BetaRecord,
};
pub use poly::IntPoly;
