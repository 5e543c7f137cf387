//! Bundled automata and morphic representations.

use crate::automaton::Dfao;
use crate::cobham::MorphicRepr;

pub const BAUM_SWEET_JSON: &str = include_str!("../fixtures/baum_sweet.json");
pub const THUE_MORSE_JSON: &str = include_str!("../fixtures/thue_morse.json");
pub const THUE_MORSE_MORPHIC_JSON: &str = include_str!("../fixtures/thue_morse_morphic.json");
/// `0 -> 001, 1 -> 011`, whose fixed point begins with an overlap.
pub const K3_OVERLAP_MORPHIC_JSON: &str = include_str!("../fixtures/k3_overlap_morphic.json");
/// `a -> ab, b -> aa` coded by `a -> 1, b -> 2`, read as partial quotients.
pub const CF_AB_MORPHIC_JSON: &str = include_str!("../fixtures/cf_ab_morphic.json");

/// Baum-Sweet automaton, least significant digit first.
pub fn baum_sweet() -> Dfao {
    Dfao::parse_json(BAUM_SWEET_JSON).expect("bundled fixture")
}

/// Thue-Morse automaton, least significant digit first.
pub fn thue_morse() -> Dfao {
    Dfao::parse_json(THUE_MORSE_JSON).expect("bundled fixture")
}

pub fn thue_morse_morphic() -> MorphicRepr {
    MorphicRepr::parse_json(THUE_MORSE_MORPHIC_JSON).expect("bundled fixture")
}

pub fn k3_overlap_morphic() -> MorphicRepr {
    MorphicRepr::parse_json(K3_OVERLAP_MORPHIC_JSON).expect("bundled fixture")
}

pub fn cf_ab_morphic() -> MorphicRepr {
    MorphicRepr::parse_json(CF_AB_MORPHIC_JSON).expect("bundled fixture")
}
