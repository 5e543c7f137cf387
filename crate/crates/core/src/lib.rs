pub mod automaton;
pub mod beta;
pub mod cobham;
pub mod contfrac;
pub mod digits;
pub mod diophantine;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod words;

pub use automaton::{Convention, Dfao, KernelResult};
pub use cobham::{to_morphic, MorphicRepr};
pub use error::{Error, Result};
pub use words::{Alphabet, Letter, Morphism, Word};
