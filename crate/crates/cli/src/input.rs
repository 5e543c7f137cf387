use std::path::{Path, PathBuf};

use autoreal::automaton::Dfao;
use autoreal::cobham::{to_morphic, MorphicRepr};
use autoreal::digits::DigitSource;
use autoreal::error::{Error, Result};
use autoreal::fixtures;
use autoreal::words::Morphism;
use clap::Args;
use serde_json::Value;

/// A sequence given either as a JSON file or as one of the bundled fixtures.
#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// JSON file holding a DFAO or a morphic representation (detected from its keys).
    #[arg(long, short = 'i', conflicts_with = "fixture")]
    pub input: Option<PathBuf>,
    /// Bundled fixture: thue-morse, baum-sweet, thue-morse-morphic, k3-overlap, cf-ab.
    #[arg(long)]
    pub fixture: Option<String>,
}

pub enum Input {
    Dfao(Dfao),
    Morphic(MorphicRepr),
    Morphism(Morphism),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Dfao(_) => "DFAO",
            Input::Morphic(_) => "morphic representation",
            Input::Morphism(_) => "morphism",
        }
    }
}

/// Picks the schema from the top-level keys and parses with it.
pub fn parse_input(text: &str) -> Result<Input> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    if obj.contains_key("delta") {
        Ok(Input::Dfao(Dfao::parse_json(text)?))
    } else if obj.contains_key("sigma") {
        Ok(Input::Morphic(MorphicRepr::parse_json(text)?))
    } else if obj.contains_key("images") {
        Ok(Input::Morphism(Morphism::parse_json(text)?))
    } else {
        Err(Error::Parse(
            "unknown schema: expected a DFAO (\"delta\"), a morphic representation (\"sigma\") or a morphism (\"images\")"
                .into(),
        ))
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn fixture(name: &str) -> Result<Input> {
    Ok(match name {
        "thue-morse" => Input::Dfao(fixtures::thue_morse()),
        "baum-sweet" => Input::Dfao(fixtures::baum_sweet()),
        "thue-morse-morphic" => Input::Morphic(fixtures::thue_morse_morphic()),
        "k3-overlap" => Input::Morphic(fixtures::k3_overlap_morphic()),
        "cf-ab" => Input::Morphic(fixtures::cf_ab_morphic()),
        _ => return Err(Error::Parse(format!("unknown fixture `{name}`"))),
    })
}

impl SourceArgs {
    pub fn load(&self) -> Result<Input> {
        match (&self.input, &self.fixture) {
            (Some(path), _) => parse_input(&read(path)?),
            (None, Some(name)) => fixture(name),
            (None, None) => Err(Error::Parse("pass --input FILE or --fixture NAME".into())),
        }
    }

    pub fn dfao(&self) -> Result<Dfao> {
        match self.load()? {
            Input::Dfao(a) => Ok(a),
            Input::Morphic(m) => Ok(m.to_automaton()),
            other => Err(Error::Parse(format!(
                "expected a DFAO, got a {}",
                other.kind()
            ))),
        }
    }

    pub fn morphic(&self) -> Result<MorphicRepr> {
        match self.load()? {
            Input::Dfao(a) => to_morphic(&a),
            Input::Morphic(m) => Ok(m),
            other => Err(Error::Parse(format!(
                "expected a morphic representation, got a {}",
                other.kind()
            ))),
        }
    }

    pub fn sequence(&self) -> Result<Sequence> {
        match self.load()? {
            Input::Dfao(a) => Ok(Sequence::Dfao(a)),
            Input::Morphic(m) => Ok(Sequence::Morphic(m)),
            other => Err(Error::Parse(format!(
                "expected a sequence, got a {}",
                other.kind()
            ))),
        }
    }
}

pub enum Sequence {
    Dfao(Dfao),
    Morphic(MorphicRepr),
}

impl DigitSource for Sequence {
    fn terms(&self, len: usize) -> Result<Vec<u32>> {
        match self {
            Sequence::Dfao(a) => a.terms(len),
            Sequence::Morphic(m) => m.terms(len),
        }
    }
}

/// Digits as `123` (one character each, base up to 36) or `1,2,13`.
pub fn parse_digits(text: &str) -> Result<Vec<u32>> {
    let text = text.trim();
    if text.contains(',') {
        return text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad digit `{t}`")))
            })
            .collect();
    }
    text.chars()
        .map(|c| {
            c.to_digit(36)
                .ok_or_else(|| Error::Parse(format!("bad digit `{c}`")))
        })
        .collect()
}

pub fn check_base(b: u32) -> Result<u32> {
    if b < 2 {
        Err(Error::InvalidBase(b))
    } else {
        Ok(b)
    }
}
