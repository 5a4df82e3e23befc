//! In-memory models and their wire formats.
//!
//! Text conventions shared by every format: `_` is the empty string, `#` is
//! the empty language, and the characters `_ # + * ( ) |` can never be input
//! symbols.

mod cfg;
mod fa;
mod jff;
mod json;
mod pda;
mod regex;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use self::cfg::{parse_cfg, Cfg, GrammarSymbol, Rule};
pub use self::fa::{parse_fa, FaKind, FaTransition, FiniteAutomaton};
pub use self::jff::import_jff;
pub use self::pda::{parse_pda, AcceptanceMode, Pda, PdaTransition, BOTTOM_MARKER};
pub use self::regex::{parse_regex, Regex, RegexAst};

use crate::error::ModelError;

pub(crate) const RESERVED: &[char] = &['_', '#', '+', '*', '(', ')', '|'];

/// Ordered set of input symbols. Declaration order is the tie-break order for
/// witnesses, so it is preserved everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self, ModelError> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(ModelError::validation("alphabet", "alphabet is empty"));
        }
        for (i, &c) in symbols.iter().enumerate() {
            if RESERVED.contains(&c) || c.is_whitespace() || c.is_control() {
                return Err(ModelError::validation(
                    format!("symbol '{c}'"),
                    "reserved or non-printable character cannot be an input symbol",
                ));
            }
            if symbols[..i].contains(&c) {
                return Err(ModelError::validation(format!("symbol '{c}'"), "duplicate symbol"));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Parses the JSON form: a list of one-character strings.
    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self, ModelError> {
        let mut symbols = Vec::with_capacity(items.len());
        for item in items {
            symbols.push(single_char(item.as_ref(), "alphabet symbol")?);
        }
        Alphabet::new(symbols)
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, c: char) -> bool {
        self.symbols.contains(&c)
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == c)
    }

    /// Same symbols, possibly declared in a different order.
    pub fn same_set(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && self.symbols.iter().all(|&c| other.contains(c))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.symbols.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn single_char(s: &str, what: &str) -> Result<char, ModelError> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(ModelError::validation(
            format!("{what} \"{s}\""),
            "must be exactly one character",
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelType {
    Dfa,
    Nfa,
    Regex,
    Cfg,
    Pda,
}

impl ModelType {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelType::Dfa => "dfa",
            ModelType::Nfa => "nfa",
            ModelType::Regex => "regex",
            ModelType::Cfg => "cfg",
            ModelType::Pda => "pda",
        }
    }

    /// Regular model types are checked exactly; the others up to a bound.
    pub fn is_regular(self) -> bool {
        matches!(self, ModelType::Dfa | ModelType::Nfa | ModelType::Regex)
    }
}

impl fmt::Display for ModelType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ModelType {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dfa" => Ok(ModelType::Dfa),
            "nfa" => Ok(ModelType::Nfa),
            "regex" => Ok(ModelType::Regex),
            "cfg" => Ok(ModelType::Cfg),
            "pda" => Ok(ModelType::Pda),
            other => Err(ModelError::schema(format!("unknown model type \"{other}\""))),
        }
    }
}

/// Any of the five model kinds, each carrying its own alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Fa(FiniteAutomaton),
    Regex(Regex),
    Cfg(Cfg),
    Pda(Pda),
}

impl Model {
    pub fn model_type(&self) -> ModelType {
        match self {
            Model::Fa(fa) => match fa.kind() {
                FaKind::Dfa => ModelType::Dfa,
                FaKind::Nfa => ModelType::Nfa,
            },
            Model::Regex(_) => ModelType::Regex,
            Model::Cfg(_) => ModelType::Cfg,
            Model::Pda(_) => ModelType::Pda,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Model::Fa(m) => m.alphabet(),
            Model::Regex(m) => m.alphabet(),
            Model::Cfg(m) => m.alphabet(),
            Model::Pda(m) => m.alphabet(),
        }
    }

    /// Canonical JSON: sorted keys, states and rules in declaration order.
    pub fn to_json(&self) -> String {
        json::serialize_model(self)
    }

    pub fn from_json(text: &str) -> Result<Model, ModelError> {
        json::parse_model(text)
    }

    /// The text a student would submit for this model: a JSON document for
    /// automata, the expression or rule text for regexes and grammars.
    pub fn to_payload(&self) -> String {
        match self {
            Model::Fa(_) | Model::Pda(_) => self.to_json(),
            Model::Regex(r) => r.ast().to_string(),
            Model::Cfg(g) => g.to_string(),
        }
    }
}

/// Parses a submission payload for a problem of the given type and alphabet.
pub fn parse_payload(
    model_type: ModelType,
    alphabet: &Alphabet,
    text: &str,
) -> Result<Model, ModelError> {
    let model = match model_type {
        ModelType::Dfa => Model::Fa(parse_fa(text, true)?),
        ModelType::Nfa => Model::Fa(parse_fa(text, false)?),
        ModelType::Regex => Model::Regex(Regex::new(parse_regex(text, alphabet)?, alphabet.clone())),
        ModelType::Cfg => Model::Cfg(parse_cfg(text, alphabet)?),
        ModelType::Pda => Model::Pda(parse_pda(text)?),
    };
    if !model.alphabet().same_set(alphabet) {
        return Err(ModelError::validation(
            "alphabet",
            format!("expected {alphabet}, found {}", model.alphabet()),
        ));
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_rejects_reserved_and_duplicates() {
        assert!(Alphabet::new("ab".chars()).is_ok());
        assert!(Alphabet::new("a+".chars()).is_err());
        assert!(Alphabet::new("aba".chars()).is_err());
        assert!(Alphabet::new("".chars()).is_err());
        assert!(Alphabet::new("a b".chars()).is_err());
    }

    #[test]
    fn alphabet_order_is_kept() {
        let a = Alphabet::new("ba".chars()).unwrap();
        assert_eq!(a.symbols(), &['b', 'a']);
        assert_eq!(a.index_of('a'), Some(1));
        assert!(a.same_set(&Alphabet::new("ab".chars()).unwrap()));
    }

    #[test]
    fn payload_alphabet_must_match_problem() {
        let ab = Alphabet::new("ab".chars()).unwrap();
        let doc = r#"{"type":"dfa","alphabet":["a","c"],"states":["q0"],"start":"q0","accepting":[],"transitions":[]}"#;
        let err = parse_payload(ModelType::Dfa, &ab, doc).unwrap_err();
        assert!(matches!(err, ModelError::Validation { .. }));
    }
}
