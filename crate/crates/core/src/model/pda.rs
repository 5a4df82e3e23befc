use std::collections::BTreeSet;
use std::fmt;

use serde::Deserialize;

use super::{single_char, Alphabet, RESERVED};
use crate::error::ModelError;

/// Initial stack content.
pub const BOTTOM_MARKER: char = 'Z';

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AcceptanceMode {
    #[default]
    FinalState,
    EmptyStack,
}

impl AcceptanceMode {
    pub fn as_str(self) -> &'static str {
        match self {
            AcceptanceMode::FinalState => "final-state",
            AcceptanceMode::EmptyStack => "empty-stack",
        }
    }
}

impl fmt::Display for AcceptanceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Reads `read` (ε if `None`), pops `pop` (nothing if `None`), then pushes
/// `push` with its first character ending on top.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PdaTransition {
    pub from: usize,
    pub read: Option<char>,
    pub pop: Option<char>,
    pub push: Vec<char>,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pda {
    states: Vec<String>,
    alphabet: Alphabet,
    stack_alphabet: Vec<char>,
    transitions: Vec<PdaTransition>,
    start: usize,
    accepting: BTreeSet<usize>,
    mode: AcceptanceMode,
}

impl Pda {
    pub fn new(
        states: Vec<String>,
        alphabet: Alphabet,
        stack_alphabet: Vec<char>,
        transitions: Vec<PdaTransition>,
        start: usize,
        accepting: BTreeSet<usize>,
        mode: AcceptanceMode,
    ) -> Result<Self, ModelError> {
        if states.is_empty() {
            return Err(ModelError::validation("states", "automaton has no states"));
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(ModelError::validation(format!("state \"{s}\""), "duplicate state id"));
            }
        }
        for (i, &c) in stack_alphabet.iter().enumerate() {
            if c == '$' || RESERVED.contains(&c) || c.is_whitespace() || c.is_control() {
                return Err(ModelError::validation(
                    format!("stack symbol '{c}'"),
                    "reserved character",
                ));
            }
            if stack_alphabet[..i].contains(&c) {
                return Err(ModelError::validation(format!("stack symbol '{c}'"), "duplicate symbol"));
            }
        }
        if !stack_alphabet.contains(&BOTTOM_MARKER) {
            return Err(ModelError::validation(
                "stackAlphabet",
                format!("must contain the bottom marker '{BOTTOM_MARKER}'"),
            ));
        }
        let n = states.len();
        if start >= n {
            return Err(ModelError::validation("start", "start state is not declared"));
        }
        if accepting.iter().any(|&q| q >= n) {
            return Err(ModelError::validation("accepting", "not a declared state"));
        }
        if mode == AcceptanceMode::FinalState && accepting.is_empty() {
            return Err(ModelError::validation(
                "accepting",
                "final-state acceptance needs at least one accepting state",
            ));
        }
        for t in &transitions {
            if t.from >= n || t.to >= n {
                return Err(ModelError::validation("transition", "endpoint is not a declared state"));
            }
            let at = || format!("transition from \"{}\"", states[t.from]);
            if let Some(c) = t.read {
                if !alphabet.contains(c) {
                    return Err(ModelError::validation(at(), format!("input symbol '{c}' is not in {alphabet}")));
                }
            }
            for c in t.pop.iter().chain(t.push.iter()) {
                if !stack_alphabet.contains(c) {
                    return Err(ModelError::validation(at(), format!("stack symbol '{c}' is not declared")));
                }
            }
        }
        Ok(Pda {
            states,
            alphabet,
            stack_alphabet,
            transitions,
            start,
            accepting,
            mode,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn stack_alphabet(&self) -> &[char] {
        &self.stack_alphabet
    }

    pub fn transitions(&self) -> &[PdaTransition] {
        &self.transitions
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn mode(&self) -> AcceptanceMode {
        self.mode
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub(super) struct PdaDoc {
    #[serde(rename = "type")]
    pub kind: Option<String>,
    pub alphabet: Vec<String>,
    pub stack_alphabet: Vec<String>,
    pub states: Vec<String>,
    pub start: String,
    #[serde(default)]
    pub accepting: Vec<String>,
    pub transitions: Vec<PdaTransitionDoc>,
    pub acceptance_mode: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct PdaTransitionDoc {
    pub from: String,
    pub read: Option<String>,
    pub pop: Option<String>,
    #[serde(default)]
    pub push: String,
    pub to: String,
}

/// Parses the PDA JSON schema. A missing `acceptanceMode` means final-state.
pub fn parse_pda(document: &str) -> Result<Pda, ModelError> {
    let doc: PdaDoc = serde_json::from_str(document).map_err(|e| ModelError::schema(e.to_string()))?;
    pda_from_doc(doc)
}

pub(super) fn pda_from_doc(doc: PdaDoc) -> Result<Pda, ModelError> {
    if let Some(kind) = doc.kind.as_deref() {
        if kind != "pda" {
            return Err(ModelError::schema(format!("\"type\" must be \"pda\", found \"{kind}\"")));
        }
    }
    let alphabet = Alphabet::from_strings(&doc.alphabet)?;
    let stack_alphabet = doc
        .stack_alphabet
        .iter()
        .map(|s| single_char(s, "stack symbol"))
        .collect::<Result<Vec<_>, _>>()?;
    let mode = match doc.acceptance_mode.as_deref() {
        None | Some("final-state") => AcceptanceMode::FinalState,
        Some("empty-stack") => AcceptanceMode::EmptyStack,
        Some(other) => {
            return Err(ModelError::schema(format!(
                "\"acceptanceMode\" must be \"final-state\" or \"empty-stack\", found \"{other}\""
            )))
        }
    };
    let states = doc.states;
    let index = |name: &str| {
        states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| ModelError::validation(format!("state \"{name}\""), "not a declared state"))
    };
    let start = index(&doc.start)?;
    let accepting = doc
        .accepting
        .iter()
        .map(|s| index(s))
        .collect::<Result<BTreeSet<_>, _>>()?;
    let optional = |s: &Option<String>, what: &str| match s.as_deref() {
        None | Some("") => Ok(None),
        Some(s) => single_char(s, what).map(Some),
    };
    let mut transitions = Vec::with_capacity(doc.transitions.len());
    for t in &doc.transitions {
        transitions.push(PdaTransition {
            from: index(&t.from)?,
            read: optional(&t.read, "input symbol")?,
            pop: optional(&t.pop, "pop symbol")?,
            push: t.push.chars().collect(),
            to: index(&t.to)?,
        });
    }
    Pda::new(states.clone(), alphabet, stack_alphabet, transitions, start, accepting, mode)
}
