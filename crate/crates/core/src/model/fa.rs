use std::collections::BTreeSet;

use serde::Deserialize;

use super::{single_char, Alphabet};
use crate::error::ModelError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FaKind {
    Dfa,
    Nfa,
}

/// One edge; `read == None` is an ε-move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaTransition {
    pub from: usize,
    pub read: Option<char>,
    pub to: usize,
}

/// A DFA or NFA over named states. States are referred to by index into
/// [`FiniteAutomaton::states`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAutomaton {
    states: Vec<String>,
    alphabet: Alphabet,
    transitions: Vec<FaTransition>,
    start: usize,
    accepting: BTreeSet<usize>,
    kind: FaKind,
}

impl FiniteAutomaton {
    /// Builds and validates an automaton. A `Dfa` kind must have no ε-moves
    /// and at most one transition per (state, symbol); it may be partial.
    pub fn new(
        states: Vec<String>,
        alphabet: Alphabet,
        transitions: Vec<FaTransition>,
        start: usize,
        accepting: BTreeSet<usize>,
        kind: FaKind,
    ) -> Result<Self, ModelError> {
        if states.is_empty() {
            return Err(ModelError::validation("states", "automaton has no states"));
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(ModelError::validation(format!("state \"{s}\""), "duplicate state id"));
            }
        }
        let n = states.len();
        if start >= n {
            return Err(ModelError::validation("start", "start state is not declared"));
        }
        if let Some(&q) = accepting.iter().find(|&&q| q >= n) {
            return Err(ModelError::validation(
                format!("accepting state #{q}"),
                "not a declared state",
            ));
        }
        for t in &transitions {
            if t.from >= n || t.to >= n {
                return Err(ModelError::validation("transition", "endpoint is not a declared state"));
            }
            if let Some(c) = t.read {
                if !alphabet.contains(c) {
                    return Err(ModelError::validation(
                        format!("transition from \"{}\"", states[t.from]),
                        format!("symbol '{c}' is not in the alphabet {alphabet}"),
                    ));
                }
            }
        }
        if kind == FaKind::Dfa {
            let mut seen = BTreeSet::new();
            for t in &transitions {
                let Some(c) = t.read else {
                    return Err(ModelError::validation(
                        format!("state \"{}\"", states[t.from]),
                        "a DFA cannot have ε-transitions",
                    ));
                };
                if !seen.insert((t.from, c)) {
                    return Err(ModelError::validation(
                        format!("state \"{}\"", states[t.from]),
                        format!("more than one transition on '{c}'"),
                    ));
                }
            }
        }
        Ok(FiniteAutomaton {
            states,
            alphabet,
            transitions,
            start,
            accepting,
            kind,
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

    pub fn transitions(&self) -> &[FaTransition] {
        &self.transitions
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.contains(&q)
    }

    pub fn kind(&self) -> FaKind {
        self.kind
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    /// Direct NFA simulation, used as a reference for the DFA pipeline.
    pub fn accepts(&self, word: &str) -> bool {
        let mut current = self.closure_of([self.start].into_iter().collect());
        for c in word.chars() {
            let next: BTreeSet<usize> = self
                .transitions
                .iter()
                .filter(|t| t.read == Some(c) && current.contains(&t.from))
                .map(|t| t.to)
                .collect();
            current = self.closure_of(next);
        }
        current.iter().any(|q| self.accepting.contains(q))
    }

    fn closure_of(&self, mut set: BTreeSet<usize>) -> BTreeSet<usize> {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for t in &self.transitions {
                if t.from == q && t.read.is_none() && set.insert(t.to) {
                    stack.push(t.to);
                }
            }
        }
        set
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct FaDoc {
    #[serde(rename = "type")]
    pub kind: String,
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub start: String,
    pub accepting: Vec<String>,
    pub transitions: Vec<FaTransitionDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct FaTransitionDoc {
    pub from: String,
    pub read: Option<String>,
    pub to: String,
}

/// Parses the FA JSON schema. With `expect_dfa` the result is validated as a
/// DFA and tagged `Dfa`; otherwise it is tagged `Nfa` regardless of the
/// document's `type` field.
pub fn parse_fa(document: &str, expect_dfa: bool) -> Result<FiniteAutomaton, ModelError> {
    let doc: FaDoc = serde_json::from_str(document).map_err(|e| ModelError::schema(e.to_string()))?;
    fa_from_doc(doc, expect_dfa)
}

pub(super) fn fa_from_doc(doc: FaDoc, expect_dfa: bool) -> Result<FiniteAutomaton, ModelError> {
    if doc.kind != "dfa" && doc.kind != "nfa" {
        return Err(ModelError::schema(format!(
            "\"type\" must be \"dfa\" or \"nfa\", found \"{}\"",
            doc.kind
        )));
    }
    let alphabet = Alphabet::from_strings(&doc.alphabet)?;
    let states = doc.states;
    let index = |name: &str| {
        states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| ModelError::validation(format!("state \"{name}\""), "not a declared state"))
    };
    let start = index(&doc.start)?;
    let mut accepting = BTreeSet::new();
    for name in &doc.accepting {
        accepting.insert(index(name)?);
    }
    let mut transitions = Vec::with_capacity(doc.transitions.len());
    for t in &doc.transitions {
        let read = match t.read.as_deref() {
            None | Some("") => None,
            Some(s) => Some(single_char(s, "transition symbol")?),
        };
        transitions.push(FaTransition {
            from: index(&t.from)?,
            read,
            to: index(&t.to)?,
        });
    }
    let kind = if expect_dfa { FaKind::Dfa } else { FaKind::Nfa };
    FiniteAutomaton::new(states.clone(), alphabet, transitions, start, accepting, kind)
}
