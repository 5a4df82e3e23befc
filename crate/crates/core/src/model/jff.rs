//! Import of JFLAP `.jff` files (finite automata, pushdown automata and
//! grammars). Layout information is ignored.

use std::collections::BTreeSet;

use roxmltree::{Document, Node};

use super::{
    parse_cfg, single_char, AcceptanceMode, Alphabet, FaKind, FaTransition, FiniteAutomaton, Model, Pda,
    PdaTransition, BOTTOM_MARKER,
};
use crate::error::ModelError;

/// Reads a JFLAP document. The alphabet is inferred from the symbols the
/// document uses, in order of first appearance. Automata come back as NFAs.
pub fn import_jff(xml: &str) -> Result<Model, ModelError> {
    let doc = Document::parse(xml).map_err(|e| ModelError::schema(format!("malformed XML: {e}")))?;
    let root = doc.root_element();
    if root.tag_name().name() != "structure" {
        return Err(ModelError::schema("root element must be <structure>"));
    }
    let kind = child_text(root, "type").ok_or_else(|| ModelError::schema("missing <type>"))?;
    match kind.trim() {
        "fa" => import_fa(automaton_node(root)).map(Model::Fa),
        "pda" => import_pda(automaton_node(root)).map(Model::Pda),
        "grammar" => import_grammar(root).map(Model::Cfg),
        other => Err(ModelError::schema(format!("unsupported model type \"{other}\""))),
    }
}

fn child<'a, 'i>(node: Node<'a, 'i>, name: &str) -> Option<Node<'a, 'i>> {
    node.children().find(|c| c.is_element() && c.tag_name().name() == name)
}

fn child_text<'a>(node: Node<'a, '_>, name: &str) -> Option<&'a str> {
    child(node, name).map(|c| c.text().unwrap_or(""))
}

// Newer files wrap states in <automaton>, older ones put them directly
// under <structure>.
fn automaton_node<'a, 'i>(root: Node<'a, 'i>) -> Node<'a, 'i> {
    child(root, "automaton").unwrap_or(root)
}

struct StateTable {
    ids: Vec<String>,
    names: Vec<String>,
    start: Option<usize>,
    accepting: BTreeSet<usize>,
}

impl StateTable {
    fn read(parent: Node) -> Result<Self, ModelError> {
        let mut table = StateTable {
            ids: Vec::new(),
            names: Vec::new(),
            start: None,
            accepting: BTreeSet::new(),
        };
        for state in parent.children().filter(|c| c.has_tag_name("state")) {
            let id = state
                .attribute("id")
                .ok_or_else(|| ModelError::schema("<state> without id"))?
                .to_string();
            let name = state.attribute("name").map_or_else(|| id.clone(), str::to_string);
            let index = table.ids.len();
            if child(state, "initial").is_some() {
                if table.start.is_some() {
                    return Err(ModelError::validation(format!("state \"{name}\""), "second initial state"));
                }
                table.start = Some(index);
            }
            if child(state, "final").is_some() {
                table.accepting.insert(index);
            }
            table.ids.push(id);
            table.names.push(name);
        }
        if table.ids.is_empty() {
            return Err(ModelError::validation("states", "automaton has no states"));
        }
        Ok(table)
    }

    fn index(&self, id: &str) -> Result<usize, ModelError> {
        self.ids
            .iter()
            .position(|s| s == id.trim())
            .ok_or_else(|| ModelError::validation(format!("state id \"{id}\""), "not declared"))
    }

    fn start(&self) -> Result<usize, ModelError> {
        self.start
            .ok_or_else(|| ModelError::validation("states", "no initial state"))
    }
}

fn optional_symbol(text: Option<&str>, what: &str) -> Result<Option<char>, ModelError> {
    match text.map(str::trim) {
        None | Some("") => Ok(None),
        Some(s) => single_char(s, what).map(Some),
    }
}

fn note(order: &mut Vec<char>, c: char) {
    if !order.contains(&c) {
        order.push(c);
    }
}

fn import_fa(node: Node) -> Result<FiniteAutomaton, ModelError> {
    let states = StateTable::read(node)?;
    let mut symbols = Vec::new();
    let mut transitions = Vec::new();
    for t in node.children().filter(|c| c.has_tag_name("transition")) {
        let from = states.index(child_text(t, "from").unwrap_or(""))?;
        let to = states.index(child_text(t, "to").unwrap_or(""))?;
        let read = optional_symbol(child_text(t, "read"), "transition symbol")?;
        if let Some(c) = read {
            note(&mut symbols, c);
        }
        transitions.push(FaTransition { from, read, to });
    }
    let alphabet = Alphabet::new(symbols)?;
    let start = states.start()?;
    FiniteAutomaton::new(states.names, alphabet, transitions, start, states.accepting, FaKind::Nfa)
}

fn import_pda(node: Node) -> Result<Pda, ModelError> {
    let states = StateTable::read(node)?;
    let mut symbols = Vec::new();
    let mut stack = vec![BOTTOM_MARKER];
    let mut transitions = Vec::new();
    for t in node.children().filter(|c| c.has_tag_name("transition")) {
        let from = states.index(child_text(t, "from").unwrap_or(""))?;
        let to = states.index(child_text(t, "to").unwrap_or(""))?;
        let read = optional_symbol(child_text(t, "read"), "input symbol")?;
        let pop = optional_symbol(child_text(t, "pop"), "pop symbol")?;
        let push: Vec<char> = child_text(t, "push").unwrap_or("").trim().chars().collect();
        if let Some(c) = read {
            note(&mut symbols, c);
        }
        for &c in pop.iter().chain(push.iter()) {
            note(&mut stack, c);
        }
        transitions.push(PdaTransition { from, read, pop, push, to });
    }
    let alphabet = Alphabet::new(symbols)?;
    let start = states.start()?;
    let mode = if states.accepting.is_empty() {
        AcceptanceMode::EmptyStack
    } else {
        AcceptanceMode::FinalState
    };
    Pda::new(states.names, alphabet, stack, transitions, start, states.accepting, mode)
}

fn import_grammar(root: Node) -> Result<super::Cfg, ModelError> {
    let mut lines = Vec::new();
    let mut terminals = Vec::new();
    for p in root.children().filter(|c| c.has_tag_name("production")) {
        let left = child_text(p, "left").unwrap_or("").trim();
        let right = child_text(p, "right").unwrap_or("").trim();
        for c in right.chars().filter(|c| !c.is_ascii_uppercase() && !c.is_whitespace()) {
            note(&mut terminals, c);
        }
        let right = if right.is_empty() { "_" } else { right };
        lines.push(format!("{left} -> {right}"));
    }
    if lines.is_empty() {
        return Err(ModelError::validation("grammar", "no productions"));
    }
    let alphabet = Alphabet::new(terminals)?;
    parse_cfg(&lines.join("\n"), &alphabet)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_state_fa() {
        let xml = r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>
<structure>
  <type>fa</type>
  <automaton>
    <state id="0" name="q0"><x>50.0</x><y>80.0</y><initial/></state>
    <state id="1" name="q1"><x>150.0</x><y>80.0</y><final/></state>
    <transition><from>0</from><to>1</to><read>a</read></transition>
  </automaton>
</structure>"#;
        let Model::Fa(fa) = import_jff(xml).unwrap() else { panic!() };
        assert_eq!(fa.kind(), FaKind::Nfa);
        assert_eq!(fa.states(), &["q0".to_string(), "q1".to_string()]);
        assert!(fa.accepts("a"));
        assert!(!fa.accepts(""));
    }

    #[test]
    fn old_layout_and_epsilon() {
        let xml = r#"<structure><type>fa</type>
            <state id="0"><initial/></state><state id="1"><final/></state>
            <transition><from>0</from><to>1</to><read/></transition>
            <transition><from>1</from><to>1</to><read>b</read></transition>
            </structure>"#;
        let Model::Fa(fa) = import_jff(xml).unwrap() else { panic!() };
        assert!(fa.accepts(""));
        assert!(fa.accepts("bb"));
        assert_eq!(fa.alphabet().symbols(), &['b']);
    }

    #[test]
    fn unsupported_type() {
        let err = import_jff("<structure><type>turing</type></structure>").unwrap_err();
        assert_eq!(err, ModelError::schema("unsupported model type \"turing\""));
        assert!(matches!(import_jff("<structure>"), Err(ModelError::Schema(_))));
    }

    #[test]
    fn grammar_matches_text_form() {
        let xml = r#"<structure><type>grammar</type>
            <production><left>S</left><right>aSb</right></production>
            <production><left>S</left><right></right></production>
            </structure>"#;
        let Model::Cfg(g) = import_jff(xml).unwrap() else { panic!() };
        let ab = Alphabet::new("ab".chars()).unwrap();
        assert_eq!(g, parse_cfg("S -> aSb | _", &ab).unwrap());
    }

    #[test]
    fn pda_transitions() {
        let xml = r#"<structure><type>pda</type><automaton>
            <state id="0"><initial/></state><state id="1"><final/></state>
            <transition><from>0</from><to>0</to><read>a</read><pop>Z</pop><push>AZ</push></transition>
            <transition><from>0</from><to>1</to><read/><pop>A</pop><push>A</push></transition>
            </automaton></structure>"#;
        let Model::Pda(p) = import_jff(xml).unwrap() else { panic!() };
        assert_eq!(p.stack_alphabet(), &['Z', 'A']);
        assert_eq!(p.mode(), AcceptanceMode::FinalState);
        assert_eq!(p.transitions()[0].push, vec!['A', 'Z']);
        assert_eq!(p.transitions()[1].read, None);
    }
}
