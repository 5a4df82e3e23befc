use std::collections::BTreeSet;

use crate::model::{Alphabet, FaKind, FaTransition, FiniteAutomaton, RegexAst};

/// Thompson construction: an ε-NFA with at most two states per AST node
/// and a single accepting state.
///
/// The AST's symbols must belong to `alphabet`; [`crate::model::parse_regex`]
/// guarantees that.
pub fn compile_regex(ast: &RegexAst, alphabet: &Alphabet) -> FiniteAutomaton {
    let mut builder = Builder::default();
    let (start, end) = builder.fragment(ast);
    let states = (0..builder.count).map(|q| format!("t{q}")).collect();
    FiniteAutomaton::new(
        states,
        alphabet.clone(),
        builder.transitions,
        start,
        BTreeSet::from([end]),
        FaKind::Nfa,
    )
    .expect("regex symbols are in the alphabet")
}

#[derive(Default)]
struct Builder {
    count: usize,
    transitions: Vec<FaTransition>,
}

impl Builder {
    fn state(&mut self) -> usize {
        self.count += 1;
        self.count - 1
    }

    fn edge(&mut self, from: usize, read: Option<char>, to: usize) {
        self.transitions.push(FaTransition { from, read, to });
    }

    fn fragment(&mut self, ast: &RegexAst) -> (usize, usize) {
        match ast {
            RegexAst::EmptySet => (self.state(), self.state()),
            RegexAst::Epsilon => {
                let (s, e) = (self.state(), self.state());
                self.edge(s, None, e);
                (s, e)
            }
            RegexAst::Symbol(c) => {
                let (s, e) = (self.state(), self.state());
                self.edge(s, Some(*c), e);
                (s, e)
            }
            RegexAst::Concat(l, r) => {
                let (ls, le) = self.fragment(l);
                let (rs, re) = self.fragment(r);
                self.edge(le, None, rs);
                (ls, re)
            }
            RegexAst::Union(l, r) => {
                let s = self.state();
                let (ls, le) = self.fragment(l);
                let (rs, re) = self.fragment(r);
                let e = self.state();
                self.edge(s, None, ls);
                self.edge(s, None, rs);
                self.edge(le, None, e);
                self.edge(re, None, e);
                (s, e)
            }
            RegexAst::Star(inner) => {
                let s = self.state();
                let (is, ie) = self.fragment(inner);
                let e = self.state();
                self.edge(s, None, is);
                self.edge(s, None, e);
                self.edge(ie, None, is);
                self.edge(ie, None, e);
                (s, e)
            }
        }
    }
}
