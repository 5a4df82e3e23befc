use std::collections::{BTreeSet, VecDeque};

use crate::error::{EngineError, ModelError};
use crate::model::{Alphabet, FaKind, FaTransition, FiniteAutomaton};

/// Complete DFA as a dense transition table: `delta[q * k + i]` is the
/// successor of `q` on the `i`-th alphabet symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<usize>,
    accepting: Vec<bool>,
    start: usize,
}

impl Dfa {
    /// # Panics
    /// If the table is not `accepting.len() * alphabet.len()` long or points
    /// outside the state range.
    pub fn new(alphabet: Alphabet, delta: Vec<usize>, accepting: Vec<bool>, start: usize) -> Self {
        let n = accepting.len();
        assert!(n > 0 && start < n, "start state out of range");
        assert_eq!(delta.len(), n * alphabet.len(), "transition table has the wrong size");
        assert!(delta.iter().all(|&q| q < n), "transition target out of range");
        Dfa {
            alphabet,
            delta,
            accepting,
            start,
        }
    }

    /// Converts a deterministic automaton, sending missing transitions to a
    /// fresh dead state.
    pub fn from_automaton(fa: &FiniteAutomaton) -> Result<Self, EngineError> {
        let k = fa.alphabet().len();
        let n = fa.num_states();
        let mut delta = vec![usize::MAX; n * k];
        for t in fa.transitions() {
            let Some(c) = t.read else {
                return Err(ModelError::validation("automaton", "ε-transition in a deterministic automaton").into());
            };
            let i = fa.alphabet().index_of(c).expect("validated symbol");
            let slot = &mut delta[t.from * k + i];
            if *slot != usize::MAX && *slot != t.to {
                return Err(ModelError::validation(
                    format!("state \"{}\"", fa.states()[t.from]),
                    format!("more than one transition on '{c}'"),
                )
                .into());
            }
            *slot = t.to;
        }
        let mut accepting: Vec<bool> = (0..n).map(|q| fa.is_accepting(q)).collect();
        if delta.contains(&usize::MAX) {
            let dead = n;
            accepting.push(false);
            delta.extend(std::iter::repeat_n(dead, k));
            for slot in &mut delta {
                if *slot == usize::MAX {
                    *slot = dead;
                }
            }
        }
        Ok(Dfa::new(fa.alphabet().clone(), delta, accepting, fa.start()))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    /// Successor on the symbol with alphabet index `symbol`.
    pub fn next(&self, q: usize, symbol: usize) -> usize {
        self.delta[q * self.alphabet.len() + symbol]
    }

    /// Runs the word; `None` if it uses a symbol outside the alphabet.
    pub fn run(&self, word: &str) -> Option<usize> {
        word.chars()
            .try_fold(self.start, |q, c| self.alphabet.index_of(c).map(|i| self.next(q, i)))
    }

    pub fn accepts(&self, word: &str) -> bool {
        self.run(word).is_some_and(|q| self.accepting[q])
    }

    /// Same machine with its columns permuted to follow `order`, which must
    /// contain the same symbols.
    pub fn reordered(&self, order: &Alphabet) -> Option<Dfa> {
        if !self.alphabet.same_set(order) {
            return None;
        }
        let k = order.len();
        let perm: Vec<usize> = order
            .symbols()
            .iter()
            .map(|&c| self.alphabet.index_of(c).expect("same set"))
            .collect();
        let mut delta = Vec::with_capacity(self.delta.len());
        for q in 0..self.num_states() {
            delta.extend(perm.iter().map(|&i| self.delta[q * k + i]));
        }
        Some(Dfa::new(order.clone(), delta, self.accepting.clone(), self.start))
    }

    /// States reachable from the start, in breadth-first order with symbols
    /// expanded in alphabet order.
    pub fn reachable_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.start];
        seen[self.start] = true;
        let mut queue = VecDeque::from([self.start]);
        while let Some(q) = queue.pop_front() {
            for i in 0..self.alphabet.len() {
                let r = self.next(q, i);
                if !seen[r] {
                    seen[r] = true;
                    order.push(r);
                    queue.push_back(r);
                }
            }
        }
        order
    }

    /// Renumbers states by `order` (old ids), dropping any not listed.
    pub(crate) fn renumbered(&self, order: &[usize]) -> Dfa {
        let mut new_id = vec![usize::MAX; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            new_id[q] = i;
        }
        let k = self.alphabet.len();
        let mut delta = Vec::with_capacity(order.len() * k);
        for &q in order {
            delta.extend((0..k).map(|i| new_id[self.next(q, i)]));
        }
        let accepting = order.iter().map(|&q| self.accepting[q]).collect();
        Dfa::new(self.alphabet.clone(), delta, accepting, new_id[self.start])
    }

    /// Back to the general automaton type, with states named `q0`, `q1`, ...
    pub fn to_automaton(&self) -> FiniteAutomaton {
        let n = self.num_states();
        let k = self.alphabet.len();
        let states = (0..n).map(|q| format!("q{q}")).collect();
        let transitions = (0..n)
            .flat_map(|q| {
                (0..k).map(move |i| FaTransition {
                    from: q,
                    read: Some(self.alphabet.symbols()[i]),
                    to: self.next(q, i),
                })
            })
            .collect();
        let accepting: BTreeSet<usize> = (0..n).filter(|&q| self.accepting[q]).collect();
        FiniteAutomaton::new(states, self.alphabet.clone(), transitions, self.start, accepting, FaKind::Dfa)
            .expect("a complete table is a valid DFA")
    }
}
