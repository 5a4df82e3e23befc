use std::collections::{BTreeSet, HashMap, VecDeque};

use super::Dfa;
use crate::error::EngineError;
use crate::model::FiniteAutomaton;

/// Default limit on the number of subsets built by [`determinize`].
pub const DEFAULT_SUBSET_CAP: usize = 1_000_000;

/// Smallest superset of `states` closed under ε-moves.
pub fn epsilon_closure(fa: &FiniteAutomaton, states: &BTreeSet<usize>) -> BTreeSet<usize> {
    let eps = epsilon_table(fa);
    closure(&eps, states.iter().copied())
        .into_iter()
        .collect()
}

fn epsilon_table(fa: &FiniteAutomaton) -> Vec<Vec<usize>> {
    let mut eps = vec![Vec::new(); fa.num_states()];
    for t in fa.transitions() {
        if t.read.is_none() {
            eps[t.from].push(t.to);
        }
    }
    eps
}

// Sorted, deduplicated closure.
fn closure(eps: &[Vec<usize>], seed: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut in_set = vec![false; eps.len()];
    let mut stack: Vec<usize> = Vec::new();
    for q in seed {
        if !in_set[q] {
            in_set[q] = true;
            stack.push(q);
        }
    }
    while let Some(q) = stack.pop() {
        for &r in &eps[q] {
            if !in_set[r] {
                in_set[r] = true;
                stack.push(r);
            }
        }
    }
    (0..eps.len()).filter(|&q| in_set[q]).collect()
}

/// Subset construction with the default cap.
pub fn determinize(fa: &FiniteAutomaton) -> Result<Dfa, EngineError> {
    determinize_with_cap(fa, DEFAULT_SUBSET_CAP)
}

/// Subset construction. States of the result are the reachable ε-closed
/// subsets in discovery order; the empty subset, when reached, is the dead
/// state, so the result is complete.
pub fn determinize_with_cap(fa: &FiniteAutomaton, cap: usize) -> Result<Dfa, EngineError> {
    let k = fa.alphabet().len();
    let eps = epsilon_table(fa);
    let mut moves = vec![vec![Vec::new(); k]; fa.num_states()];
    for t in fa.transitions() {
        if let Some(c) = t.read {
            let i = fa.alphabet().index_of(c).expect("validated symbol");
            moves[t.from][i].push(t.to);
        }
    }

    let start = closure(&eps, [fa.start()]);
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    index.insert(start.clone(), 0);
    subsets.push(start);
    let mut delta: Vec<usize> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        debug_assert_eq!(delta.len(), id * k);
        for i in 0..k {
            let targets = subsets[id].iter().flat_map(|&q| moves[q][i].iter().copied());
            let next = closure(&eps, targets);
            let next_id = match index.get(&next) {
                Some(&j) => j,
                None => {
                    let j = subsets.len();
                    if j >= cap {
                        return Err(EngineError::StateBlowup { cap });
                    }
                    index.insert(next.clone(), j);
                    subsets.push(next);
                    queue.push_back(j);
                    j
                }
            };
            delta.push(next_id);
        }
    }
    let accepting = subsets
        .iter()
        .map(|s| s.iter().any(|&q| fa.is_accepting(q)))
        .collect();
    Ok(Dfa::new(fa.alphabet().clone(), delta, accepting, 0))
}
