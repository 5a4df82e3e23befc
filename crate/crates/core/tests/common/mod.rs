#![allow(dead_code)]

use std::collections::BTreeSet;

use david_core::model::{AcceptanceMode, Alphabet, Cfg, GrammarSymbol, Pda, PdaTransition, Rule};
use david_core::regular::Dfa;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ab() -> Alphabet {
    Alphabet::new("ab".chars()).unwrap()
}

/// Every string over `symbols` of length at most `max`, in length-lex order.
pub fn words(symbols: &[char], max: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max {
        layer = layer
            .iter()
            .flat_map(|w| symbols.iter().map(move |c| format!("{w}{c}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Complete DFA over {a, b} with 1 to `max_states` states.
pub fn random_dfa(rng: &mut impl Rng, max_states: usize) -> Dfa {
    let states = rng.gen_range(1..=max_states);
    let delta = (0..states * 2).map(|_| rng.gen_range(0..states)).collect();
    let accepting = (0..states).map(|_| rng.gen_bool(0.4)).collect();
    Dfa::new(ab(), delta, accepting, 0)
}

/// `d` with its states shuffled and one state duplicated, so the language
/// is unchanged.
pub fn disguised(rng: &mut impl Rng, d: &Dfa) -> Dfa {
    let n = d.num_states();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let copy_of = rng.gen_range(0..n);
    let m = n + 1;
    let mut delta = vec![0; m * 2];
    let mut accepting = vec![false; m];
    for q in 0..n {
        for c in 0..2 {
            let mut to = perm[d.next(q, c)];
            // send some edges into the duplicate instead
            if d.next(q, c) == copy_of && rng.gen_bool(0.5) {
                to = n;
            }
            delta[perm[q] * 2 + c] = to;
        }
        accepting[perm[q]] = d.is_accepting(q);
    }
    for c in 0..2 {
        delta[n * 2 + c] = perm[d.next(copy_of, c)];
    }
    accepting[n] = d.is_accepting(copy_of);
    Dfa::new(ab(), delta, accepting, perm[d.start()])
}

/// Grammar over {a, b} with nonterminals among S, A, B, C; some rules are
/// empty and some nonterminals may be unproductive.
pub fn random_grammar(rng: &mut impl Rng) -> Cfg {
    let names = ["S", "A", "B", "C"];
    let n = rng.gen_range(1..=4);
    let mut rules = Vec::new();
    for lhs in 0..n {
        for _ in 0..rng.gen_range(1..=3) {
            let len = if rng.gen_bool(0.15) { 0 } else { rng.gen_range(1..=3) };
            let rhs = (0..len)
                .map(|_| match rng.gen_range(0..5) {
                    0 => GrammarSymbol::Terminal('a'),
                    1 => GrammarSymbol::Terminal('b'),
                    _ => GrammarSymbol::Nonterminal(rng.gen_range(0..n)),
                })
                .collect();
            rules.push(Rule { lhs, rhs });
        }
    }
    Cfg::new(ab(), names[..n].iter().map(|s| s.to_string()).collect(), rules, 0).unwrap()
}

/// PDA over {a, b} with stack symbols Z and A, up to three states and
/// either acceptance mode.
pub fn random_pda(rng: &mut impl Rng) -> Pda {
    let n = rng.gen_range(1..=3);
    let stack = ['Z', 'A'];
    let mut transitions = Vec::new();
    for _ in 0..rng.gen_range(1..=7) {
        let push_len = rng.gen_range(0..=2);
        transitions.push(PdaTransition {
            from: rng.gen_range(0..n),
            read: [None, Some('a'), Some('b')][rng.gen_range(0..3)],
            pop: [None, Some('Z'), Some('A')][rng.gen_range(0..3)],
            push: (0..push_len).map(|_| stack[rng.gen_range(0..2)]).collect(),
            to: rng.gen_range(0..n),
        });
    }
    let mode = if rng.gen_bool(0.5) {
        AcceptanceMode::FinalState
    } else {
        AcceptanceMode::EmptyStack
    };
    let mut accepting: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    if mode == AcceptanceMode::FinalState && accepting.is_empty() {
        accepting.insert(n - 1);
    }
    Pda::new(
        (0..n).map(|i| format!("r{i}")).collect(),
        ab(),
        stack.to_vec(),
        transitions,
        0,
        accepting,
        mode,
    )
    .unwrap()
}
