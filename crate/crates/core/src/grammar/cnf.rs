use std::collections::{HashMap, HashSet, VecDeque};

use crate::model::{Alphabet, Cfg, GrammarSymbol};

type Sym = GrammarSymbol;

/// Chomsky-normal-form image of a grammar: only `A -> B C` and `A -> a`
/// rules, with membership of the empty string kept as a flag.
#[derive(Debug, Clone)]
pub struct CnfGrammar {
    alphabet: Alphabet,
    names: Vec<String>,
    binary: Vec<(usize, usize, usize)>,
    terminal: Vec<(usize, char)>,
    start: usize,
    accepts_epsilon: bool,
    // indexes for CYK
    pub(super) by_left: Vec<Vec<(usize, usize)>>,
    pub(super) by_symbol: Vec<Vec<usize>>,
}

impl CnfGrammar {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.names
    }

    pub fn num_nonterminals(&self) -> usize {
        self.names.len()
    }

    /// `(A, B, C)` for each rule `A -> B C`.
    pub fn binary_rules(&self) -> &[(usize, usize, usize)] {
        &self.binary
    }

    /// `(A, a)` for each rule `A -> a`.
    pub fn terminal_rules(&self) -> &[(usize, char)] {
        &self.terminal
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accepts_epsilon(&self) -> bool {
        self.accepts_epsilon
    }

    /// True when the source grammar generates no string at all. Not an
    /// error: such a grammar is simply never equal to a non-empty one.
    pub fn is_empty_language(&self) -> bool {
        !self.accepts_epsilon && self.terminal.is_empty()
    }

    pub fn num_rules(&self) -> usize {
        self.binary.len() + self.terminal.len()
    }
}

/// Converts to CNF: drop useless symbols, eliminate ε-rules (recording
/// whether ε was derivable), eliminate unit rules, drop symbols made useless,
/// then binarize long rules and move terminals into rules of their own.
pub fn to_cnf(g: &Cfg) -> CnfGrammar {
    let mut names: Vec<String> = g.nonterminals().to_vec();
    let start = g.start();
    let rules: Vec<(usize, Vec<Sym>)> = g.rules().iter().map(|r| (r.lhs, r.rhs.clone())).collect();

    let rules = prune(rules, names.len(), start);
    let nullable = nullable_set(&rules, names.len());
    let accepts_epsilon = nullable[start];
    let rules = eliminate_epsilon(rules, &nullable);
    let rules = eliminate_units(rules, names.len());
    let rules = prune(rules, names.len(), start);

    let mut binary = Vec::new();
    let mut terminal = Vec::new();
    let mut wrappers: HashMap<char, usize> = HashMap::new();
    let mut chains: HashMap<Vec<Sym>, usize> = HashMap::new();
    for (lhs, rhs) in rules {
        match rhs.as_slice() {
            [Sym::Terminal(c)] => terminal.push((lhs, *c)),
            [Sym::Nonterminal(_)] | [] => unreachable!("unit and ε rules were eliminated"),
            _ => {
                let ids: Vec<usize> = rhs
                    .iter()
                    .map(|s| match *s {
                        Sym::Nonterminal(x) => x,
                        Sym::Terminal(c) => *wrappers.entry(c).or_insert_with(|| {
                            names.push(format!("<{c}>"));
                            terminal.push((names.len() - 1, c));
                            names.len() - 1
                        }),
                    })
                    .collect();
                // A -> X1 X2 ... Xm  becomes  A -> X1 <X2..Xm>, <X2..Xm> -> X2 <X3..Xm>, ...
                // Shared suffixes get one nonterminal.
                let mut right = ids[ids.len() - 1];
                for i in (1..ids.len() - 1).rev() {
                    let suffix = rhs[i..].to_vec();
                    right = match chains.get(&suffix) {
                        Some(&x) => x,
                        None => {
                            let x = names.len();
                            names.push(format!("<{}>", g.rhs_to_string(&suffix)));
                            binary.push((x, ids[i], right));
                            chains.insert(suffix, x);
                            x
                        }
                    };
                }
                binary.push((lhs, ids[0], right));
            }
        }
    }
    binary.sort_unstable();
    binary.dedup();
    terminal.sort_unstable();
    terminal.dedup();

    let n = names.len();
    let mut by_left = vec![Vec::new(); n];
    for &(a, b, c) in &binary {
        by_left[b].push((c, a));
    }
    let mut by_symbol = vec![Vec::new(); g.alphabet().len()];
    for &(a, c) in &terminal {
        by_symbol[g.alphabet().index_of(c).expect("validated terminal")].push(a);
    }
    CnfGrammar {
        alphabet: g.alphabet().clone(),
        names,
        binary,
        terminal,
        start,
        accepts_epsilon,
        by_left,
        by_symbol,
    }
}

/// Keeps only rules whose symbols are all productive and reachable from
/// `start`.
pub(crate) fn prune(rules: Vec<(usize, Vec<Sym>)>, n: usize, start: usize) -> Vec<(usize, Vec<Sym>)> {
    let mut productive = vec![false; n];
    let mut changed = true;
    while changed {
        changed = false;
        for (lhs, rhs) in &rules {
            if !productive[*lhs]
                && rhs.iter().all(|s| match *s {
                    Sym::Terminal(_) => true,
                    Sym::Nonterminal(x) => productive[x],
                })
            {
                productive[*lhs] = true;
                changed = true;
            }
        }
    }
    let rules: Vec<_> = rules
        .into_iter()
        .filter(|(lhs, rhs)| {
            productive[*lhs]
                && rhs
                    .iter()
                    .all(|s| !matches!(*s, Sym::Nonterminal(x) if !productive[x]))
        })
        .collect();

    let mut by_lhs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, (lhs, _)) in rules.iter().enumerate() {
        by_lhs[*lhs].push(i);
    }
    let mut reachable = vec![false; n];
    reachable[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &i in &by_lhs[x] {
            for s in &rules[i].1 {
                if let Sym::Nonterminal(y) = *s {
                    if !reachable[y] {
                        reachable[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    rules.into_iter().filter(|(lhs, _)| reachable[*lhs]).collect()
}

pub(crate) fn nullable_set(rules: &[(usize, Vec<Sym>)], n: usize) -> Vec<bool> {
    let mut nullable = vec![false; n];
    let mut changed = true;
    while changed {
        changed = false;
        for (lhs, rhs) in rules {
            if !nullable[*lhs] && rhs.iter().all(|s| matches!(*s, Sym::Nonterminal(x) if nullable[x])) {
                nullable[*lhs] = true;
                changed = true;
            }
        }
    }
    nullable
}

fn eliminate_epsilon(rules: Vec<(usize, Vec<Sym>)>, nullable: &[bool]) -> Vec<(usize, Vec<Sym>)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (lhs, rhs) in rules {
        let optional: Vec<usize> = rhs
            .iter()
            .enumerate()
            .filter(|(_, s)| matches!(**s, Sym::Nonterminal(x) if nullable[x]))
            .map(|(i, _)| i)
            .collect();
        // each subset of the nullable occurrences may be dropped
        for mask in 0u64..(1u64 << optional.len()) {
            let variant: Vec<Sym> = rhs
                .iter()
                .enumerate()
                .filter(|(i, _)| match optional.iter().position(|o| o == i) {
                    Some(bit) => mask & (1 << bit) == 0,
                    None => true,
                })
                .map(|(_, s)| *s)
                .collect();
            if !variant.is_empty() && seen.insert((lhs, variant.clone())) {
                out.push((lhs, variant));
            }
        }
    }
    out
}

fn eliminate_units(rules: Vec<(usize, Vec<Sym>)>, n: usize) -> Vec<(usize, Vec<Sym>)> {
    let mut unit_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut proper: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, (lhs, rhs)) in rules.iter().enumerate() {
        match rhs.as_slice() {
            [Sym::Nonterminal(x)] => unit_edges[*lhs].push(*x),
            _ => proper[*lhs].push(i),
        }
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in 0..n {
        // everything a derives through unit rules alone, a included
        let mut reach = vec![false; n];
        reach[a] = true;
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for &y in &unit_edges[x] {
                if !reach[y] {
                    reach[y] = true;
                    stack.push(y);
                }
            }
        }
        for b in (0..n).filter(|&b| reach[b]) {
            for &i in &proper[b] {
                let rhs = &rules[i].1;
                if seen.insert((a, rhs.clone())) {
                    out.push((a, rhs.clone()));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::cyk_member;
    use crate::model::parse_cfg;

    fn ab() -> Alphabet {
        Alphabet::new("ab".chars()).unwrap()
    }

    #[test]
    fn anbn_with_epsilon() {
        let g = to_cnf(&parse_cfg("S -> aSb | _", &ab()).unwrap());
        assert!(g.accepts_epsilon());
        for w in ["", "ab", "aabb"] {
            assert!(cyk_member(&g, w), "{w}");
        }
        for w in ["a", "abab", "ba"] {
            assert!(!cyk_member(&g, w), "{w}");
        }
    }

    #[test]
    fn unit_chain_collapses() {
        let g = to_cnf(&parse_cfg("S -> A; A -> B; B -> a", &ab()).unwrap());
        assert_eq!(g.terminal_rules(), &[(0, 'a')]);
        assert!(g.binary_rules().is_empty());
        assert!(cyk_member(&g, "a"));
        assert!(!cyk_member(&g, "aa"));
        assert!(!cyk_member(&g, ""));
    }

    #[test]
    fn only_binary_and_terminal_rules() {
        let g = to_cnf(&parse_cfg("S -> aSbb | A | _\nA -> aAa | bB | B\nB -> A | ab", &ab()).unwrap());
        let n = g.num_nonterminals();
        for &(a, b, c) in g.binary_rules() {
            assert!(a < n && b < n && c < n);
        }
        for &(a, t) in g.terminal_rules() {
            assert!(a < n && ab().contains(t));
        }
    }

    #[test]
    fn empty_language_is_flagged() {
        let g = to_cnf(&parse_cfg("S -> aS", &ab()).unwrap());
        assert!(g.is_empty_language());
        assert!(!cyk_member(&g, ""));
        assert!(!cyk_member(&g, "a"));
        let eps = to_cnf(&parse_cfg("S -> _", &ab()).unwrap());
        assert!(!eps.is_empty_language());
        assert!(cyk_member(&eps, ""));
    }
}
