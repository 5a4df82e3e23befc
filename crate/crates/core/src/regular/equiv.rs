use std::borrow::Cow;
use std::collections::{HashSet, VecDeque};

use super::{Dfa, EquivalenceResult};
use crate::error::EngineError;

// Both machines over the same symbol order, the first one's.
fn aligned<'a>(a: &Dfa, b: &'a Dfa) -> Result<Cow<'a, Dfa>, EngineError> {
    if a.alphabet() == b.alphabet() {
        return Ok(Cow::Borrowed(b));
    }
    b.reordered(a.alphabet())
        .map(Cow::Owned)
        .ok_or_else(|| EngineError::AlphabetMismatch {
            left: a.alphabet().symbols().to_vec(),
            right: b.alphabet().symbols().to_vec(),
        })
}

/// Breadth-first search of the product automaton. Successors are expanded in
/// alphabet order and acceptance is tested when a pair is dequeued, so the
/// first hit is the shortest separating word and, among those, the
/// lexicographically least. `max_len` limits the depth.
pub(crate) fn product_search(a: &Dfa, b: &Dfa, max_len: Option<usize>) -> Option<(String, bool)> {
    struct Node {
        pair: (usize, usize),
        parent: usize,
        symbol: usize,
        depth: usize,
    }
    let k = a.alphabet().len();
    let root = (a.start(), b.start());
    let mut nodes = vec![Node {
        pair: root,
        parent: usize::MAX,
        symbol: 0,
        depth: 0,
    }];
    let mut seen: HashSet<(usize, usize)> = HashSet::from([root]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let (p, q) = nodes[id].pair;
        if a.is_accepting(p) != b.is_accepting(q) {
            let mut symbols = Vec::with_capacity(nodes[id].depth);
            let mut cur = id;
            while nodes[cur].parent != usize::MAX {
                symbols.push(a.alphabet().symbols()[nodes[cur].symbol]);
                cur = nodes[cur].parent;
            }
            symbols.reverse();
            return Some((symbols.into_iter().collect(), a.is_accepting(p)));
        }
        if max_len.is_some_and(|m| nodes[id].depth >= m) {
            continue;
        }
        for c in 0..k {
            let pair = (a.next(p, c), b.next(q, c));
            if seen.insert(pair) {
                nodes.push(Node {
                    pair,
                    parent: id,
                    symbol: c,
                    depth: nodes[id].depth + 1,
                });
                queue.push_back(nodes.len() - 1);
            }
        }
    }
    None
}

/// Language equality by product-automaton search. A difference comes with
/// the shortest, then lexicographically least (first machine's alphabet
/// order), separating word; `in_first` tells whether `a` accepts it.
pub fn product_witness(a: &Dfa, b: &Dfa) -> Result<EquivalenceResult, EngineError> {
    let b = aligned(a, b)?;
    Ok(match product_search(a, &b, None) {
        None => EquivalenceResult::Equivalent,
        Some((witness, in_first)) => EquivalenceResult::Differs { witness, in_first },
    })
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let (x, y) = (self.find(x), self.find(y));
        if x == y {
            return;
        }
        match self.rank[x].cmp(&self.rank[y]) {
            std::cmp::Ordering::Less => self.parent[x] = y,
            std::cmp::Ordering::Greater => self.parent[y] = x,
            std::cmp::Ordering::Equal => {
                self.parent[y] = x;
                self.rank[x] += 1;
            }
        }
    }
}

/// Near-linear equivalence check: merges state pairs that must be
/// equivalent with union-find and stops at the first merge of an accepting
/// with a rejecting state. The word that forced that merge separates the
/// languages; a product search bounded by its length then canonicalizes it,
/// so the result is always identical to [`product_witness`].
pub fn hk_equivalent(a: &Dfa, b: &Dfa) -> Result<EquivalenceResult, EngineError> {
    let b = aligned(a, b)?;
    let offset = a.num_states();
    let k = a.alphabet().len();
    let mut classes = UnionFind::new(offset + b.num_states());

    let separating: Option<Vec<usize>> = 'search: {
        let (sa, sb) = (a.start(), b.start());
        if a.is_accepting(sa) != b.is_accepting(sb) {
            break 'search Some(Vec::new());
        }
        classes.union(sa, offset + sb);
        // (state of a, state of b, word leading to both)
        let mut pending = VecDeque::from([(sa, sb, Vec::new())]);
        while let Some((p, q, word)) = pending.pop_front() {
            for c in 0..k {
                let (p2, q2) = (a.next(p, c), b.next(q, c));
                if classes.find(p2) == classes.find(offset + q2) {
                    continue;
                }
                let mut next = word.clone();
                next.push(c);
                if a.is_accepting(p2) != b.is_accepting(q2) {
                    break 'search Some(next);
                }
                classes.union(p2, offset + q2);
                pending.push_back((p2, q2, next));
            }
        }
        None
    };

    Ok(match separating {
        None => EquivalenceResult::Equivalent,
        Some(word) => {
            debug_assert_ne!(
                a.is_accepting(word.iter().fold(a.start(), |s, &c| a.next(s, c))),
                b.is_accepting(word.iter().fold(b.start(), |s, &c| b.next(s, c))),
            );
            let (witness, in_first) =
                product_search(a, &b, Some(word.len())).expect("a separating word of this length exists");
            EquivalenceResult::Differs { witness, in_first }
        }
    })
}
