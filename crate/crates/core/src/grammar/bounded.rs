use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::cyk::Chart;
use super::{to_cnf, CnfGrammar};
use crate::error::EngineError;
use crate::model::Cfg;
use crate::par;

/// Default maximum string length for bounded comparisons.
pub const DEFAULT_BOUND: usize = 15;
/// Default limit on the number of strings a bounded comparison may test.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 21;

// Work is split by prefixes of this many strings or more.
const MIN_PARTITIONS: u128 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundedOptions {
    /// Longest string length tested.
    pub bound: usize,
    /// Refuse comparisons that would test more strings than this.
    pub cap: u64,
    /// Use the thread pool when the `parallel` feature is compiled in.
    pub parallel: bool,
}

impl Default for BoundedOptions {
    fn default() -> Self {
        BoundedOptions {
            bound: DEFAULT_BOUND,
            cap: DEFAULT_ENUMERATION_CAP,
            parallel: true,
        }
    }
}

impl BoundedOptions {
    pub fn with_bound(bound: usize) -> Self {
        BoundedOptions {
            bound,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundedOutcome {
    /// No difference among strings of length at most this bound.
    AgreesUpTo(usize),
    /// Shortest, then lexicographically least, string in exactly one
    /// language; `in_first` tells which.
    Differs { witness: String, in_first: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundedVerdict {
    pub outcome: BoundedOutcome,
    pub bound: usize,
}

impl BoundedVerdict {
    pub fn agrees(&self) -> bool {
        matches!(self.outcome, BoundedOutcome::AgreesUpTo(_))
    }
}

/// Everything learned from one enumeration of `Σ^{<=k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedComparison {
    pub verdict: BoundedVerdict,
    pub strings: u64,
    pub in_both: u64,
    pub in_either: u64,
}

impl BoundedComparison {
    /// `|A ∩ B| / |A ∪ B|` over the bounded languages; 1 when both are empty.
    pub fn jaccard(&self) -> Ratio<u64> {
        if self.in_either == 0 {
            Ratio::from_integer(1)
        } else {
            Ratio::new(self.in_both, self.in_either)
        }
    }
}

#[derive(Default)]
struct Tally {
    // first differing string of each length, with whether the first grammar has it
    first_diff: Vec<Option<(Vec<usize>, bool)>>,
    strings: u64,
    in_both: u64,
    in_either: u64,
}

struct Walker<'g> {
    first: Chart<'g>,
    second: Chart<'g>,
    // symbol index in the first grammar's alphabet -> index in the second's
    to_second: &'g [usize],
    word: Vec<usize>,
    tally: Tally,
}

impl<'g> Walker<'g> {
    fn push(&mut self, i: usize) {
        self.first.push(i);
        self.second.push(self.to_second[i]);
        self.word.push(i);
    }

    fn pop(&mut self) {
        self.first.pop();
        self.second.pop();
        self.word.pop();
    }

    fn record(&mut self) {
        let (x, y) = (self.first.accepts(), self.second.accepts());
        let t = &mut self.tally;
        t.strings += 1;
        t.in_both += u64::from(x && y);
        t.in_either += u64::from(x || y);
        let slot = &mut t.first_diff[self.word.len()];
        if x != y && slot.is_none() {
            *slot = Some((self.word.clone(), x));
        }
    }

    /// Records the current string and every extension of it with length in
    /// `min_len..=max_len`, depth first in alphabet order.
    fn walk(&mut self, symbols: usize, min_len: usize, max_len: usize) {
        if self.word.len() >= min_len {
            self.record();
        }
        if self.word.len() >= max_len || symbols == 0 {
            return;
        }
        let mut next = vec![0usize];
        while let Some(top) = next.last_mut() {
            if *top == symbols {
                next.pop();
                if !next.is_empty() {
                    self.pop();
                }
                continue;
            }
            let i = *top;
            *top += 1;
            self.push(i);
            if self.word.len() >= min_len {
                self.record();
            }
            if self.word.len() < max_len {
                next.push(0);
            } else {
                self.pop();
            }
        }
    }
}

fn count_strings(symbols: usize, bound: usize) -> u128 {
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=bound {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(symbols as u128);
    }
    total
}

/// Compares two CNF grammars on every string of length at most
/// `opts.bound`. The first grammar's alphabet order decides the witness.
pub fn compare_bounded(
    a: &CnfGrammar,
    b: &CnfGrammar,
    opts: &BoundedOptions,
) -> Result<BoundedComparison, EngineError> {
    if !a.alphabet().same_set(b.alphabet()) {
        return Err(EngineError::AlphabetMismatch {
            left: a.alphabet().symbols().to_vec(),
            right: b.alphabet().symbols().to_vec(),
        });
    }
    let k = a.alphabet().len();
    let total = count_strings(k, opts.bound);
    if total > u128::from(opts.cap) {
        return Err(EngineError::EnumerationCapExceeded {
            strings: total,
            cap: opts.cap,
        });
    }
    let to_second: Vec<usize> = a
        .alphabet()
        .symbols()
        .iter()
        .map(|&c| b.alphabet().index_of(c).expect("same symbol set"))
        .collect();

    let mut split = 0;
    while split < opts.bound && (k as u128).pow(split as u32) < MIN_PARTITIONS {
        split += 1;
    }
    let mut prefixes: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..split {
        prefixes = prefixes
            .iter()
            .flat_map(|p| {
                (0..k).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }

    let run = |prefix: &[usize], min_len: usize, max_len: usize| {
        let mut walker = Walker {
            first: Chart::new(a),
            second: Chart::new(b),
            to_second: &to_second,
            word: Vec::with_capacity(max_len),
            tally: Tally {
                first_diff: vec![None; opts.bound + 1],
                ..Tally::default()
            },
        };
        for &i in prefix {
            walker.push(i);
        }
        walker.walk(k, min_len, max_len);
        walker.tally
    };

    // strings shorter than the split, then one task per prefix in lex order
    let mut parts = Vec::with_capacity(prefixes.len() + 1);
    if split > 0 {
        parts.push(run(&[], 0, split - 1));
    }
    parts.extend(par::map_ordered(&prefixes, opts.parallel, |p| {
        run(p, split, opts.bound)
    }));

    let mut strings = 0;
    let mut in_both = 0;
    let mut in_either = 0;
    let mut first_diff: Option<(Vec<usize>, bool)> = None;
    for len in 0..=opts.bound {
        if let Some(found) = parts.iter().find_map(|t| t.first_diff[len].clone()) {
            first_diff = Some(found);
            break;
        }
    }
    for t in &parts {
        strings += t.strings;
        in_both += t.in_both;
        in_either += t.in_either;
    }
    let outcome = match first_diff {
        None => BoundedOutcome::AgreesUpTo(opts.bound),
        Some((word, in_first)) => BoundedOutcome::Differs {
            witness: word.iter().map(|&i| a.alphabet().symbols()[i]).collect(),
            in_first,
        },
    };
    Ok(BoundedComparison {
        verdict: BoundedVerdict {
            outcome,
            bound: opts.bound,
        },
        strings,
        in_both,
        in_either,
    })
}

/// Bounded language comparison of two grammars with default options and
/// bound `k`.
pub fn bounded_diff(a: &Cfg, b: &Cfg, k: usize) -> Result<BoundedVerdict, EngineError> {
    bounded_diff_with(a, b, &BoundedOptions::with_bound(k))
}

pub fn bounded_diff_with(a: &Cfg, b: &Cfg, opts: &BoundedOptions) -> Result<BoundedVerdict, EngineError> {
    Ok(compare_bounded(&to_cnf(a), &to_cnf(b), opts)?.verdict)
}

/// Jaccard similarity of the two languages restricted to strings of length
/// at most `k`.
pub fn bounded_jaccard(a: &Cfg, b: &Cfg, k: usize) -> Result<Ratio<u64>, EngineError> {
    Ok(compare_bounded(&to_cnf(a), &to_cnf(b), &BoundedOptions::with_bound(k))?.jaccard())
}
