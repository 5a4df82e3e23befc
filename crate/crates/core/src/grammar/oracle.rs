use std::collections::HashSet;

use crate::error::EngineError;
use crate::model::{Cfg, GrammarSymbol};

/// Default expansion budget for [`derivation_oracle`].
pub const DEFAULT_ORACLE_STEPS: usize = 2_000_000;

/// Decides membership by searching leftmost derivations directly on the
/// grammar, with no normal-form conversion. It is slow and meant to
/// cross-check [`cyk_member`](super::cyk_member).
///
/// A nullable nonterminal may be dropped when the rule that introduces it
/// is applied, instead of being derived to ε later. Every symbol left in a
/// sentential form then yields at least one terminal, so forms never grow
/// past the unread part of `w` and the search space is finite. Forms are
/// also pruned when their terminals cannot match `w`. Fails with
/// `SearchCapExceeded` after `max_steps` expansions instead of guessing.
pub fn derivation_oracle(g: &Cfg, w: &str, max_steps: usize) -> Result<bool, EngineError> {
    let word: Vec<char> = w.chars().collect();
    if word.iter().any(|&c| !g.alphabet().contains(c)) {
        return Ok(false);
    }
    let min_yield = min_yields(g);
    if word.is_empty() {
        return Ok(min_yield[g.start()] == 0);
    }
    let nullable = |s: &GrammarSymbol| matches!(*s, GrammarSymbol::Nonterminal(x) if min_yield[x] == 0);

    // every way to drop nullable occurrences, keeping at least one symbol
    let mut by_lhs: Vec<Vec<Vec<GrammarSymbol>>> = vec![Vec::new(); g.nonterminals().len()];
    for r in g.rules() {
        let optional: Vec<usize> = (0..r.rhs.len()).filter(|&i| nullable(&r.rhs[i])).collect();
        for mask in 0u32..(1 << optional.len()) {
            let variant: Vec<GrammarSymbol> = r
                .rhs
                .iter()
                .enumerate()
                .filter(|(i, _)| {
                    optional
                        .iter()
                        .position(|o| o == i)
                        .is_none_or(|bit| mask & (1 << bit) == 0)
                })
                .map(|(_, s)| *s)
                .collect();
            if !variant.is_empty() && !by_lhs[r.lhs].contains(&variant) {
                by_lhs[r.lhs].push(variant);
            }
        }
    }

    let fits = |pos: usize, form: &[GrammarSymbol]| -> bool {
        let mut need = 0usize;
        for s in form {
            need = need.saturating_add(match *s {
                GrammarSymbol::Terminal(_) => 1,
                GrammarSymbol::Nonterminal(x) => min_yield[x].max(1),
            });
        }
        if need > word.len() - pos {
            return false;
        }
        // terminals at the far end must match the end of w
        form.iter()
            .map_while(|s| match *s {
                GrammarSymbol::Terminal(c) => Some(c),
                GrammarSymbol::Nonterminal(_) => None,
            })
            .zip(word.iter().rev())
            .all(|(c, &d)| c == d)
    };

    // forms are stored reversed: the leftmost symbol is last
    let start = vec![GrammarSymbol::Nonterminal(g.start())];
    let mut seen: HashSet<(usize, Vec<GrammarSymbol>)> = HashSet::new();
    let mut stack = Vec::new();
    if fits(0, &start) {
        seen.insert((0, start.clone()));
        stack.push((0usize, start));
    }
    let mut steps = 0usize;
    while let Some((mut pos, mut form)) = stack.pop() {
        // consume matching terminals
        while let Some(&GrammarSymbol::Terminal(c)) = form.last() {
            if word.get(pos) != Some(&c) {
                break;
            }
            form.pop();
            pos += 1;
        }
        match form.last() {
            None if pos == word.len() => return Ok(true),
            Some(&GrammarSymbol::Nonterminal(x)) => {
                steps += 1;
                if steps > max_steps {
                    return Err(EngineError::SearchCapExceeded { cap: max_steps });
                }
                let rest_len = form.len() - 1;
                for rhs in &by_lhs[x] {
                    let mut next = Vec::with_capacity(rest_len + rhs.len());
                    next.extend_from_slice(&form[..rest_len]);
                    next.extend(rhs.iter().rev().copied());
                    if fits(pos, &next) && seen.insert((pos, next.clone())) {
                        stack.push((pos, next));
                    }
                }
            }
            _ => {}
        }
    }
    Ok(false)
}

// Length of the shortest terminal string each nonterminal derives;
// usize::MAX for unproductive ones.
fn min_yields(g: &Cfg) -> Vec<usize> {
    let mut best = vec![usize::MAX; g.nonterminals().len()];
    let mut changed = true;
    while changed {
        changed = false;
        for r in g.rules() {
            let mut len = 0usize;
            for s in &r.rhs {
                len = len.saturating_add(match *s {
                    GrammarSymbol::Terminal(_) => 1,
                    GrammarSymbol::Nonterminal(x) => best[x],
                });
            }
            if len < best[r.lhs] {
                best[r.lhs] = len;
                changed = true;
            }
        }
    }
    best
}
