use super::normal::{normalize_pda, NormalPda, StackOp};
use crate::error::EngineError;
use crate::grammar::prune;
use crate::model::{Cfg, GrammarSymbol, Pda, Rule};

/// Default limit on rules produced by [`pda_to_cfg`].
pub const DEFAULT_GRAMMAR_CAP: usize = 200_000;

/// Converts a PDA into a grammar for the same language, refusing to
/// produce more than `cap` rules before pruning.
///
/// Works on the [`NormalPda`] form. The nonterminal for a state pair
/// `(p, q)` derives exactly the inputs that take the machine from `p` to `q`
/// starting and ending with the same stack, never dipping below it. Such a
/// run either splits at a state where the stack is back to its starting
/// height, or opens with a push that the final pop undoes.
pub fn pda_to_cfg(pda: &Pda, cap: usize) -> Result<Cfg, EngineError> {
    normal_to_cfg(&normalize_pda(pda), cap)
}

pub fn normal_to_cfg(m: &NormalPda, cap: usize) -> Result<Cfg, EngineError> {
    let n = m.num_states();
    let pushes: Vec<_> = m.moves().iter().filter(|t| matches!(t.op, StackOp::Push(_))).collect();
    let pops: Vec<_> = m.moves().iter().filter(|t| matches!(t.op, StackOp::Pop(_))).collect();
    let matched = pushes
        .iter()
        .map(|u| pops.iter().filter(|o| symbol(u.op) == symbol(o.op)).count())
        .sum::<usize>();
    let total = n.saturating_mul(n).saturating_mul(n).saturating_add(n).saturating_add(matched);
    if total > cap {
        return Err(EngineError::GrammarBlowup { cap });
    }

    let id = |p: usize, q: usize| p * n + q;
    let nt = |p: usize, q: usize| GrammarSymbol::Nonterminal(id(p, q));
    let mut rules: Vec<(usize, Vec<GrammarSymbol>)> = Vec::with_capacity(total);
    for p in 0..n {
        rules.push((id(p, p), Vec::new()));
    }
    for u in &pushes {
        for o in pops.iter().filter(|o| symbol(u.op) == symbol(o.op)) {
            let mut rhs = Vec::with_capacity(3);
            rhs.extend(u.read.map(GrammarSymbol::Terminal));
            rhs.push(nt(u.to, o.from));
            rhs.extend(o.read.map(GrammarSymbol::Terminal));
            rules.push((id(u.from, o.to), rhs));
        }
    }
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                rules.push((id(p, q), vec![nt(p, r), nt(r, q)]));
            }
        }
    }

    let start = id(m.start(), m.accept());
    let kept = prune(rules, n * n, start);

    // renumber the surviving nonterminals, start first
    let mut index = vec![usize::MAX; n * n];
    let mut names = Vec::new();
    let mut name_of = |x: usize, index: &mut Vec<usize>| {
        if index[x] == usize::MAX {
            index[x] = names.len();
            let (p, q) = (x / n, x % n);
            names.push(format!("[{},{}]", m.state_names()[p], m.state_names()[q]));
        }
        index[x]
    };
    name_of(start, &mut index);
    let mut out = Vec::with_capacity(kept.len());
    for (lhs, rhs) in kept {
        let lhs = name_of(lhs, &mut index);
        let rhs = rhs
            .into_iter()
            .map(|s| match s {
                GrammarSymbol::Nonterminal(x) => GrammarSymbol::Nonterminal(name_of(x, &mut index)),
                t => t,
            })
            .collect();
        out.push(Rule { lhs, rhs });
    }
    if out.is_empty() {
        // the machine accepts nothing; S -> S generates nothing either
        out.push(Rule {
            lhs: 0,
            rhs: vec![GrammarSymbol::Nonterminal(0)],
        });
    }
    Ok(Cfg::new(m.alphabet().clone(), names, out, 0).expect("construction yields a valid grammar"))
}

fn symbol(op: StackOp) -> char {
    match op {
        StackOp::Push(x) | StackOp::Pop(x) => x,
    }
}
