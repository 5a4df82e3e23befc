//! Pushdown automata: conversion to grammars for bounded comparison, and a
//! direct simulator used as an independent check.

mod normal;
mod simulate;
mod triple;

pub use self::normal::{normalize_pda, NormalMove, NormalPda, StackOp, FLOOR};
pub use self::simulate::{default_stack_limit, simulate_member, simulate_normal, DEFAULT_MAX_CONFIGS};
pub use self::triple::{normal_to_cfg, pda_to_cfg, DEFAULT_GRAMMAR_CAP};

use crate::error::EngineError;
use crate::grammar::{compare_bounded, to_cnf, BoundedOptions, BoundedVerdict, CnfGrammar};
use crate::model::Pda;

/// CNF grammar for the language of a PDA.
pub fn pda_to_cnf(pda: &Pda) -> Result<CnfGrammar, EngineError> {
    Ok(to_cnf(&pda_to_cfg(pda, DEFAULT_GRAMMAR_CAP)?))
}

/// Bounded comparison of two PDAs through their grammars.
pub fn pda_bounded_diff(a: &Pda, b: &Pda, opts: &BoundedOptions) -> Result<BoundedVerdict, EngineError> {
    Ok(compare_bounded(&pda_to_cnf(a)?, &pda_to_cnf(b)?, opts)?.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::BoundedOutcome;
    use crate::homework;
    use crate::model::{parse_pda, Model};

    #[test]
    fn q5_against_at_least_as_many() {
        let Model::Pda(reference) = homework::q5_pda() else { unreachable!() };
        // same machine that may also accept on Z, i.e. #a >= #b
        let text = homework::Q5_PDA.replace(
            r#"{"from":"count","read":null,"pop":"A","push":"A","to":"done"}"#,
            r#"{"from":"count","read":null,"pop":"A","push":"A","to":"done"},
            {"from":"count","read":null,"pop":"Z","push":"Z","to":"done"}"#,
        );
        let sloppy = parse_pda(&text).unwrap();
        let v = pda_bounded_diff(&reference, &sloppy, &BoundedOptions::with_bound(8)).unwrap();
        assert_eq!(
            v.outcome,
            BoundedOutcome::Differs {
                witness: String::new(),
                in_first: false
            }
        );
    }
}
