//! Exact equivalence for regular models.
//!
//! Every regular model is reduced to a minimal complete [`Dfa`]; two DFAs are
//! compared by breadth-first search of their product ([`product_witness`]) or
//! by union-find merging ([`hk_equivalent`]). Both return the same canonical
//! witness: shortest first, then lexicographically least in alphabet order.

mod dfa;
mod equiv;
mod minimize;
mod subset;
mod thompson;

pub use self::dfa::Dfa;
pub use self::equiv::{hk_equivalent, product_witness};
pub use self::subset::{determinize, determinize_with_cap, epsilon_closure, DEFAULT_SUBSET_CAP};
pub use self::thompson::compile_regex;

use crate::error::EngineError;
use crate::model::{FaKind, Model};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EquivalenceResult {
    Equivalent,
    /// `in_first` is true when the witness belongs to the first language
    /// and not the second.
    Differs { witness: String, in_first: bool },
}

impl EquivalenceResult {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceResult::Equivalent)
    }

    /// The result of the same comparison with the arguments swapped.
    pub fn flipped(self) -> Self {
        match self {
            EquivalenceResult::Equivalent => EquivalenceResult::Equivalent,
            EquivalenceResult::Differs { witness, in_first } => EquivalenceResult::Differs {
                witness,
                in_first: !in_first,
            },
        }
    }
}

/// Minimal complete DFA for a DFA, NFA or regex model.
pub fn to_minimal_dfa(model: &Model) -> Result<Dfa, EngineError> {
    let dfa = match model {
        Model::Fa(fa) if fa.kind() == FaKind::Dfa => Dfa::from_automaton(fa)?,
        Model::Fa(fa) => determinize(fa)?,
        Model::Regex(r) => determinize(&compile_regex(r.ast(), r.alphabet()))?,
        other => return Err(EngineError::UnsupportedModel(other.model_type())),
    };
    Ok(dfa.minimize())
}

/// Exact language comparison of two regular models. `in_first` in a
/// difference refers to `reference`; witnesses follow the reference's
/// alphabet order.
pub fn check_regular(reference: &Model, submission: &Model) -> Result<EquivalenceResult, EngineError> {
    let a = to_minimal_dfa(reference)?;
    let b = to_minimal_dfa(submission)?;
    product_witness(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homework;
    use crate::model::{Alphabet, Regex};

    fn ab() -> Alphabet {
        Alphabet::new("ab".chars()).unwrap()
    }

    fn regex(text: &str) -> Model {
        Model::Regex(Regex::parse(text, &ab()).unwrap())
    }

    // every word over `symbols` of length <= max, in length-lex order
    fn words(symbols: &[char], max: usize) -> Vec<String> {
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

    fn count_b(min: usize) -> Dfa {
        // states count b's up to `min`
        let n = min + 1;
        let mut delta = Vec::new();
        for q in 0..n {
            delta.push(q);
            delta.push((q + 1).min(min));
        }
        let accepting = (0..n).map(|q| q == min).collect();
        Dfa::new(ab(), delta, accepting, 0)
    }

    #[test]
    fn identical_machines_are_equivalent() {
        let d = count_b(1);
        assert_eq!(product_witness(&d, &d).unwrap(), EquivalenceResult::Equivalent);
        assert_eq!(hk_equivalent(&d, &d).unwrap(), EquivalenceResult::Equivalent);
    }

    #[test]
    fn at_least_one_vs_two_bs() {
        // enumeration over length <= 1: "" in neither, "a" in neither, "b" only in first
        let first = words(&['a', 'b'], 1)
            .into_iter()
            .find(|w| (w.matches('b').count() >= 1) != (w.matches('b').count() >= 2))
            .unwrap();
        assert_eq!(first, "b");
        let expected = EquivalenceResult::Differs {
            witness: "b".into(),
            in_first: true,
        };
        assert_eq!(product_witness(&count_b(1), &count_b(2)).unwrap(), expected);
        assert_eq!(hk_equivalent(&count_b(1), &count_b(2)).unwrap(), expected);
    }

    #[test]
    fn q1_reference_vs_no_bb() {
        let reference = to_minimal_dfa(&homework::q1_dfa()).unwrap();
        // no bb: states last-was-not-b, last-was-b, dead
        let no_bb = Dfa::new(ab(), vec![0, 1, 0, 2, 2, 2], vec![true, true, false], 0);
        let q1 = |w: &str| w.matches('b').count() >= 2 && !w.contains("bb");
        let oracle = words(&['a', 'b'], 2)
            .into_iter()
            .find(|w| q1(w) != !w.contains("bb"))
            .unwrap();
        assert_eq!(oracle, "");
        let expected = EquivalenceResult::Differs {
            witness: String::new(),
            in_first: false,
        };
        assert_eq!(product_witness(&reference, &no_bb).unwrap(), expected);
        assert_eq!(hk_equivalent(&reference, &no_bb).unwrap(), expected);
    }

    #[test]
    fn regex_missing_only_epsilon() {
        let result = check_regular(&regex("a*+b*+(a+b)*"), &regex("(a+b)(a+b)*")).unwrap();
        assert_eq!(
            result,
            EquivalenceResult::Differs {
                witness: String::new(),
                in_first: true
            }
        );
    }

    #[test]
    fn all_strings_vs_a_star_b_star() {
        let all = |_: &str| true;
        let a_then_b = |w: &str| !w.contains("ba");
        let oracle = words(&['a', 'b'], 2)
            .into_iter()
            .find(|w| all(w) != a_then_b(w))
            .unwrap();
        assert_eq!(oracle, "ba");
        let result = check_regular(&regex("(a+b)*"), &regex("a*b*")).unwrap();
        assert_eq!(
            result,
            EquivalenceResult::Differs {
                witness: oracle,
                in_first: true
            }
        );
    }

    #[test]
    fn q2_nfa_vs_its_determinization() {
        let nfa = homework::q2_nfa();
        let Model::Fa(fa) = &nfa else { unreachable!() };
        let dfa = Model::Fa(determinize(fa).unwrap().to_automaton());
        assert_eq!(check_regular(&nfa, &dfa).unwrap(), EquivalenceResult::Equivalent);
    }

    #[test]
    fn q2_determinization_membership() {
        let Model::Fa(fa) = homework::q2_nfa() else { unreachable!() };
        let dfa = determinize(&fa).unwrap();
        for w in ["aba", "abab", "aaba", "ababa"] {
            assert!(dfa.accepts(w), "{w}");
        }
        for w in ["ab", "bb", "ba"] {
            assert!(!dfa.accepts(w), "{w}");
        }
    }

    #[test]
    fn non_regular_models_are_rejected() {
        let g = crate::model::parse_cfg("S -> a", &ab()).unwrap();
        assert!(matches!(
            check_regular(&Model::Cfg(g), &regex("a")),
            Err(EngineError::UnsupportedModel(_))
        ));
    }

    #[test]
    fn alphabet_mismatch() {
        let other = Alphabet::new("ac".chars()).unwrap();
        let r = Model::Regex(Regex::parse("a", &other).unwrap());
        assert!(matches!(
            check_regular(&regex("a"), &r),
            Err(EngineError::AlphabetMismatch { .. })
        ));
    }
}
