mod common;

use std::collections::{BTreeSet, HashSet};

use common::{ab, disguised, random_dfa, rng, words};
use david_core::homework::{self, predicates};
use david_core::model::{FaKind, FaTransition, FiniteAutomaton, Model, Regex, RegexAst};
use david_core::regular::{
    check_regular, compile_regex, determinize, hk_equivalent, product_witness, to_minimal_dfa, Dfa,
};
use david_core::EquivalenceResult;
use rand::Rng;

fn accepts(d: &Dfa, w: &str) -> bool {
    d.accepts(w)
}

/// Brute-force check that `w` separates and nothing before it in
/// length-lex order does.
fn assert_minimal_witness(a: &Dfa, b: &Dfa, w: &str, in_first: bool) {
    assert_ne!(accepts(a, w), accepts(b, w), "{w:?} does not separate");
    assert_eq!(accepts(a, w), in_first);
    for shorter in words(&['a', 'b'], w.len()) {
        if shorter == w {
            break;
        }
        assert_eq!(accepts(a, &shorter), accepts(b, &shorter), "{shorter:?} separates before {w:?}");
    }
}

#[test]
fn hk_matches_product_on_random_pairs() {
    let mut rng = rng(7);
    let mut differing = 0;
    for trial in 0..1000 {
        let a = random_dfa(&mut rng, 50);
        let b = if trial % 2 == 0 {
            disguised(&mut rng, &a)
        } else {
            random_dfa(&mut rng, 50)
        };
        let product = product_witness(&a, &b).unwrap();
        assert_eq!(hk_equivalent(&a, &b).unwrap(), product, "trial {trial}");
        if trial % 2 == 0 {
            assert_eq!(product, EquivalenceResult::Equivalent, "trial {trial}");
        }
        if let EquivalenceResult::Differs { witness, in_first } = &product {
            differing += 1;
            if witness.len() <= 8 {
                assert_minimal_witness(&a, &b, witness, *in_first);
            }
        }
    }
    assert!(differing > 300, "random pairs should mostly differ, got {differing}");
}

#[test]
fn separation_is_symmetric() {
    let mut rng = rng(11);
    for _ in 0..200 {
        let a = random_dfa(&mut rng, 12);
        let b = random_dfa(&mut rng, 12);
        assert_eq!(product_witness(&b, &a).unwrap(), product_witness(&a, &b).unwrap().flipped());
    }
}

// Number of Myhill-Nerode classes among `prefixes`, telling classes apart
// with the given suffixes.
fn nerode_classes(member: impl Fn(&str) -> bool, prefixes: &[String], suffixes: &[String]) -> usize {
    let signatures: HashSet<Vec<bool>> = prefixes
        .iter()
        .map(|p| suffixes.iter().map(|s| member(&format!("{p}{s}"))).collect())
        .collect();
    signatures.len()
}

#[test]
fn minimize_matches_nerode_brute_force() {
    let mut rng = rng(3);
    let short = words(&['a', 'b'], 6);
    for _ in 0..200 {
        let d = random_dfa(&mut rng, 6);
        let m = d.minimize();
        assert_eq!(m.num_states(), nerode_classes(|w| d.accepts(w), &short, &short));
        assert_eq!(m.minimize().num_states(), m.num_states(), "idempotent");
        assert_eq!(product_witness(&d, &m).unwrap(), EquivalenceResult::Equivalent);
    }
}

#[test]
fn naive_q1_dfa_minimizes_to_nerode_count() {
    // states: (b's seen: 0, 1, 2+) x (last symbol was b), with the zero-b
    // and two-b-last-a states each split into two copies, plus a dead state
    let names = ["z0", "z0'", "one_b", "one_a", "two_b", "two_a", "two_a'", "dead"];
    let idx = |s: &str| names.iter().position(|n| *n == s).unwrap();
    let edges = [
        ("z0", 'a', "z0'"),
        ("z0", 'b', "one_b"),
        ("z0'", 'a', "z0"),
        ("z0'", 'b', "one_b"),
        ("one_b", 'a', "one_a"),
        ("one_b", 'b', "dead"),
        ("one_a", 'a', "one_a"),
        ("one_a", 'b', "two_b"),
        ("two_b", 'a', "two_a"),
        ("two_b", 'b', "dead"),
        ("two_a", 'a', "two_a'"),
        ("two_a", 'b', "two_b"),
        ("two_a'", 'a', "two_a"),
        ("two_a'", 'b', "two_b"),
        ("dead", 'a', "dead"),
        ("dead", 'b', "dead"),
    ];
    let fa = FiniteAutomaton::new(
        names.iter().map(|s| s.to_string()).collect(),
        ab(),
        edges
            .iter()
            .map(|&(f, c, t)| FaTransition {
                from: idx(f),
                read: Some(c),
                to: idx(t),
            })
            .collect(),
        0,
        BTreeSet::from([idx("two_b"), idx("two_a"), idx("two_a'")]),
        FaKind::Dfa,
    )
    .unwrap();
    let naive = Dfa::from_automaton(&fa).unwrap();
    assert_eq!(naive.num_states(), 8);
    let short = words(&['a', 'b'], 6);
    let expected = nerode_classes(predicates::q1, &short, &short);
    assert_eq!(expected, 6);
    assert_eq!(naive.minimize().num_states(), expected);
    let reference = to_minimal_dfa(&homework::q1_dfa()).unwrap();
    assert_eq!(reference.num_states(), expected);
    assert_eq!(product_witness(&naive, &reference).unwrap(), EquivalenceResult::Equivalent);
}

fn random_nfa(rng: &mut impl Rng, max_states: usize) -> FiniteAutomaton {
    let n = rng.gen_range(1..=max_states);
    let mut transitions = Vec::new();
    for from in 0..n {
        for read in [Some('a'), Some('b'), None] {
            for to in 0..n {
                let p = if read.is_none() { 0.1 } else { 0.25 };
                if rng.gen_bool(p) {
                    transitions.push(FaTransition { from, read, to });
                }
            }
        }
    }
    let accepting = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    FiniteAutomaton::new(
        (0..n).map(|i| format!("n{i}")).collect(),
        ab(),
        transitions,
        0,
        accepting,
        FaKind::Nfa,
    )
    .unwrap()
}

#[test]
fn determinize_preserves_membership() {
    let mut rng = rng(5);
    let all = words(&['a', 'b'], 8);
    for _ in 0..100 {
        let nfa = random_nfa(&mut rng, 8);
        let dfa = determinize(&nfa).unwrap();
        for w in &all {
            assert_eq!(nfa.accepts(w), dfa.accepts(w), "{w:?}");
        }
    }
}

// Set semantics of a regex restricted to strings of length <= max.
fn regex_language(r: &RegexAst, max: usize) -> HashSet<String> {
    match r {
        RegexAst::EmptySet => HashSet::new(),
        RegexAst::Epsilon => HashSet::from([String::new()]),
        RegexAst::Symbol(c) => HashSet::from([c.to_string()]),
        RegexAst::Union(l, r) => &regex_language(l, max) | &regex_language(r, max),
        RegexAst::Concat(l, r) => {
            let (l, r) = (regex_language(l, max), regex_language(r, max));
            let mut out = HashSet::new();
            for x in &l {
                for y in &r {
                    if x.len() + y.len() <= max {
                        out.insert(format!("{x}{y}"));
                    }
                }
            }
            out
        }
        RegexAst::Star(e) => {
            let inner = regex_language(e, max);
            let mut out = HashSet::from([String::new()]);
            let mut frontier = out.clone();
            while !frontier.is_empty() {
                let mut next = HashSet::new();
                for x in &frontier {
                    for y in &inner {
                        let w = format!("{x}{y}");
                        if w.len() <= max && !out.contains(&w) {
                            next.insert(w);
                        }
                    }
                }
                out.extend(next.iter().cloned());
                frontier = next;
            }
            out
        }
    }
}

fn random_regex(rng: &mut impl Rng, depth: usize) -> RegexAst {
    let leaf = depth == 0 || rng.gen_bool(0.25);
    if leaf {
        return match rng.gen_range(0..10) {
            0 => RegexAst::EmptySet,
            1 => RegexAst::Epsilon,
            2..=5 => RegexAst::Symbol('a'),
            _ => RegexAst::Symbol('b'),
        };
    }
    match rng.gen_range(0..3) {
        0 => RegexAst::concat(random_regex(rng, depth - 1), random_regex(rng, depth - 1)),
        1 => RegexAst::union(random_regex(rng, depth - 1), random_regex(rng, depth - 1)),
        _ => RegexAst::star(random_regex(rng, depth - 1)),
    }
}

#[test]
fn compiled_regexes_match_set_semantics() {
    let mut rng = rng(13);
    let all = words(&['a', 'b'], 6);
    for _ in 0..300 {
        let r = random_regex(&mut rng, 4);
        let language = regex_language(&r, 6);
        let nfa = compile_regex(&r, &ab());
        let dfa = determinize(&nfa).unwrap().minimize();
        for w in &all {
            assert_eq!(dfa.accepts(w), language.contains(w), "{r} on {w:?}");
        }
        // printing and reparsing keeps the language
        let reparsed = Regex::parse(&r.to_string(), &ab()).unwrap();
        assert_eq!(
            check_regular(&Model::Regex(Regex::new(r.clone(), ab())), &Model::Regex(reparsed)).unwrap(),
            EquivalenceResult::Equivalent
        );
    }
}

#[test]
fn regular_fixtures_are_self_equivalent_and_decide_their_predicates() {
    let all = words(&['a', 'b'], 8);
    let bits = words(&['0', '1'], 8);
    let cases: [(Model, &dyn Fn(&str) -> bool, &Vec<String>); 3] = [
        (homework::q1_dfa(), &predicates::q1, &all),
        (homework::q2_nfa(), &predicates::q2, &all),
        (homework::q3_regex(), &predicates::q3, &bits),
    ];
    for (model, predicate, inputs) in cases {
        assert_eq!(check_regular(&model, &model).unwrap(), EquivalenceResult::Equivalent);
        let dfa = to_minimal_dfa(&model).unwrap();
        for w in inputs {
            assert_eq!(dfa.accepts(w), predicate(w), "{} on {w:?}", model.model_type());
        }
    }
}

#[test]
fn regex_epsilon_case_against_enumeration() {
    let with_eps = Model::Regex(Regex::parse("a*+b*+(a+b)*", &ab()).unwrap());
    let without = Model::Regex(Regex::parse("(a+b)(a+b)*", &ab()).unwrap());
    let (x, y) = (to_minimal_dfa(&with_eps).unwrap(), to_minimal_dfa(&without).unwrap());
    let diff: Vec<String> = words(&['a', 'b'], 6)
        .into_iter()
        .filter(|w| x.accepts(w) != y.accepts(w))
        .collect();
    assert_eq!(diff, vec![String::new()]);
    assert_eq!(
        check_regular(&with_eps, &without).unwrap(),
        EquivalenceResult::Differs {
            witness: String::new(),
            in_first: true
        }
    );
}
