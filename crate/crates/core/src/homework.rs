//! Reference solutions for five classroom exercises (one per model type) and
//! a few grammars that make good comparison fixtures.

use crate::model::{parse_payload, Alphabet, Model, ModelType};

/// An exercise as an instructor would register it.
#[derive(Debug, Clone, Copy)]
pub struct Exercise {
    pub model_type: ModelType,
    pub alphabet: &'static str,
    pub prompt: &'static str,
    /// Reference solution in submission format.
    pub reference: &'static str,
}

impl Exercise {
    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.alphabet.chars()).expect("fixture alphabet")
    }

    pub fn reference_model(&self) -> Model {
        parse_payload(self.model_type, &self.alphabet(), self.reference).expect("fixture reference")
    }
}

/// At least two b's and no occurrence of bb. Partial: missing moves reject.
pub const Q1_DFA: &str = r#"{"type":"dfa","alphabet":["a","b"],
"states":["none","b1","a1","b2","a2"],"start":"none","accepting":["b2","a2"],
"transitions":[
{"from":"none","read":"a","to":"none"},{"from":"none","read":"b","to":"b1"},
{"from":"b1","read":"a","to":"a1"},
{"from":"a1","read":"a","to":"a1"},{"from":"a1","read":"b","to":"b2"},
{"from":"b2","read":"a","to":"a2"},
{"from":"a2","read":"a","to":"a2"},{"from":"a2","read":"b","to":"b2"}]}"#;

/// Starts or ends with aba.
pub const Q2_NFA: &str = r#"{"type":"nfa","alphabet":["a","b"],
"states":["s","p0","p1","p2","p3","e0","e1","e2","e3"],"start":"s","accepting":["p3","e3"],
"transitions":[
{"from":"s","read":null,"to":"p0"},{"from":"s","read":null,"to":"e0"},
{"from":"p0","read":"a","to":"p1"},{"from":"p1","read":"b","to":"p2"},{"from":"p2","read":"a","to":"p3"},
{"from":"p3","read":"a","to":"p3"},{"from":"p3","read":"b","to":"p3"},
{"from":"e0","read":"a","to":"e0"},{"from":"e0","read":"b","to":"e0"},
{"from":"e0","read":"a","to":"e1"},{"from":"e1","read":"b","to":"e2"},{"from":"e2","read":"a","to":"e3"}]}"#;

/// Neither 000 nor 111: runs of length one or two, alternating.
pub const Q3_REGEX: &str = "(_+1+11)((0+00)(1+11))*(_+0+00)";

/// More leading 0's than trailing 1's: `0^i x 1^j` with `i > j`, where `x` is
/// empty or starts with 1 and ends with 0 so both runs are maximal.
pub const Q4_CFG: &str = "S -> 0S1 | 0T\nT -> 0T | X\nX -> 1M0 | _\nM -> 0M | 1M | _";

/// More a's than b's. The stack holds the surplus (A's or B's above Z); the
/// machine may jump to the accepting state whenever an A is on top.
pub const Q5_PDA: &str = r#"{"type":"pda","alphabet":["a","b"],"stackAlphabet":["Z","A","B"],
"states":["count","done"],"start":"count","accepting":["done"],"acceptanceMode":"final-state",
"transitions":[
{"from":"count","read":"a","pop":"Z","push":"AZ","to":"count"},
{"from":"count","read":"a","pop":"A","push":"AA","to":"count"},
{"from":"count","read":"a","pop":"B","push":"","to":"count"},
{"from":"count","read":"b","pop":"Z","push":"BZ","to":"count"},
{"from":"count","read":"b","pop":"B","push":"BB","to":"count"},
{"from":"count","read":"b","pop":"A","push":"","to":"count"},
{"from":"count","read":null,"pop":"A","push":"A","to":"done"}]}"#;

pub const EXERCISES: [Exercise; 5] = [
    Exercise {
        model_type: ModelType::Dfa,
        alphabet: "ab",
        prompt: "DFA for strings over {a,b} with at least two b's and no substring bb.",
        reference: Q1_DFA,
    },
    Exercise {
        model_type: ModelType::Nfa,
        alphabet: "ab",
        prompt: "NFA for strings over {a,b} that start or end with aba.",
        reference: Q2_NFA,
    },
    Exercise {
        model_type: ModelType::Regex,
        alphabet: "01",
        prompt: "Regular expression for strings over {0,1} containing neither 000 nor 111.",
        reference: Q3_REGEX,
    },
    Exercise {
        model_type: ModelType::Cfg,
        alphabet: "01",
        prompt: "CFG for strings over {0,1} with more leading 0's than trailing 1's.",
        reference: Q4_CFG,
    },
    Exercise {
        model_type: ModelType::Pda,
        alphabet: "ab",
        prompt: "PDA for strings over {a,b} with more a's than b's.",
        reference: Q5_PDA,
    },
];

pub fn q1_dfa() -> Model {
    EXERCISES[0].reference_model()
}

pub fn q2_nfa() -> Model {
    EXERCISES[1].reference_model()
}

pub fn q3_regex() -> Model {
    EXERCISES[2].reference_model()
}

pub fn q4_cfg() -> Model {
    EXERCISES[3].reference_model()
}

pub fn q5_pda() -> Model {
    EXERCISES[4].reference_model()
}

/// `{a^(2i) b^i | i >= 1}`.
pub const DOUBLE_A_REFERENCE: &str = "S -> aaSb | aab";

/// Close to [`DOUBLE_A_REFERENCE`] but disjoint from its language.
pub const DOUBLE_A_NEAR_MISSES: [&str; 4] = [
    "S -> aSbb | abb",
    "S -> bbSa | bba",
    "S -> aSb | ab",
    "S -> aaSb | ab",
];

/// `{a^i b^k | i != k}` by cancelling matched pairs first.
pub const UNEQUAL_CANCEL: &str = "S -> aSb | A | B\nA -> aA | a\nB -> bB | b";

/// `{a^i b^k | i != k}` as the union of the `i > k` and `i < k` cases.
pub const UNEQUAL_UNION: &str = "S -> A | B\nA -> aAb | aA | a\nB -> aBb | Bb | b";

/// A common slip in [`UNEQUAL_UNION`]: `B -> bB` lets a b come before an a,
/// so it also generates strings like "babb".
pub const UNEQUAL_UNION_SLIP: &str = "S -> A | B\nA -> aAb | aA | a\nB -> aBb | bB | b";

/// `{a^n b^n | n >= 1}`, accepting in a final state.
pub const ANBN_PDA: &str = r#"{"type":"pda","alphabet":["a","b"],"stackAlphabet":["Z","A"],
"states":["push","pop","done"],"start":"push","accepting":["done"],
"transitions":[
{"from":"push","read":"a","pop":null,"push":"A","to":"push"},
{"from":"push","read":"b","pop":"A","push":"","to":"pop"},
{"from":"pop","read":"b","pop":"A","push":"","to":"pop"},
{"from":"pop","read":null,"pop":"Z","push":"Z","to":"done"}]}"#;

/// `{a^n b^n | n >= 1}` again, accepting by empty stack.
pub const ANBN_EMPTY_STACK_PDA: &str = r#"{"type":"pda","alphabet":["a","b"],"stackAlphabet":["Z","A"],
"states":["s","t"],"start":"s","acceptanceMode":"empty-stack",
"transitions":[
{"from":"s","read":"a","pop":"Z","push":"AZ","to":"s"},
{"from":"s","read":"a","pop":"A","push":"AA","to":"s"},
{"from":"s","read":"b","pop":"A","push":"","to":"t"},
{"from":"t","read":"b","pop":"A","push":"","to":"t"},
{"from":"t","read":null,"pop":"Z","push":"","to":"t"}]}"#;

/// Even-length palindromes; guesses the middle.
pub const EVEN_PALINDROME_PDA: &str = r#"{"type":"pda","alphabet":["a","b"],"stackAlphabet":["Z","A","B"],
"states":["first","second","done"],"start":"first","accepting":["done"],
"transitions":[
{"from":"first","read":"a","pop":null,"push":"A","to":"first"},
{"from":"first","read":"b","pop":null,"push":"B","to":"first"},
{"from":"first","read":null,"pop":null,"push":"","to":"second"},
{"from":"second","read":"a","pop":"A","push":"","to":"second"},
{"from":"second","read":"b","pop":"B","push":"","to":"second"},
{"from":"second","read":null,"pop":"Z","push":"Z","to":"done"}]}"#;

/// Every PDA fixture, named, including the Q5 reference.
pub const PDA_FIXTURES: [(&str, &str); 4] = [
    ("more-as", Q5_PDA),
    ("anbn", ANBN_PDA),
    ("anbn-empty-stack", ANBN_EMPTY_STACK_PDA),
    ("even-palindrome", EVEN_PALINDROME_PDA),
];

/// Predicates the reference solutions are meant to decide, for brute-force
/// validation.
pub mod predicates {
    pub fn q1(w: &str) -> bool {
        w.matches('b').count() >= 2 && !w.contains("bb")
    }

    pub fn q2(w: &str) -> bool {
        w.starts_with("aba") || w.ends_with("aba")
    }

    pub fn q3(w: &str) -> bool {
        !w.contains("000") && !w.contains("111")
    }

    pub fn q4(w: &str) -> bool {
        let leading = w.chars().take_while(|&c| c == '0').count();
        let trailing = if leading == w.len() {
            0
        } else {
            w.chars().rev().take_while(|&c| c == '1').count()
        };
        leading > trailing
    }

    pub fn q5(w: &str) -> bool {
        w.matches('a').count() > w.matches('b').count()
    }

    pub fn anbn(w: &str) -> bool {
        let n = w.len() / 2;
        n >= 1 && w.len().is_multiple_of(2) && w[..n].chars().all(|c| c == 'a') && w[n..].chars().all(|c| c == 'b')
    }

    pub fn even_palindrome(w: &str) -> bool {
        w.len().is_multiple_of(2) && w.chars().eq(w.chars().rev())
    }
}
