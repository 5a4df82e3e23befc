//! Bounded comparison of context-free grammars.
//!
//! Equality of context-free languages is undecidable, so grammars are
//! compared on every string up to a length bound. Both grammars go to
//! [`CnfGrammar`] form; strings are enumerated depth first with an
//! incremental CYK chart, split by prefix across threads.

mod bounded;
mod cnf;
mod cyk;
mod oracle;

pub use self::bounded::{
    bounded_diff, bounded_diff_with, bounded_jaccard, compare_bounded, BoundedComparison, BoundedOptions,
    BoundedOutcome, BoundedVerdict, DEFAULT_BOUND, DEFAULT_ENUMERATION_CAP,
};
pub use self::cnf::{to_cnf, CnfGrammar};
pub use self::cyk::cyk_member;
pub use self::oracle::{derivation_oracle, DEFAULT_ORACLE_STEPS};

pub(crate) use self::cnf::prune;
