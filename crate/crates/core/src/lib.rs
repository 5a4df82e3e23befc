//! Language-equivalence checking for homework feedback.
//!
//! A student submission (DFA, NFA, regular expression, context-free grammar or
//! pushdown automaton) is compared against an instructor reference. When the
//! two differ the checker returns a *witness*: a string accepted by exactly
//! one of the two models.
//!
//! - [`model`]: the five model types, their text/JSON formats and JFLAP import.
//! - [`regular`]: exact equivalence for regular models (subset construction,
//!   minimization, product search and a union-find equivalence check).
//! - [`grammar`]: bounded equivalence for grammars via CNF and CYK over every
//!   string up to a length bound.
//! - [`pda`]: bounded equivalence for pushdown automata by conversion to a
//!   grammar, plus a configuration-search membership oracle.

pub mod error;
pub mod grammar;
pub mod homework;
pub mod model;
pub mod par;
pub mod pda;
pub mod regular;

pub use error::{EngineError, ModelError};
pub use grammar::{BoundedOutcome, BoundedVerdict};
pub use model::{Alphabet, Model, ModelType};
pub use regular::EquivalenceResult;
