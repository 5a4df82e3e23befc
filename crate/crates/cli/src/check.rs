//! Offline form of submission evaluation: two files in, one verdict out.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use david_core::model::{import_jff, FaKind, FiniteAutomaton, Model};
use david_core::ModelType;
use david_service::{LoadedProblem, Problem, ProblemError, Status, Verdict};

#[derive(Debug, Clone)]
pub struct CheckRequest {
    pub model_type: ModelType,
    pub reference: PathBuf,
    pub submission: PathBuf,
    /// Comparison length for cfg and pda; ignored for regular types.
    pub bound: Option<usize>,
    /// Symbols in order, for regex and cfg files, which do not declare one.
    pub alphabet: Option<String>,
}

#[derive(Debug, thiserror::Error)]
#[error("cannot read {}: {source}", path.display())]
pub struct ReadError {
    pub path: PathBuf,
    pub source: io::Error,
}

pub mod exit {
    pub const CORRECT: u8 = 0;
    pub const INCORRECT: u8 = 1;
    pub const INVALID: u8 = 2;
    pub const IO: u8 = 3;
    pub const ENGINE_LIMIT: u8 = 4;
}

pub fn exit_code(verdict: &Verdict) -> u8 {
    match verdict.status() {
        Status::Correct => exit::CORRECT,
        Status::Incorrect => exit::INCORRECT,
        Status::SyntaxError => exit::INVALID,
        Status::EngineLimit => exit::ENGINE_LIMIT,
    }
}

fn invalid(message: impl std::fmt::Display) -> Verdict {
    Verdict::SyntaxError {
        message: message.to_string(),
    }
}

fn read(path: &Path) -> Result<String, ReadError> {
    fs::read_to_string(path).map_err(|source| ReadError {
        path: path.to_path_buf(),
        source,
    })
}

/// JFLAP files become payload text of the requested type; anything else is
/// taken as payload text already.
fn payload_text(model_type: ModelType, path: &Path, text: String) -> Result<String, String> {
    if path.extension().is_none_or(|e| !e.eq_ignore_ascii_case("jff")) {
        return Ok(text);
    }
    let model = import_jff(&text).map_err(|e| e.to_string())?;
    let model = match (model, model_type) {
        (Model::Fa(fa), ModelType::Dfa) => Model::Fa(
            FiniteAutomaton::new(
                fa.states().to_vec(),
                fa.alphabet().clone(),
                fa.transitions().to_vec(),
                fa.start(),
                fa.accepting().clone(),
                FaKind::Dfa,
            )
            .map_err(|e| e.to_string())?,
        ),
        (model, _) => model,
    };
    if model.model_type() != model_type {
        return Err(format!("file holds a {}, expected a {model_type}", model.model_type()));
    }
    Ok(model.to_payload())
}

const REGEX_OPERATORS: &str = "()+|*_#";

/// Terminal symbols used by regex or grammar texts, in sorted order.
fn inferred_alphabet(model_type: ModelType, texts: &[&str]) -> Vec<String> {
    let mut symbols: Vec<char> = Vec::new();
    for text in texts {
        let used: Box<dyn Iterator<Item = char>> = match model_type {
            ModelType::Regex => Box::new(text.chars().filter(|c| !REGEX_OPERATORS.contains(*c))),
            _ => Box::new(
                text.lines()
                    .filter_map(|l| l.split_once("->").map(|(_, rhs)| rhs))
                    .flat_map(str::chars)
                    .filter(|c| !c.is_ascii_uppercase() && *c != '|' && *c != '_'),
            ),
        };
        symbols.extend(used.filter(|c| !c.is_whitespace()));
    }
    symbols.sort_unstable();
    symbols.dedup();
    symbols.into_iter().map(String::from).collect()
}

/// Alphabet of a JSON-encoded automaton.
fn declared_alphabet(text: &str) -> Result<Vec<String>, String> {
    Model::from_json(text)
        .map(|m| m.alphabet().to_strings())
        .map_err(|e| e.to_string())
}

/// Compares the submission file against the reference file. Problems with
/// the reference come back as a syntax-error verdict naming it.
pub fn run_check(req: &CheckRequest) -> Result<Verdict, ReadError> {
    let reference_text = read(&req.reference)?;
    let submission_text = read(&req.submission)?;
    let reference = match payload_text(req.model_type, &req.reference, reference_text) {
        Ok(t) => t,
        Err(e) => return Ok(invalid(format!("reference: {e}"))),
    };
    let submission = match payload_text(req.model_type, &req.submission, submission_text) {
        Ok(t) => t,
        Err(e) => return Ok(invalid(e)),
    };
    let alphabet = match (&req.alphabet, req.model_type) {
        (Some(symbols), _) => symbols.chars().map(String::from).collect(),
        (None, ModelType::Regex | ModelType::Cfg) => inferred_alphabet(req.model_type, &[&reference, &submission]),
        (None, _) => match declared_alphabet(&reference) {
            Ok(a) => a,
            Err(e) => return Ok(invalid(format!("reference: {e}"))),
        },
    };
    let bound = if req.model_type.is_regular() { None } else { req.bound };
    let problem = Problem {
        id: String::new(),
        model_type: req.model_type,
        alphabet,
        prompt: String::new(),
        reference,
        bound,
        created_at: Default::default(),
    };
    match LoadedProblem::new(problem) {
        Ok(p) => Ok(p.evaluate(&submission)),
        Err(ProblemError::Validation(m) | ProblemError::SelfCheck(m)) => Ok(invalid(m)),
    }
}
