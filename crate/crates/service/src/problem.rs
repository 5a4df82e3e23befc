use chrono::{DateTime, Utc};
use david_core::grammar::{bounded_diff_with, BoundedOptions, BoundedOutcome, BoundedVerdict, DEFAULT_BOUND};
use david_core::model::parse_payload;
use david_core::pda::pda_bounded_diff;
use david_core::regular::check_regular;
use david_core::{Alphabet, EngineError, EquivalenceResult, Model, ModelType};
use serde::{Deserialize, Serialize};

use crate::timestamp;
use crate::verdict::{Side, Verdict};

/// What an instructor sends to register a problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProblemRequest {
    pub model_type: ModelType,
    pub alphabet: Vec<String>,
    #[serde(default)]
    pub prompt: String,
    /// Reference solution in submission format.
    pub reference: String,
    /// Comparison length for cfg and pda problems.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Problem {
    pub id: String,
    pub model_type: ModelType,
    pub alphabet: Vec<String>,
    pub prompt: String,
    pub reference: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(with = "timestamp")]
    pub created_at: DateTime<Utc>,
}

/// A problem as students see it: everything but the reference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProblemView {
    pub id: String,
    pub model_type: ModelType,
    pub alphabet: Vec<String>,
    pub prompt: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(with = "timestamp")]
    pub created_at: DateTime<Utc>,
}

impl From<&Problem> for ProblemView {
    fn from(p: &Problem) -> Self {
        ProblemView {
            id: p.id.clone(),
            model_type: p.model_type,
            alphabet: p.alphabet.clone(),
            prompt: p.prompt.clone(),
            bound: p.bound,
            created_at: p.created_at,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProblemError {
    #[error("invalid problem: {0}")]
    Validation(String),
    #[error("reference does not check as correct against itself: {0}")]
    SelfCheck(String),
}

/// A problem together with its parsed reference.
#[derive(Debug, Clone)]
pub struct LoadedProblem {
    problem: Problem,
    alphabet: Alphabet,
    reference: Model,
}

impl LoadedProblem {
    /// Parses the reference and fills in the default bound.
    pub fn new(mut problem: Problem) -> Result<Self, ProblemError> {
        let alphabet = Alphabet::from_strings(&problem.alphabet).map_err(|e| ProblemError::Validation(e.to_string()))?;
        let reference = parse_payload(problem.model_type, &alphabet, &problem.reference)
            .map_err(|e| ProblemError::Validation(format!("reference: {e}")))?;
        if problem.model_type.is_regular() {
            if problem.bound.is_some() {
                return Err(ProblemError::Validation(format!(
                    "bound applies to cfg and pda problems, not {}",
                    problem.model_type
                )));
            }
        } else {
            problem.bound.get_or_insert(DEFAULT_BOUND);
        }
        Ok(LoadedProblem {
            problem,
            alphabet,
            reference,
        })
    }

    /// Builds a problem from a request and checks its reference against
    /// the serialized form of itself.
    pub fn register(request: ProblemRequest, id: String, created_at: DateTime<Utc>) -> Result<Self, ProblemError> {
        let loaded = LoadedProblem::new(Problem {
            id,
            model_type: request.model_type,
            alphabet: request.alphabet,
            prompt: request.prompt,
            reference: request.reference,
            bound: request.bound,
            created_at,
        })?;
        match loaded.evaluate(&loaded.reference.to_payload()) {
            Verdict::Correct { .. } => Ok(loaded),
            other => Err(ProblemError::SelfCheck(serde_json::to_string(&other).expect("verdict serializes"))),
        }
    }

    pub(crate) fn with_id(mut self, id: String) -> Self {
        self.problem.id = id;
        self
    }

    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    pub fn id(&self) -> &str {
        &self.problem.id
    }

    pub fn reference(&self) -> &Model {
        &self.reference
    }

    pub fn view(&self) -> ProblemView {
        ProblemView::from(&self.problem)
    }

    /// Checks a submission payload against the reference. Every outcome,
    /// including unparsable payloads and exhausted engine budgets, is a
    /// verdict.
    pub fn evaluate(&self, payload: &str) -> Verdict {
        let submission = match parse_payload(self.problem.model_type, &self.alphabet, payload) {
            Ok(model) => model,
            Err(e) => return Verdict::SyntaxError { message: e.to_string() },
        };
        let outcome = match (&self.reference, &submission) {
            (Model::Cfg(r), Model::Cfg(s)) => bounded_diff_with(r, s, &self.bounded_options()).map(bounded_verdict),
            (Model::Pda(r), Model::Pda(s)) => pda_bounded_diff(r, s, &self.bounded_options()).map(bounded_verdict),
            (r, s) => check_regular(r, s).map(regular_verdict),
        };
        outcome.unwrap_or_else(engine_verdict)
    }

    fn bounded_options(&self) -> BoundedOptions {
        BoundedOptions::with_bound(self.problem.bound.unwrap_or(DEFAULT_BOUND))
    }
}

/// Stateless form of [`LoadedProblem::evaluate`].
pub fn evaluate_submission(problem: &Problem, payload: &str) -> Verdict {
    match LoadedProblem::new(problem.clone()) {
        Ok(loaded) => loaded.evaluate(payload),
        Err(e) => Verdict::EngineLimit { message: e.to_string() },
    }
}

fn side(in_reference: bool) -> Side {
    if in_reference {
        Side::Reference
    } else {
        Side::Submission
    }
}

fn regular_verdict(result: EquivalenceResult) -> Verdict {
    match result {
        EquivalenceResult::Equivalent => Verdict::Correct { bound_k: None },
        EquivalenceResult::Differs { witness, in_first } => Verdict::Incorrect {
            witness,
            accepted_by: side(in_first),
        },
    }
}

fn bounded_verdict(v: BoundedVerdict) -> Verdict {
    match v.outcome {
        BoundedOutcome::AgreesUpTo(k) => Verdict::Correct { bound_k: Some(k) },
        BoundedOutcome::Differs { witness, in_first } => Verdict::Incorrect {
            witness,
            accepted_by: side(in_first),
        },
    }
}

fn engine_verdict(e: EngineError) -> Verdict {
    match e {
        EngineError::Model(e) => Verdict::SyntaxError { message: e.to_string() },
        other => Verdict::EngineLimit {
            message: other.to_string(),
        },
    }
}
