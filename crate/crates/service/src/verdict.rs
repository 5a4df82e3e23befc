use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Which side accepts a witness string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Reference,
    Submission,
}

/// The feedback returned for one submission.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum Verdict {
    /// For grammars and pushdown automata, `bound_k` is the length up to
    /// which the languages were compared.
    Correct {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bound_k: Option<usize>,
    },
    Incorrect { witness: String, accepted_by: Side },
    SyntaxError { message: String },
    EngineLimit { message: String },
}

impl Verdict {
    pub fn status(&self) -> Status {
        match self {
            Verdict::Correct { .. } => Status::Correct,
            Verdict::Incorrect { .. } => Status::Incorrect,
            Verdict::SyntaxError { .. } => Status::SyntaxError,
            Verdict::EngineLimit { .. } => Status::EngineLimit,
        }
    }

    pub fn witness(&self) -> Option<&str> {
        match self {
            Verdict::Incorrect { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Status {
    Correct,
    Incorrect,
    SyntaxError,
    EngineLimit,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Correct => "correct",
            Status::Incorrect => "incorrect",
            Status::SyntaxError => "syntaxError",
            Status::EngineLimit => "engineLimit",
        }
    }

    /// Whether the student got feedback about their language: a syntax
    /// error or an engine limit says nothing about it.
    pub fn is_meaningful(self) -> bool {
        matches!(self, Status::Correct | Status::Incorrect)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown status \"{0}\"")]
pub struct UnknownStatus(pub String);

impl FromStr for Status {
    type Err = UnknownStatus;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Status::Correct, Status::Incorrect, Status::SyntaxError, Status::EngineLimit]
            .into_iter()
            .find(|status| status.as_str() == s)
            .ok_or_else(|| UnknownStatus(s.to_string()))
    }
}
