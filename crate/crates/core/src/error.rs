use thiserror::Error;

use crate::model::ModelType;

/// Problems found while reading a model from text, JSON or JFLAP XML.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    /// The document does not have the expected shape.
    #[error("schema error: {0}")]
    Schema(String),
    /// The document is well-formed but names something it must not.
    #[error("invalid {element}: {message}")]
    Validation { element: String, message: String },
    /// Text formats (regex, grammar): `position` is a character offset.
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
}

impl ModelError {
    pub(crate) fn schema(message: impl Into<String>) -> Self {
        ModelError::Schema(message.into())
    }

    pub(crate) fn validation(element: impl Into<String>, message: impl Into<String>) -> Self {
        ModelError::Validation {
            element: element.into(),
            message: message.into(),
        }
    }

    pub(crate) fn syntax(position: usize, message: impl Into<String>) -> Self {
        ModelError::Syntax {
            position,
            message: message.into(),
        }
    }
}

/// Failures of the equivalence engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("alphabets differ: {left:?} vs {right:?}")]
    AlphabetMismatch { left: Vec<char>, right: Vec<char> },
    #[error("subset construction exceeded {cap} states")]
    StateBlowup { cap: usize },
    #[error("enumeration of {strings} strings exceeds the cap of {cap}")]
    EnumerationCapExceeded { strings: u128, cap: u64 },
    #[error("grammar conversion produced more than {cap} rules")]
    GrammarBlowup { cap: usize },
    #[error("configuration search exceeded {cap} configurations")]
    SearchCapExceeded { cap: usize },
    #[error("{0} models are not supported by this check")]
    UnsupportedModel(ModelType),
    #[error("models have different types: {0} vs {1}")]
    ModelTypeMismatch(ModelType, ModelType),
}
