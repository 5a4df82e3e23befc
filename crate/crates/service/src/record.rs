use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::timestamp;
use crate::verdict::Verdict;

/// One student attempt; also the schema of a submission log line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SubmissionRecord {
    pub problem_id: String,
    pub student_id: String,
    /// Counts from 1 per (student, problem).
    pub seq: u64,
    pub payload: String,
    pub verdict: Verdict,
    #[serde(with = "timestamp")]
    pub submitted_at: DateTime<Utc>,
}

impl SubmissionRecord {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}
