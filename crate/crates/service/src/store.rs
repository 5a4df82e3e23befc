use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, MutexGuard};

use crate::clock::Clock;
use crate::problem::{LoadedProblem, Problem, ProblemError, ProblemRequest};
use crate::record::SubmissionRecord;
use crate::timestamp;
use crate::verdict::{Status, Verdict};

pub const PROBLEMS_FILE: &str = "problems.jsonl";
pub const SUBMISSIONS_FILE: &str = "submissions.jsonl";

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("storage error: {0}")]
    Io(#[from] io::Error),
    #[error("{file} line {line}: {message}")]
    Corrupt { file: PathBuf, line: usize, message: String },
    #[error("unknown problem \"{0}\"")]
    UnknownProblem(String),
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubmissionFilter {
    pub student_id: Option<String>,
    pub status: Option<Status>,
}

impl SubmissionFilter {
    fn matches(&self, r: &SubmissionRecord) -> bool {
        self.student_id.as_ref().is_none_or(|s| *s == r.student_id)
            && self.status.is_none_or(|s| s == r.verdict.status())
    }
}

struct State {
    problems: Vec<Arc<LoadedProblem>>,
    problem_index: HashMap<String, usize>,
    submissions: Vec<SubmissionRecord>,
    last_seq: HashMap<(String, String), u64>,
    problems_log: File,
    submissions_log: File,
}

/// Problem registry and submission log, both append-only JSON-lines files
/// in one directory. The in-memory index is rebuilt from the files on
/// open; one lock serializes every append.
pub struct Store {
    dir: PathBuf,
    clock: Arc<dyn Clock>,
    state: Mutex<State>,
}

impl Store {
    pub fn open(dir: impl Into<PathBuf>, clock: Arc<dyn Clock>) -> Result<Self, StoreError> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        let problems_path = dir.join(PROBLEMS_FILE);
        let submissions_path = dir.join(SUBMISSIONS_FILE);

        let mut problems = Vec::new();
        let mut problem_index = HashMap::new();
        for (line, problem) in read_lines::<Problem>(&problems_path)? {
            let loaded = LoadedProblem::new(problem).map_err(|e| StoreError::Corrupt {
                file: problems_path.clone(),
                line,
                message: e.to_string(),
            })?;
            problem_index.insert(loaded.id().to_string(), problems.len());
            problems.push(Arc::new(loaded));
        }

        let submissions = read_lines::<SubmissionRecord>(&submissions_path)?
            .into_iter()
            .map(|(_, r)| r)
            .collect::<Vec<_>>();
        let mut last_seq = HashMap::new();
        for r in &submissions {
            let seq = last_seq.entry((r.problem_id.clone(), r.student_id.clone())).or_insert(0);
            *seq = (*seq).max(r.seq);
        }

        let state = State {
            problems,
            problem_index,
            submissions,
            last_seq,
            problems_log: append_handle(&problems_path)?,
            submissions_log: append_handle(&submissions_path)?,
        };
        Ok(Store {
            dir,
            clock,
            state: Mutex::new(state),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn submissions_path(&self) -> PathBuf {
        self.dir.join(SUBMISSIONS_FILE)
    }

    fn lock(&self) -> MutexGuard<'_, State> {
        // appends either complete or fail before the index is touched, so
        // a panic elsewhere cannot leave the state half-updated
        self.state.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
    }

    /// Validates and self-checks the reference, then persists the problem
    /// under a fresh id.
    pub fn register(&self, request: ProblemRequest) -> Result<Arc<LoadedProblem>, StoreError> {
        let created_at = timestamp::truncate(self.clock.now());
        // the self-check is the slow part; run it before taking the lock
        let checked = LoadedProblem::register(request, String::new(), created_at)?;
        let mut state = self.lock();
        let loaded = checked.with_id(format!("p{}", state.problems.len() + 1));
        append_line(&mut state.problems_log, &serde_json::to_string(loaded.problem()).expect("problem serializes"))?;
        let loaded = Arc::new(loaded);
        let index = state.problems.len();
        state.problem_index.insert(loaded.id().to_string(), index);
        state.problems.push(loaded.clone());
        Ok(loaded)
    }

    pub fn problem(&self, id: &str) -> Option<Arc<LoadedProblem>> {
        let state = self.lock();
        state.problem_index.get(id).map(|&i| state.problems[i].clone())
    }

    pub fn problems(&self) -> Vec<Arc<LoadedProblem>> {
        self.lock().problems.clone()
    }

    /// Evaluates a payload and records the attempt.
    pub fn submit(&self, problem_id: &str, student_id: &str, payload: &str) -> Result<SubmissionRecord, StoreError> {
        let problem = self
            .problem(problem_id)
            .ok_or_else(|| StoreError::UnknownProblem(problem_id.to_string()))?;
        let verdict = problem.evaluate(payload);
        self.record_submission(problem_id, student_id, payload, verdict)
    }

    /// Appends an attempt with the next sequence number for its student
    /// and problem. The line is on disk before this returns.
    pub fn record_submission(
        &self,
        problem_id: &str,
        student_id: &str,
        payload: &str,
        verdict: Verdict,
    ) -> Result<SubmissionRecord, StoreError> {
        let mut state = self.lock();
        if !state.problem_index.contains_key(problem_id) {
            return Err(StoreError::UnknownProblem(problem_id.to_string()));
        }
        let key = (problem_id.to_string(), student_id.to_string());
        let seq = state.last_seq.get(&key).copied().unwrap_or(0) + 1;
        let record = SubmissionRecord {
            problem_id: problem_id.to_string(),
            student_id: student_id.to_string(),
            seq,
            payload: payload.to_string(),
            verdict,
            submitted_at: timestamp::truncate(self.clock.now()),
        };
        append_line(&mut state.submissions_log, &record.to_line())?;
        state.last_seq.insert(key, seq);
        state.submissions.push(record.clone());
        Ok(record)
    }

    /// Records of one problem in (student, seq) order.
    pub fn list_submissions(
        &self,
        problem_id: &str,
        filter: &SubmissionFilter,
    ) -> Result<Vec<SubmissionRecord>, StoreError> {
        let state = self.lock();
        if !state.problem_index.contains_key(problem_id) {
            return Err(StoreError::UnknownProblem(problem_id.to_string()));
        }
        let mut out: Vec<SubmissionRecord> = state
            .submissions
            .iter()
            .filter(|r| r.problem_id == problem_id && filter.matches(r))
            .cloned()
            .collect();
        out.sort_by(|a, b| (&a.student_id, a.seq).cmp(&(&b.student_id, b.seq)));
        Ok(out)
    }
}

fn append_handle(path: &Path) -> io::Result<File> {
    OpenOptions::new().create(true).append(true).open(path)
}

fn append_line(file: &mut File, line: &str) -> io::Result<()> {
    let mut bytes = Vec::with_capacity(line.len() + 1);
    bytes.extend_from_slice(line.as_bytes());
    bytes.push(b'\n');
    file.write_all(&bytes)?;
    file.sync_data()
}

/// Parses every non-blank line of a JSON-lines file; a missing file is empty.
fn read_lines<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Vec<(usize, T)>, StoreError> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let value = serde_json::from_str(&line).map_err(|e| StoreError::Corrupt {
            file: path.to_path_buf(),
            line: i + 1,
            message: e.to_string(),
        })?;
        out.push((i + 1, value));
    }
    Ok(out)
}
