//! Persistence statistics and trajectory export over a submission log.

use std::collections::{BTreeMap, HashSet};
use std::io::{self, BufRead, Write};

use david_service::{timestamp, Status, SubmissionRecord};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// A log line that did not parse; `line` counts from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MalformedLine {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LogScan {
    pub records: Vec<SubmissionRecord>,
    pub malformed: Vec<MalformedLine>,
}

/// Reads every record it can; blank lines are skipped and bad lines are
/// collected rather than fatal.
pub fn read_log(reader: impl BufRead) -> io::Result<LogScan> {
    let mut scan = LogScan::default();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(&line) {
            Ok(record) => scan.records.push(record),
            Err(e) => scan.malformed.push(MalformedLine {
                line: i + 1,
                message: e.to_string(),
            }),
        }
    }
    Ok(scan)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PersistenceStats {
    pub problem_id: String,
    pub students_with_attempts: usize,
    pub students_ended_correct: usize,
    pub persistence_rate: f64,
    pub mean_attempts: f64,
    pub median_attempts: f64,
}

/// Per-problem persistence, sorted by problem id. Only meaningful attempts
/// count: a syntax error or engine limit gave the student nothing to act
/// on. A student persisted if their last meaningful attempt, by seq, was
/// correct. Problems with no meaningful attempts are left out.
pub fn persistence_stats(records: &[SubmissionRecord]) -> Vec<PersistenceStats> {
    // problem -> student -> (attempts, seq and status of the latest)
    let mut students: BTreeMap<&str, BTreeMap<&str, (usize, u64, Status)>> = BTreeMap::new();
    for r in records {
        let status = r.verdict.status();
        if !status.is_meaningful() {
            continue;
        }
        let entry = students
            .entry(&r.problem_id)
            .or_default()
            .entry(&r.student_id)
            .or_insert((0, r.seq, status));
        entry.0 += 1;
        if r.seq >= entry.1 {
            (entry.1, entry.2) = (r.seq, status);
        }
    }
    students
        .into_iter()
        .map(|(problem_id, by_student)| {
            let mut attempts: Vec<usize> = by_student.values().map(|&(n, _, _)| n).collect();
            attempts.sort_unstable();
            let n = attempts.len();
            let ended_correct = by_student.values().filter(|&&(_, _, s)| s == Status::Correct).count();
            let median = if n % 2 == 1 {
                attempts[n / 2] as f64
            } else {
                (attempts[n / 2 - 1] + attempts[n / 2]) as f64 / 2.0
            };
            PersistenceStats {
                problem_id: problem_id.to_string(),
                students_with_attempts: n,
                students_ended_correct: ended_correct,
                persistence_rate: ended_correct as f64 / n as f64,
                mean_attempts: attempts.iter().sum::<usize>() as f64 / n as f64,
                median_attempts: median,
            }
        })
        .collect()
}

const STATS_HEADER: [&str; 6] = [
    "problemId",
    "studentsWithAttempts",
    "studentsEndedCorrect",
    "persistenceRate",
    "meanAttempts",
    "medianAttempts",
];

pub fn write_stats_csv(stats: &[PersistenceStats], out: impl Write) -> csv::Result<()> {
    write_csv(&STATS_HEADER, stats, out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TrajectoryRow {
    pub student_id: String,
    pub seq: u64,
    pub submitted_at: String,
    pub status: Status,
    /// Set for incorrect attempts.
    pub witness_length: Option<usize>,
    pub payload_hash: String,
    pub is_duplicate_of_earlier: bool,
}

const TRAJECTORY_HEADER: [&str; 7] = [
    "studentId",
    "seq",
    "submittedAt",
    "status",
    "witnessLength",
    "payloadHash",
    "isDuplicateOfEarlier",
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("no records for problem \"{0}\" in the log")]
pub struct UnknownProblem(pub String);

pub fn payload_hash(payload: &str) -> String {
    hex::encode(Sha256::digest(payload.as_bytes()))
}

/// Every attempt at one problem in (student, seq) order. An attempt is a
/// duplicate if the same student submitted the identical payload before.
/// An empty log yields no rows; a non-empty log without the problem is an
/// error.
pub fn export_trajectories(records: &[SubmissionRecord], problem_id: &str) -> Result<Vec<TrajectoryRow>, UnknownProblem> {
    let mut mine: Vec<&SubmissionRecord> = records.iter().filter(|r| r.problem_id == problem_id).collect();
    if mine.is_empty() && !records.is_empty() {
        return Err(UnknownProblem(problem_id.to_string()));
    }
    mine.sort_by(|a, b| (&a.student_id, a.seq).cmp(&(&b.student_id, b.seq)));
    let mut seen: HashSet<(&str, String)> = HashSet::new();
    Ok(mine
        .into_iter()
        .map(|r| {
            let hash = payload_hash(&r.payload);
            let is_duplicate_of_earlier = !seen.insert((r.student_id.as_str(), hash.clone()));
            TrajectoryRow {
                student_id: r.student_id.clone(),
                seq: r.seq,
                submitted_at: timestamp::format(&r.submitted_at),
                status: r.verdict.status(),
                witness_length: r.verdict.witness().map(|w| w.chars().count()),
                payload_hash: hash,
                is_duplicate_of_earlier,
            }
        })
        .collect())
}

pub fn write_trajectories_csv(rows: &[TrajectoryRow], out: impl Write) -> csv::Result<()> {
    write_csv(&TRAJECTORY_HEADER, rows, out)
}

// The header is written up front so an empty export still has one.
fn write_csv<T: Serialize>(header: &[&str], rows: &[T], out: impl Write) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
