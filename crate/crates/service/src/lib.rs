//! Feedback service: instructors register problems with a reference
//! solution, students submit attempts and get a verdict with a witness
//! string, and every attempt is appended to a JSON-lines log.

pub mod api;
pub mod clock;
pub mod problem;
pub mod record;
pub mod store;
pub mod timestamp;
pub mod verdict;

pub use api::{router, serve, AppState, Config};
pub use clock::{Clock, SteppingClock, SystemClock};
pub use problem::{evaluate_submission, LoadedProblem, Problem, ProblemError, ProblemRequest, ProblemView};
pub use record::SubmissionRecord;
pub use store::{Store, StoreError, SubmissionFilter};
pub use verdict::{Side, Status, Verdict};
