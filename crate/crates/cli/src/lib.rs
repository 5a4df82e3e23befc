//! Library side of the `david` command: offline checks and log analytics.

pub mod analytics;
pub mod check;
