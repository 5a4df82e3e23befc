use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use david_cli::analytics::{export_trajectories, persistence_stats, read_log, write_stats_csv, write_trajectories_csv, LogScan};
use david_cli::check::{exit, exit_code, run_check, CheckRequest};
use david_core::ModelType;
use david_service::Config;

#[derive(Parser)]
#[command(name = "david", version, about = "Witness feedback for automata, grammars and regular expressions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the HTTP service (DAVID_ADDR, DAVID_DATA_DIR, DAVID_INSTRUCTOR_TOKEN).
    Serve,
    /// Compare a submission file against a reference file. Exit status:
    /// 0 correct, 1 incorrect, 2 syntax or validation error, 3 I/O error,
    /// 4 engine limit.
    Check {
        /// dfa, nfa, regex, cfg or pda.
        #[arg(long = "type", value_name = "TYPE")]
        model_type: ModelType,
        reference: PathBuf,
        submission: PathBuf,
        /// Comparison length for cfg and pda.
        #[arg(long)]
        bound: Option<usize>,
        /// Alphabet symbols in order, e.g. "ab", for regex and cfg files.
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Persistence statistics per problem, as JSON.
    Stats {
        log: PathBuf,
        /// Also write the statistics as CSV.
        #[arg(long, value_name = "OUT")]
        csv: Option<PathBuf>,
    },
    /// One CSV row per attempt at a problem.
    Trajectories {
        log: PathBuf,
        #[arg(long)]
        problem: String,
    },
}

fn main() -> ExitCode {
    let code = match Cli::parse().command {
        Command::Serve => serve(),
        Command::Check {
            model_type,
            reference,
            submission,
            bound,
            alphabet,
        } => check(CheckRequest {
            model_type,
            reference,
            submission,
            bound,
            alphabet,
        }),
        Command::Stats { log, csv } => stats(log, csv),
        Command::Trajectories { log, problem } => trajectories(log, &problem),
    };
    ExitCode::from(code)
}

fn serve() -> u8 {
    let config = match Config::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit::INVALID;
        }
    };
    let runtime = tokio::runtime::Runtime::new().expect("tokio runtime");
    match runtime.block_on(david_service::serve(config)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit::IO
        }
    }
}

fn check(req: CheckRequest) -> u8 {
    match run_check(&req) {
        Ok(verdict) => {
            println!("{}", serde_json::to_string(&verdict).expect("verdict serializes"));
            exit_code(&verdict)
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit::IO
        }
    }
}

fn load(log: &PathBuf) -> Result<LogScan, u8> {
    let scan = File::open(log)
        .and_then(|f| read_log(BufReader::new(f)))
        .map_err(|e| {
            eprintln!("error: cannot read {}: {e}", log.display());
            exit::IO
        })?;
    for bad in &scan.malformed {
        eprintln!("{}:{}: skipped malformed line: {}", log.display(), bad.line, bad.message);
    }
    Ok(scan)
}

fn stats(log: PathBuf, csv_out: Option<PathBuf>) -> u8 {
    let scan = match load(&log) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let stats = persistence_stats(&scan.records);
    println!("{}", serde_json::to_string_pretty(&stats).expect("stats serialize"));
    if let Some(path) = csv_out {
        let written = File::create(&path)
            .map_err(csv::Error::from)
            .and_then(|f| write_stats_csv(&stats, f));
        if let Err(e) = written {
            eprintln!("error: cannot write {}: {e}", path.display());
            return exit::IO;
        }
    }
    0
}

fn trajectories(log: PathBuf, problem: &str) -> u8 {
    let scan = match load(&log) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let rows = match export_trajectories(&scan.records, problem) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("error: {e}");
            return exit::INVALID;
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = write_trajectories_csv(&rows, &mut out).and_then(|()| out.flush().map_err(Into::into)) {
        eprintln!("error: {e}");
        return exit::IO;
    }
    0
}
