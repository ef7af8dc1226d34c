//! Exit-code plumbing, wall-clock budgets, and the parallel verify driver.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use ramsey_core::verify::{
    exhaustive_roots, merge_root_outcomes, root_budget_slice, run_root, SearchBudget, Ticker,
};
use ramsey_core::{ArrowClaim, RankColouring, VerificationReport, Verdict};

/// Exit codes are a stable contract: 0 pass, 1 fail, 2 usage/parse,
/// 3 invalid input data, 4 unknown.
pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_INVALID: u8 = 3;
pub const EXIT_UNKNOWN: u8 = 4;

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

impl From<ramsey_core::Error> for Failure {
    fn from(e: ramsey_core::Error) -> Self {
        let code = match e {
            ramsey_core::Error::Parse { .. } => EXIT_PARSE,
            ramsey_core::Error::WidthCapExceeded { .. }
            | ramsey_core::Error::WidthUnrepresentable
            | ramsey_core::Error::BudgetExhausted => EXIT_UNKNOWN,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub type CmdResult = Result<u8, Failure>;

pub fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))
}

pub fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display()))),
    }
}

/// Resolves a path mentioned inside a spec file, relative to that file.
pub fn resolve_relative(spec_path: &Path, mentioned: &str) -> PathBuf {
    let mentioned = Path::new(mentioned);
    if mentioned.is_absolute() {
        mentioned.to_path_buf()
    } else {
        spec_path
            .parent()
            .unwrap_or_else(|| Path::new("."))
            .join(mentioned)
    }
}

/// Wall-clock deadline for the core search loops.
pub struct WallTicker {
    deadline: Option<Instant>,
}

impl WallTicker {
    pub fn new(limit: Option<Duration>) -> Self {
        WallTicker {
            deadline: limit.map(|d| Instant::now() + d),
        }
    }
}

impl Ticker for WallTicker {
    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

/// Exhaustive verification with the work split over a thread pool. Roots get
/// the same deterministic budget slices as the sequential driver and reports
/// merge in root order, so the output is identical for any thread count.
pub fn verify_exhaustive_parallel(
    colouring: &dyn RankColouring,
    claim: &ArrowClaim,
    budget: &SearchBudget,
    ticker: &dyn Ticker,
    pool: &rayon::ThreadPool,
) -> VerificationReport {
    use rayon::prelude::*;

    let roots = match exhaustive_roots(colouring, claim) {
        Ok(roots) => roots,
        Err(reason) => {
            return VerificationReport {
                subject: ramsey_core::Subject::Arrow(claim.clone()),
                mode: ramsey_core::VerifyMode::Exhaustive,
                verdict: Verdict::Unknown(reason),
                witness: None,
                work: ramsey_core::WorkCounters {
                    seed: budget.seed,
                    ..Default::default()
                },
            }
        }
    };
    let ground = claim.ground().as_u64().expect("roots imply a small ground");
    let total = roots.len();
    let outcomes: Vec<_> = pool.install(|| {
        roots
            .par_iter()
            .enumerate()
            .map(|(i, &root)| {
                let slice = root_budget_slice(budget.max_subsets, total, i);
                run_root(colouring, root, ground, slice, ticker)
            })
            .collect()
    });
    merge_root_outcomes(claim, &outcomes, budget.seed)
}

/// Exit code for a verification verdict.
pub fn verdict_code(report: &VerificationReport) -> u8 {
    match report.verdict {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Unknown(_) => EXIT_UNKNOWN,
    }
}
