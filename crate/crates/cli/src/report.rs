use std::io::Write;
use std::process::ExitCode;

use imprim_core::constructions::ConstructionError;
use imprim_core::cycletype::CycleTypeError;
use imprim_core::group::GroupError;
use imprim_core::Budgets;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Decided,
    Mismatch,
    Inconclusive,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> ExitCode {
        ExitCode::from(match self {
            Outcome::Decided => 0,
            Outcome::Mismatch | Outcome::Error => 1,
            Outcome::Inconclusive => 2,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Subject {
    Partition {
        text: String,
        n: usize,
    },
    Permutation {
        text: String,
        degree: usize,
    },
    Group {
        source: String,
        degree: usize,
        order: String,
    },
    Example {
        id: String,
    },
    Construction {
        recipe: String,
    },
}

/// One command's findings. `result` carries the verdicts; `lines` renders the
/// same data for people.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub subject: Subject,
    pub outcome: Outcome,
    /// Every verdict is final: either a witness was found or the search ran
    /// to completion.
    pub exhaustive: bool,
    pub budgets: Budgets,
    pub elapsed_ms: f64,
    pub result: Value,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, subject: Subject, result: Value, lines: Vec<String>) -> Self {
        Report {
            command,
            subject,
            outcome: Outcome::Decided,
            exhaustive: true,
            budgets: Budgets::default(),
            elapsed_ms: 0.0,
            result,
            lines,
        }
    }

    /// The report for a search that ran out of budget.
    pub fn inconclusive(command: &'static str, subject: Subject, reason: String) -> Self {
        let line = if reason.starts_with("inconclusive") {
            reason.clone()
        } else {
            format!("inconclusive: {reason}")
        };
        let lines = vec![line];
        Report {
            outcome: Outcome::Inconclusive,
            exhaustive: false,
            ..Report::new(command, subject, json!({ "reason": reason }), lines)
        }
    }

    /// Writes the report to stdout. A closed pipe is not an error.
    pub fn print(&self, as_json: bool) {
        let mut out = std::io::stdout().lock();
        let _ = if as_json {
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(self).expect("report serializes")
            )
        } else {
            self.lines
                .iter()
                .try_for_each(|line| writeln!(out, "{line}"))
        };
    }
}

/// Whether an error means a budget ran out rather than bad input.
pub fn is_budget_error(e: &anyhow::Error) -> bool {
    fn group(e: &GroupError) -> bool {
        matches!(
            e,
            GroupError::Inconclusive { .. }
                | GroupError::TooLarge { .. }
                | GroupError::CycleType(CycleTypeError::Inconclusive { .. })
        )
    }
    if let Some(e) = e.downcast_ref::<CycleTypeError>() {
        return matches!(e, CycleTypeError::Inconclusive { .. });
    }
    if let Some(e) = e.downcast_ref::<GroupError>() {
        return group(e);
    }
    if let Some(ConstructionError::Group(e)) = e.downcast_ref::<ConstructionError>() {
        return group(e);
    }
    false
}

/// Runs `body`; a budget error becomes an inconclusive report for `subject`.
pub fn or_inconclusive(
    command: &'static str,
    subject: Subject,
    body: impl FnOnce() -> anyhow::Result<Report>,
) -> anyhow::Result<Report> {
    match body() {
        Err(e) if is_budget_error(&e) => Ok(Report::inconclusive(command, subject, e.to_string())),
        other => other,
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
