//! Theorem-level verifications over finite models, behind a registry of
//! named checks selected at runtime.
//!
//! Every check is deterministic given (formula, model). A failure always
//! carries a witness environment: replaying it through `eval_formula` on the
//! two sides the check compares reproduces the disagreement. Oversized
//! domains surface as skips, never as silent truncation.

mod equations;
mod structural;

use crate::error::{ModelError, SubstError, SyntaxError, TranslateError};
use crate::model::{Env, FiniteModel, ModelParams};
use crate::syntax::Formula;
use rayon::prelude::*;
use serde_json::json;
use std::collections::BTreeMap;
use std::time::Instant;

/// Result of one check on one formula in one model.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    Fail {
        witness: Env,
        detail: Option<String>,
    },
    Skip {
        reason: String,
    },
}

impl Outcome {
    pub fn fail_with(detail: impl Into<String>) -> Outcome {
        Outcome::Fail {
            witness: Env::new(),
            detail: Some(detail.into()),
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail { .. })
    }

    pub fn is_skip(&self) -> bool {
        matches!(self, Outcome::Skip { .. })
    }
}

/// Internal abort type letting check bodies use `?`; converted into an
/// [`Outcome`] at the boundary.
#[derive(Debug)]
pub(crate) enum CheckAbort {
    Model(ModelError),
    Translate(TranslateError),
    Subst(SubstError),
    Syntax(SyntaxError),
}

impl From<ModelError> for CheckAbort {
    fn from(e: ModelError) -> Self {
        CheckAbort::Model(e)
    }
}
impl From<TranslateError> for CheckAbort {
    fn from(e: TranslateError) -> Self {
        CheckAbort::Translate(e)
    }
}
impl From<SubstError> for CheckAbort {
    fn from(e: SubstError) -> Self {
        CheckAbort::Subst(e)
    }
}
impl From<SyntaxError> for CheckAbort {
    fn from(e: SyntaxError) -> Self {
        CheckAbort::Syntax(e)
    }
}

pub(crate) fn settle(result: Result<Outcome, CheckAbort>) -> Outcome {
    match result {
        Ok(outcome) => outcome,
        Err(CheckAbort::Model(e)) if e.is_domain_too_large() => Outcome::Skip {
            reason: e.to_string(),
        },
        Err(CheckAbort::Model(e)) => Outcome::fail_with(format!("evaluation error: {e}")),
        Err(CheckAbort::Translate(e)) => Outcome::fail_with(format!("translation error: {e}")),
        Err(CheckAbort::Subst(e)) => Outcome::fail_with(format!("substitution error: {e}")),
        Err(CheckAbort::Syntax(e)) => Outcome::fail_with(format!("syntax error: {e}")),
    }
}

/// One verification strategy, registered by name.
pub trait Check: Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn run(&self, formula: &Formula, model: &FiniteModel) -> Outcome;
}

pub use equations::{eq3_tuple_types, CheckEq3, CheckEq4, CheckEq5};
pub use structural::{CheckBounded, CheckChar, CheckMono, CheckTypes};

static REGISTRY: &[&dyn Check] = &[
    &CheckEq3,
    &CheckEq4,
    &CheckEq5,
    &CheckMono,
    &CheckBounded,
    &CheckTypes,
    &CheckChar,
];

/// All registered checks, in registration order.
pub fn registry() -> &'static [&'static dyn Check] {
    REGISTRY
}

/// Look a check up by its registered name.
pub fn find_check(name: &str) -> Option<&'static dyn Check> {
    REGISTRY.iter().copied().find(|c| c.name() == name)
}

/// A corpus formula with its stable identifier.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: String,
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub formula: String,
    pub check: String,
    pub model: ModelParams,
    pub outcome: Outcome,
    pub millis: u64,
}

impl CheckReport {
    pub fn to_json(&self, zero_millis: bool) -> serde_json::Value {
        let (outcome, witness, reason) = match &self.outcome {
            Outcome::Pass => ("pass", serde_json::Value::Null, serde_json::Value::Null),
            Outcome::Fail { witness, detail } => {
                let env: BTreeMap<String, serde_json::Value> = witness
                    .iter()
                    .map(|(v, e)| (v.name.clone(), e.to_json()))
                    .collect();
                (
                    "fail",
                    json!(env),
                    detail
                        .as_ref()
                        .map(|d| json!(d))
                        .unwrap_or(serde_json::Value::Null),
                )
            }
            Outcome::Skip { reason } => ("skip", serde_json::Value::Null, json!(reason)),
        };
        json!({
            "formula": self.formula,
            "check": self.check,
            "model": { "base_size": self.model.base_size, "size_cap": self.model.size_cap },
            "outcome": outcome,
            "witness": witness,
            "reason": reason,
            "millis": if zero_millis { 0 } else { self.millis },
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusSummary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Debug, Clone)]
pub struct CorpusReport {
    pub reports: Vec<CheckReport>,
    pub summary: CorpusSummary,
}

impl CorpusReport {
    pub fn to_json(&self, zero_millis: bool) -> serde_json::Value {
        json!({
            "reports": self.reports.iter().map(|r| r.to_json(zero_millis)).collect::<Vec<_>>(),
            "summary": {
                "total": self.summary.total,
                "pass": self.summary.pass,
                "fail": self.summary.fail,
                "skip": self.summary.skip,
            },
        })
    }

    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }
}

/// Run the cross product formulas × models × checks. Tasks run in parallel
/// and the merged report is sorted by (formula id, check name, model
/// parameters), so the result is independent of scheduling.
pub fn run_corpus(
    entries: &[CorpusEntry],
    models: &[FiniteModel],
    checks: &[&dyn Check],
) -> CorpusReport {
    let tasks: Vec<(&CorpusEntry, &FiniteModel, &&dyn Check)> = entries
        .iter()
        .flat_map(|e| {
            models
                .iter()
                .flat_map(move |m| checks.iter().map(move |c| (e, m, c)))
        })
        .collect();
    let mut reports: Vec<CheckReport> = tasks
        .par_iter()
        .map(|(entry, model, check)| {
            let start = Instant::now();
            let outcome = check.run(&entry.formula, model);
            CheckReport {
                formula: entry.id.clone(),
                check: check.name().to_string(),
                model: model.params(),
                outcome,
                millis: start.elapsed().as_millis() as u64,
            }
        })
        .collect();
    reports.sort_by(|a, b| (&a.formula, &a.check, a.model).cmp(&(&b.formula, &b.check, b.model)));
    let mut summary = CorpusSummary {
        total: reports.len(),
        ..CorpusSummary::default()
    };
    for r in &reports {
        match r.outcome {
            Outcome::Pass => summary.pass += 1,
            Outcome::Fail { .. } => summary.fail += 1,
            Outcome::Skip { .. } => summary.skip += 1,
        }
    }
    CorpusReport { reports, summary }
}
