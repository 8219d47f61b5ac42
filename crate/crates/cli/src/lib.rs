//! Runs problem bundles and golden directories for the `crossmod` binary.

pub mod bundle;
pub mod golden;
pub mod report;
pub mod tasks;

use std::panic::{catch_unwind, AssertUnwindSafe};

use report::{ErrorDetail, Provenance, Report, Status};
use serde_json::Value;
use tasks::Failure;

/// Command-line overrides applied on top of the bundle settings.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    /// Replaces the enumeration limit.
    pub budget: Option<u64>,
}

/// Runs one bundle given as JSON text.
pub fn run(text: &str, overrides: Overrides) -> Report {
    let (mut common, map) = match bundle::split(text) {
        Ok(v) => v,
        Err(e) => {
            let task = serde_json::from_str::<Value>(text)
                .ok()
                .and_then(|v| v.get("task").and_then(Value::as_str).map(str::to_string))
                .unwrap_or_default();
            let mut budget = crossmod::Budget::default();
            if let Some(b) = overrides.budget {
                budget.enumeration = b.into();
            }
            return Report::bundle_error(
                &task,
                e,
                Provenance::new(overrides.seed.unwrap_or(0), budget, Default::default()),
            );
        }
    };
    if let Some(seed) = overrides.seed {
        common.seed = seed;
    }
    if let Some(b) = overrides.budget {
        common.budget.enumeration = b.into();
    }
    let provenance = Provenance::new(common.seed, common.budget, common.tolerances);
    let task = common.task.clone();
    match catch_unwind(AssertUnwindSafe(|| tasks::dispatch(&common, map))) {
        Ok(Ok(o)) => Report {
            task,
            status: o.status,
            summary: Some(o.summary),
            result: o.result,
            error: None,
            provenance,
        },
        Ok(Err(Failure::Bundle(e))) => Report::bundle_error(&task, e, provenance),
        Ok(Err(Failure::Module(e))) => Report::module_error(&task, &e, provenance),
        Err(panic) => {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Report {
                task,
                status: Status::InternalError,
                summary: None,
                result: Value::Null,
                error: Some(ErrorDetail {
                    message,
                    pointer: None,
                }),
                provenance,
            }
        }
    }
}
