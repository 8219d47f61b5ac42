use crossmod::unitary::Tolerances;
use crossmod::{Budget, Error};
use serde::Serialize;
use serde_json::Value;

use crate::bundle::BundleError;

pub const TOOL: &str = "crossmod";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Significant digits kept in printed floats.
pub const PRINTED_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Violation,
    ResourceError,
    InputError,
    GoldenDrift,
    InternalError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::ResourceError => 2,
            Status::InputError => 3,
            Status::GoldenDrift => 4,
            Status::InternalError => 5,
        }
    }

    pub fn of_error(e: &Error) -> Status {
        match e {
            Error::Budget { .. } => Status::ResourceError,
            Error::Internal(_) | Error::Overflow => Status::InternalError,
            Error::Input(_)
            | Error::UnsupportedDegree(_)
            | Error::NotCocycle(_)
            | Error::InvalidWitness(_)
            | Error::Precision(_)
            | Error::Sampling(_) => Status::InputError,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema: u64,
    pub seed: u64,
    pub budget: Budget,
    pub tolerances: Tolerances,
}

impl Provenance {
    pub fn new(seed: u64, budget: Budget, tolerances: Tolerances) -> Self {
        Provenance {
            tool: TOOL,
            version: VERSION,
            schema: crate::bundle::SCHEMA_VERSION,
            seed,
            budget,
            tolerances,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorDetail {
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pointer: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub task: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorDetail>,
    pub provenance: Provenance,
}

impl Report {
    pub fn bundle_error(task: &str, e: BundleError, provenance: Provenance) -> Self {
        Report {
            task: task.to_string(),
            status: Status::InputError,
            summary: None,
            result: Value::Null,
            error: Some(ErrorDetail {
                message: e.message,
                pointer: Some(e.pointer),
            }),
            provenance,
        }
    }

    pub fn module_error(task: &str, e: &Error, provenance: Provenance) -> Self {
        Report {
            task: task.to_string(),
            status: Status::of_error(e),
            summary: None,
            result: Value::Null,
            error: Some(ErrorDetail {
                message: e.to_string(),
                pointer: None,
            }),
            provenance,
        }
    }

    /// Pretty JSON with floats rounded to [`PRINTED_DIGITS`] significant digits.
    pub fn render(&self) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        round_floats(&mut v);
        let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
        s.push('\n');
        s
    }
}

/// `x` rounded to [`PRINTED_DIGITS`] significant digits, without negative zero.
pub fn round_sig(x: f64) -> f64 {
    let rounded: f64 = format!("{:.*e}", PRINTED_DIGITS - 1, x)
        .parse()
        .unwrap_or(x);
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let rounded = round_sig(n.as_f64().expect("checked f64"));
            *v = serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number);
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}
