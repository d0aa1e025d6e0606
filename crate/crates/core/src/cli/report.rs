//! Job reports and their text and JSON renderings.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Affirmative,
    Negative,
    BudgetExceeded,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Affirmative => 0,
            Outcome::Negative => 1,
            Outcome::BudgetExceeded => 2,
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Affirmative
        } else {
            Outcome::Negative
        }
    }

    /// The weakest of two outcomes: an exceeded budget dominates a negative answer.
    pub fn and(self, other: Outcome) -> Outcome {
        use Outcome::*;
        match (self, other) {
            (BudgetExceeded, _) | (_, BudgetExceeded) => BudgetExceeded,
            (Negative, _) | (_, Negative) => Negative,
            _ => Affirmative,
        }
    }
}

/// Deterministic for a fixed document, seed and budget; carries no timing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub job: String,
    pub instance: String,
    pub field: String,
    pub seed: u64,
    pub budget: u64,
    pub verdict: Outcome,
    pub certificates: Value,
}

impl Report {
    /// Report for a job that stopped with an error; budget errors keep their own status.
    pub fn from_error(job: &str, instance: &str, field: &str, seed: u64, budget: u64, e: &Error) -> Self {
        let verdict = match e {
            Error::BudgetExceeded { .. } => Outcome::BudgetExceeded,
            _ => Outcome::Negative,
        };
        Report {
            job: job.into(),
            instance: instance.into(),
            field: field.into(),
            seed,
            budget,
            verdict,
            certificates: serde_json::json!({ "error": e.to_string() }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(Error::Input(format!("unknown format {other:?}; use text or json"))),
        }
    }
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            let verdict = serde_json::to_value(report.verdict).expect("verdicts serialize");
            let _ = writeln!(s, "verdict: {}", verdict.as_str().unwrap_or_default());
            let _ = writeln!(s, "job: {}", report.job);
            let _ = writeln!(s, "instance: {} over {}", report.instance, report.field);
            let _ = writeln!(s, "seed: {}  budget: {}", report.seed, report.budget);
            text_value(&mut s, &report.certificates, 0);
            s
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(t) => Some(t.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn text_value(s: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(t) => {
                        let _ = writeln!(s, "{pad}{k}: {t}");
                    }
                    None => {
                        let _ = writeln!(s, "{pad}{k}:");
                        text_value(s, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(t) => {
                        let _ = writeln!(s, "{pad}- {t}");
                    }
                    None => {
                        let _ = writeln!(s, "{pad}- [{i}]");
                        text_value(s, x, depth + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(s, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}
