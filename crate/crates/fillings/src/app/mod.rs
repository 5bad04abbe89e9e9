//! Command dispatcher, report formatting and the HTTP session service.
//!
//! Every command produces JSON-lines reports carrying a `schema` field.
//! Exit codes: `0` success, `1` other error, `2` bad arguments, `3` budget
//! exceeded, `4` an identity check failed.

pub mod cli;
pub mod server;
pub mod session;

use serde_json::Value;

use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_CHECK: i32 = 4;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidBraid(_) | Error::OutOfRange(_) | Error::NotMutable(_) => EXIT_USAGE,
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        Error::CheckFailed(_) => EXIT_CHECK,
        _ => EXIT_OTHER,
    }
}

/// Stable machine-readable name of an error variant.
pub fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::InvalidBraid(_) => "invalid_braid",
        Error::InvalidGraph(_) => "invalid_graph",
        Error::NotSquareEligible(_) => "not_square_eligible",
        Error::NotDegreeTwo { .. } => "not_degree_two",
        Error::OutOfRange(_) => "out_of_range",
        Error::Degenerate(_) => "degenerate",
        Error::BudgetExceeded(_) => "budget_exceeded",
        Error::NotMutable(_) => "not_mutable",
        Error::UnknownSession(_) => "unknown_session",
        Error::CheckFailed(_) => "check_failed",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
    }
}

pub fn error_report(err: &Error) -> Value {
    serde_json::json!({"schema": "error.v1", "kind": error_kind(err), "message": err.to_string()})
}

/// One report per line, or an aligned `key: value` listing with `pretty`.
pub fn render(reports: &[Value], pretty: bool) -> String {
    let mut out = String::new();
    for r in reports {
        if !pretty {
            out += &serde_json::to_string(r).expect("reports serialize");
            out.push('\n');
            continue;
        }
        match r.as_object() {
            Some(map) => {
                let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
                for (k, v) in map {
                    let shown = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    out += &format!("{k:<width$}  {shown}\n");
                }
                out.push('\n');
            }
            None => out += &format!("{r}\n"),
        }
    }
    out
}
