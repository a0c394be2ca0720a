//! The JSON report emitted by every subcommand, and its table rendering.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    BoundExceeded,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::BoundExceeded => 3,
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::BoundExceeded => "bound-exceeded",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub inputs: Value,
    pub status: Status,
    pub expected: Value,
    pub computed: Value,
    pub witness: Option<Value>,
    pub ms: u64,
    pub version: String,
}

/// Worst status wins: any failure, then any exceeded bound.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else if reports.iter().any(|r| r.status == Status::BoundExceeded) {
        3
    } else {
        0
    }
}

pub fn to_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

fn is_dims_row(key: &str, v: &Value) -> bool {
    key.contains("dims") && v.as_array().is_some_and(|a| !a.is_empty() && a.iter().all(Value::is_u64))
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Human-readable rendering; graded dimensions are aligned by degree.
pub fn to_table(report: &Report) -> String {
    let mut out = format!("{}: {} ({} ms)\n", report.check, report.status, report.ms);
    let mut section = |title: &str, v: &Value| {
        let Some(obj) = v.as_object() else { return };
        if obj.is_empty() {
            return;
        }
        out.push_str(&format!("  {title}:\n"));
        for (k, val) in obj {
            if is_dims_row(k, val) {
                let cells: Vec<String> = val.as_array().unwrap().iter().map(|x| x.to_string()).collect();
                let w = cells.iter().map(String::len).max().unwrap_or(1).max(2);
                let head: Vec<String> = (0..cells.len()).map(|d| format!("{d:>w$}")).collect();
                let body: Vec<String> = cells.iter().map(|c| format!("{c:>w$}")).collect();
                out.push_str(&format!("    {k}:\n      degree {}\n      dim    {}\n", head.join(" "), body.join(" ")));
            } else {
                out.push_str(&format!("    {k}: {}\n", render_value(val)));
            }
        }
    };
    section("inputs", &report.inputs);
    section("expected", &report.expected);
    section("computed", &report.computed);
    if let Some(w) = &report.witness {
        out.push_str(&format!("  witness: {}\n", render_value(w)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample(status: Status) -> Report {
        Report {
            check: "thm-char-A".into(),
            inputs: json!({"n": 3, "r": 2}),
            status,
            expected: json!({"total": 4}),
            computed: json!({"total": 4, "graded_dims": [1, 2, 1]}),
            witness: None,
            ms: 0,
            version: VERSION.into(),
        }
    }

    #[test]
    fn json_round_trips() {
        let r = sample(Status::BoundExceeded);
        let text = to_json(&r);
        assert!(text.contains("\"status\": \"bound-exceeded\""));
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(text.find("\"check\"").unwrap() < text.find("\"inputs\"").unwrap());
    }

    #[test]
    fn worst_status_sets_the_exit_code() {
        assert_eq!(exit_code(&[sample(Status::Pass)]), 0);
        assert_eq!(exit_code(&[sample(Status::Pass), sample(Status::BoundExceeded)]), 3);
        assert_eq!(exit_code(&[sample(Status::BoundExceeded), sample(Status::Fail)]), 1);
    }

    #[test]
    fn table_has_a_degree_header() {
        let t = to_table(&sample(Status::Pass));
        assert!(t.contains("degree  0  1  2"));
        assert!(t.contains("dim     1  2  1"));
    }
}
