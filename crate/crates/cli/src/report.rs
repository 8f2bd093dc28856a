use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Detail {
    pub key: String,
    pub value: String,
}

/// Result of one CLI invocation, printed either as `key = value` lines or
/// as a single JSON document.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub verdict: Verdict,
    pub details: Vec<Detail>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl RunReport {
    pub fn new(command: &str, verdict: Verdict) -> Self {
        RunReport {
            command: command.to_string(),
            verdict,
            details: Vec::new(),
            witness: None,
        }
    }

    pub fn detail(mut self, key: &str, value: impl ToString) -> Self {
        self.details.push(Detail {
            key: key.to_string(),
            value: value.to_string(),
        });
        self
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.details.push(Detail {
            key: key.to_string(),
            value: value.to_string(),
        });
    }

    pub fn witness(mut self, w: serde_json::Value) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Fail => 1,
            Verdict::Pass | Verdict::Value => 0,
        }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("report serializes");
            s.push('\n');
            return s;
        }
        let mut out = String::new();
        for d in &self.details {
            writeln!(out, "{} = {}", d.key, d.value).unwrap();
        }
        if let Some(w) = &self.witness {
            writeln!(out, "witness = {}", render_witness(w)).unwrap();
        }
        let v = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Value => "ok",
        };
        writeln!(out, "verdict = {v}").unwrap();
        out
    }
}

/// Generator lists print as `{a, b}`; anything else as compact JSON.
fn render_witness(w: &serde_json::Value) -> String {
    match w.as_array() {
        Some(items) if items.iter().all(|i| i.is_string() || i.is_number()) => {
            let parts: Vec<String> = items
                .iter()
                .map(|i| i.as_str().map(str::to_string).unwrap_or_else(|| i.to_string()))
                .collect();
            format!("{{{}}}", parts.join(", "))
        }
        _ => w.to_string(),
    }
}

pub fn set(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}
